#include "levdun/dist.hpp"

#include <boost/math/distributions/chi_squared.hpp>
#include <boost/math/distributions/fisher_f.hpp>
#include <boost/math/distributions/normal.hpp>
#include <boost/math/distributions/students_t.hpp>

namespace levdun::dist {

namespace bm = boost::math;

double normal_cdf(double x) { return bm::cdf(bm::normal_distribution<>(), x); }

double normal_quantile(double p) {
  return bm::quantile(bm::normal_distribution<>(), p);
}

double t_cdf(double x, double df) {
  return bm::cdf(bm::students_t_distribution<>(df), x);
}

double t_quantile(double p, double df) {
  return bm::quantile(bm::students_t_distribution<>(df), p);
}

double chi_quantile(double p, double df) {
  return std::sqrt(bm::quantile(bm::chi_squared_distribution<>(df), p));
}

double f_upper_p(double f, double df1, double df2) {
  return bm::cdf(bm::complement(bm::fisher_f_distribution<>(df1, df2), f));
}

}  // namespace levdun::dist
