#pragma once

// Thin wrappers around the univariate distribution functions the library
// needs. Implemented with Boost.Math; kept behind this interface so the
// heavy headers are compiled once.

namespace levdun::dist {

double normal_cdf(double x);
double normal_quantile(double p);  // p in (0,1)

double t_cdf(double x, double df);
double t_quantile(double p, double df);  // p in (0,1)

// Quantile of the chi distribution (not chi-squared) with df degrees of
// freedom, i.e. sqrt of the chi-squared quantile.
double chi_quantile(double p, double df);

// Upper-tail p of the central F distribution.
double f_upper_p(double f, double df1, double df2);

}  // namespace levdun::dist
