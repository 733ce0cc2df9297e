#include <iostream>

#include "levdun/cli_app.hpp"

int main(int argc, char** argv) {
  return levdun::cli::run(argc, argv, std::cout, std::cerr);
}
