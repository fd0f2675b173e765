#include <iostream>

#include "orbitprimes/cli.hpp"

int main(int argc, char** argv) {
  return orbitprimes::cli::run(argc, argv, std::cout, std::cerr);
}
