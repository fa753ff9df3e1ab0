#include <iostream>

#include "fqco/cli.hpp"

int main(int argc, char** argv) {
  return fqco::cli::main(argc, argv, std::cout, std::cerr);
}
