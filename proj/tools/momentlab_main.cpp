#include <iostream>

#include "momentlab/cli.hpp"

int main(int argc, char** argv) {
  return momentlab::cli::run(argc, argv, std::cin, std::cout, std::cerr);
}
