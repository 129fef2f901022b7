#include <iostream>

#include "rubber/cli.hpp"

int main(int argc, char** argv) {
  return rubber::cli::run(argc, argv, std::cout, std::cerr);
}
