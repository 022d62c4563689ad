#include "tsol/cli.hpp"

#include <iostream>

int main(int argc, char** argv) {
  return tsol::run_cli(argc, argv, std::cout, std::cerr);
}
