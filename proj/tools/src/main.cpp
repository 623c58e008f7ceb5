#include <iostream>

#include "tempfair/cli.hpp"

int main(int argc, char** argv) {
  return tempfair::run_cli(argc, argv, std::cout, std::cerr);
}
