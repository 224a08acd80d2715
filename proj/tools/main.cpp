#include <iostream>

#include "valueplan/cli.hpp"

int main(int argc, char** argv) {
  return valueplan::cli_main(argc, argv, std::cout, std::cerr);
}
