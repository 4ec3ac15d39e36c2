#include <iostream>

#include "ontokit/cli.hpp"

int main(int argc, char** argv) {
  return ontokit::run_cli(std::vector<std::string>(argv, argv + argc), std::cout, std::cerr,
                          std::cin);
}
