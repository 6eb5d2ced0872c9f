#include <iostream>

#include "coxvis_cli/cli.hpp"

int main(int argc, char** argv) {
  return coxvis::cli::run(std::vector<std::string>(argv + 1, argv + argc), std::cout, std::cerr);
}
