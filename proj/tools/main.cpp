#include <iostream>

#include "hnnkit/cli.hpp"

int main(int argc, char** argv) {
  return hnnkit::cli::run(std::vector<std::string>(argv + 1, argv + argc), std::cout, std::cerr);
}
