#include <iostream>

#include "mixbraid/cli.hpp"

int main(int argc, char** argv) {
  return mixbraid::cli::run(argc, argv, std::cout, std::cerr);
}
