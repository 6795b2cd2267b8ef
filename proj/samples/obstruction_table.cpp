// Prints the obstruction modulus for a small grid of (g, m).

#include <iostream>

#include "mixbraid/section_solver.hpp"

int main() {
  std::cout << "g\\m";
  for (int m = 1; m <= 6; ++m) {
    std::cout << '\t' << m;
  }
  std::cout << '\n';
  for (int g = 1; g <= 3; ++g) {
    std::cout << g;
    for (int m = 1; m <= 6; ++m) {
      std::cout << '\t' << mixbraid::obstruction(g, m).modulus();
    }
    std::cout << '\n';
  }
}
