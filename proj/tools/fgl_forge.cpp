#include <exception>
#include <iostream>

#include "fglforge/cli.hpp"

int main(int argc, char** argv) {
  try {
    return fglforge::run_cli(argc, argv, std::cout, std::cerr);
  } catch (const std::exception& e) {
    std::cerr << "fgl-forge: " << e.what() << "\n";
    return fglforge::kExitFailed;
  }
}
