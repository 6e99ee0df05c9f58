#include <exception>
#include <iostream>

#include "tlfe/cli.hpp"

int main(int argc, char** argv) {
  try {
    return tlfe::dispatch(argc, argv, std::cout, std::cerr);
  } catch (const std::exception& e) {
    std::cerr << "fatal: " << e.what() << "\n";
    return 3;
  }
}
