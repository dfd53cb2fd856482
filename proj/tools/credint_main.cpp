#include <iostream>
#include <string>
#include <vector>

#include "credint/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  try {
    return credint::cli::main_entry(args, std::cout, std::cerr);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return credint::cli::kExitFailed;
  }
}
