#include <iostream>
#include <string>
#include <vector>

#include "jms/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  if (args.empty() || args[0] == "--help" || args[0] == "-h") {
    std::cout << jms::cli::usage();
    return args.empty() ? 1 : 0;
  }
  try {
    return jms::cli::run_and_emit(jms::cli::parse_config(args), std::cerr);
  } catch (const jms::cli::UsageError& e) {
    std::cerr << "error: " << e.what() << '\n' << jms::cli::usage();
    return 1;
  }
}
