#include <exception>
#include <iostream>

#include "ndtc/run.hpp"

int main(int argc, char** argv) {
  try {
    const ndtc::ParseOutcome parsed = ndtc::parse_command_line(argc, argv);
    if (parsed.exit_now) return parsed.exit_code;
    return ndtc::run(parsed.config);
  } catch (const ndtc::UsageError& e) {
    std::cerr << "error: " << e.what() << '\n';
    std::cerr << "run with --help for usage\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}
