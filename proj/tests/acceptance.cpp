// Runs acceptance criteria 1-10 and prints one pass/fail line per criterion.

#include <iostream>

#include "pol/harness/verify.hpp"

int main() {
  pol::VerifyOptions options;
  options.level = pol::VerifyLevel::kFull;
  const pol::VerifyReport report = pol::verify_suite(options);
  std::cout << report.text();
  std::cout << (report.ok() ? "all criteria passed" : "some criteria failed") << '\n';
  return report.ok() ? 0 : 1;
}
