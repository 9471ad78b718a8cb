#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace qh_cli {

// Runs one command. Exit codes: 0 success, 1 hypothesis failure or failed
// verification, 2 usage or input errors.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

// The deterministic bound table over the built-in catalog, n = 1..8.
void print_reproduce_table(std::ostream& out);

} // namespace qh_cli
