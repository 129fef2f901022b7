#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace rubber::cli {

// Exit codes: 0 ok, 1 invalid input or exceeded bound, 2 verification
// failure, 3 internal error.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

int run(int argc, char** argv, std::ostream& out, std::ostream& err);

}  // namespace rubber::cli
