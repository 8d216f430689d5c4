#pragma once

#include "perm.hpp"

#include <string>
#include <vector>

namespace gftree {

// One pattern: either a digit string ("321") or bracketed one-line notation
// for lengths past 9 ("[10 9 8 7 6 5 4 3 2 1]").
Perm parse_perm(const std::string& s);

// Comma-separated list of patterns.
std::vector<Perm> parse_patterns(const std::string& s);

} // namespace gftree
