#pragma once

#include "errors.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace gftree {

// One-line notation, values 1..n.
using Perm = std::vector<int>;

std::string perm_to_string(const Perm& p);

// Shared node budget for tree walks; counts every generated node.
struct Budget {
    std::uint64_t limit;
    std::uint64_t used = 0;
    explicit Budget(std::uint64_t lim) : limit(lim) {}
    void tick(std::uint64_t n = 1) {
        used += n;
        if (used > limit) throw BudgetExceeded("node budget exceeded");
    }
};

struct PatternSet {
    std::vector<Perm> patterns;
    int t = 0; // longest pattern length

    explicit PatternSet(std::vector<Perm> pats);
};

// Does sigma contain tau as a (classical) pattern?  If forced_pos >= 0, only
// occurrences where the maximum entry of tau is matched by position
// forced_pos of sigma are considered.
bool contains_pattern(const Perm& sigma, const Perm& tau, int forced_pos = -1);

bool avoids_all(const Perm& sigma, const PatternSet& b);

// Children in the generating tree: insert n+1 at each slot, keep avoiders.
// Assumes sigma itself avoids b.
std::vector<Perm> tree_children(const Perm& sigma, const PatternSet& b, Budget& budget);

// |S_n(b)| for n = 1..nmax (index 0 unused, set to 1 for the empty perm).
std::vector<std::uint64_t> count_avoiders(const PatternSet& b, int nmax, Budget& budget);

// Level sizes of the subtree rooted at sigma, relative depths 0..depth-1
// (entry 0 is always 1).  This is the class label used throughout.
std::vector<std::uint64_t> subtree_profile(const Perm& sigma, const PatternSet& b,
                                           int depth, Budget& budget);

// Canonical serialization of the subtree truncated to `depth` levels, as an
// unordered tree: token 0 opens a node, token 1 closes it, children sorted.
// Finer than subtree_profile: level counts alone can agree on non-isomorphic
// subtrees, which would merge classes with different succession rules.
std::vector<std::uint64_t> subtree_shape(const Perm& sigma, const PatternSet& b,
                                         int depth, Budget& budget);

} // namespace gftree
