#pragma once

#include "perm.hpp"
#include "rat.hpp"

#include <map>
#include <vector>

namespace gftree {

// Nodes of the generating tree are grouped by label: two nodes share a class
// iff their subtrees truncated to t levels are isomorphic (t = longest
// pattern length).  The canonical shape serialization from subtree_shape is
// used as the key; level counts alone are too coarse.
using Signature = std::vector<std::uint64_t>;

struct LabelClass {
    Signature sig;
    Perm rep;              // first representative encountered
    int first_level = 0;   // tree level where the class first appears
    bool expanded = false;
    std::map<int, int> rule; // child class id -> multiplicity
};

struct RuleSet {
    PatternSet b;
    int depth;
    int sig_depth; // truncation depth of the subtree shapes used as labels
    std::vector<LabelClass> classes;
    std::map<Perm, int> member_of; // every perm whose class was computed
    std::vector<int> frontier; // classes first seen at `depth`, never expanded
    int root = 0;

    bool closed() const { return frontier.empty(); }
    // class ids sorted by (rep length, rep lex); root comes first
    std::vector<int> class_order() const;
};

// Breadth-first exploration of the tree down to `depth` levels, expanding
// each class once (at its first representative).  Classes are keyed by the
// subtree shape truncated to `sig_depth` levels (0 = the longest pattern
// length t); a deeper cutoff can only split classes, never merge them, so it
// is the escalation knob when a shallow merge proves wrong.
RuleSet explore(const PatternSet& b, int depth, Budget& budget, int sig_depth = 0);

// Sufficient test for a finite label set: b contains one pattern whose
// non-maximal entries are increasing and one whose non-maximal entries are
// decreasing.
bool finite_label_test(const PatternSet& b);

// Transition matrix over class_order(); throws NotClosed on a frontier.
std::vector<std::vector<Int>> transition_matrix(const RuleSet& rs);

} // namespace gftree
