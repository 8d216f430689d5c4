#pragma once

#include "gentree.hpp"
#include "poly.hpp"
#include "ratfunc.hpp"

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace gftree {

// One-parameter family of permutations: instance(j) inserts the j values
// value_floor+1 .. value_floor+j as a run at insert_pos (descending puts the
// largest first), shifting base values above value_floor up by j.  This covers
// both of the shapes alpha m(m+1)...m' beta and alpha m'(m'-1)...m beta.
struct FamilyTemplate {
    Perm base;
    int insert_pos = 0;
    int value_floor = 0;
    bool descending = true;

    Perm instance(int j) const;
    // template whose instance(j) equals this->instance(j+1)
    FamilyTemplate peeled() const;
    // symbolic word in k = j + |base|, e.g. "k(k-1)...4132"; shift adds to k
    std::string describe(int shift = 0) const;
};

// A chain of label classes: members[j] is the class of tmpl.instance(j),
// first seen at tree level |base| + j; the chain reaches the frontier.
struct Chain {
    FamilyTemplate tmpl;
    std::vector<int> members;
    int m() const { return static_cast<int>(tmpl.base.size()); }
};

// Compressed succession rule of a chain member v_j, valid for every j >= 0:
//   children = [range: one child in each of range_family's classes 0..j-1]
//            + [offsets: mult children in class (family, j + delta)]
//            + [chain_refs: p(j) children in the fixed low class (family, i)]
//            + [fixed: p(j) children in a fixed label class]
struct GeneralRule {
    bool has_range = false;
    int range_family = -1;
    std::map<std::pair<int, int>, int> offsets;      // (family, delta in {0,1}) -> mult
    std::map<std::pair<int, int>, Poly> chain_refs;  // (family, index in {0,1}) -> p(j)
    std::map<int, Poly> fixed;                       // class id -> p(j)
};

struct CompressedRules {
    std::vector<Chain> chains;
    std::vector<GeneralRule> rules; // parallel to chains
    std::map<int, std::pair<int, int>> chain_pos; // class id -> (chain, index)

    bool in_chain(int cid) const { return chain_pos.count(cid) != 0; }
    // classes not in any chain, in class_order
    std::vector<int> fixed_classes(const RuleSet& rs) const;
};

// Maximal disjoint chains covering every frontier class (throws NoFamilyFound
// if some frontier class is not reachable by any template walk).
std::vector<Chain> detect_chains(const RuleSet& rs, Budget& budget);

// Detect chains and fit general rules, peeling exceptional low indices into
// fixed classes as needed.  Throws NoFamilyFound when no consistent fit
// remains with at least max(t+1, 4) observed instances per chain.
CompressedRules induce_general_rules(const RuleSet& rs, Budget& budget);

// Re-peel so that all chains share the same base length (needed by the
// alpha-growing solver); nullopt when no aligned fit exists.
std::optional<CompressedRules> align_to_common_m(const RuleSet& rs, const CompressedRules& cr);

// Check every general rule by direct expansion of tmpl.instance(j) for j in
// [lo_f, J_f + extra] where J_f is the last index used for fitting; on
// mismatch returns false and fills *counterexample.
bool verify_general_rules(const RuleSet& rs, const CompressedRules& cr, int extra,
                          Budget& budget, std::string* counterexample = nullptr);

// Exact polynomial through (j, values[j - j0]) for j = j0.., degree <= max_deg.
std::optional<Poly> fit_poly(const std::vector<Rat>& values, int j0, int max_deg);

// Sum_{j>=0} p(j) x^j via Sum_j C(j,d) x^j = x^d/(1-x)^{d+1}.
RatFunc multiplicity_gf(const Poly& p);

// Human-readable rule text for a chain, e.g.
// "k(k-1)...321 ~> 12^k, (k+1)k...321  (k>=2)".
std::string describe_rule(const RuleSet& rs, const CompressedRules& cr, int chain);

} // namespace gftree
