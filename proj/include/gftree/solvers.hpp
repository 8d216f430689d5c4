#pragma once

#include "fit.hpp"
#include "induction.hpp"
#include "quadext.hpp"

#include <array>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace gftree {

enum class FamilyKind { Finite, AlmostPath, BackwardPath, AlphaGrowing, Unclassified };

std::string family_kind_name(FamilyKind k);

// Shape of the label digraph after rule compression.
struct GraphFamily {
    FamilyKind kind = FamilyKind::Unclassified;
    std::vector<std::vector<Int>> matrix; // Finite only
    int a_loops = 0;                      // BackwardPath: loops per chain node
    int alpha = 0;                        // AlphaGrowing: number of chains
    std::vector<int> role;                // AlphaGrowing: chain -> role 1..alpha
    int m = 0;                            // common base length of the chains
    bool extended_w = false;              // some fixed class is longer than m
};

enum class GfKind { Rational, Quadratic, Algebraic, SeriesOnly };

struct SolveReport {
    GraphFamily family;
    GfKind gf_kind = GfKind::SeriesOnly;
    RatFunc gf;                     // Rational
    QuadExt gf_ext;                 // Quadratic
    std::array<Poly, 3> relation{}; // Algebraic: p0 + p1 G + p2 G^2 = 0
    std::vector<Rat> series;        // coefficient n = |S_n|, index 0 unused
    int verified_to = 0;            // oracle agreement up to this n
    int certificate = 0;            // general-rule instances checked
    int depth_used = 0;
    bool conjectural = false;
    std::map<std::string, RatFunc> intermediates; // class rep -> F value
};

struct SolveConfig {
    int depth = 0;        // 0 = automatic schedule
    int sig_depth = 0;    // label shape cutoff, 0 = longest pattern length
    int series_order = 32;
    int n_verify = 0;     // 0 = 10, or 11 when b has a length-3 pattern
    std::uint64_t node_budget = 10'000'000;
    bool allow_conjecture = false;
};

// G = x e1^T (I - xM)^{-1} 1 over the classes in class_order.
RatFunc solve_finite(const std::vector<std::vector<Int>>& matrix);

// Match the compressed rules against the family shapes, in the fixed
// precedence Finite > AlmostPath > BackwardPath > AlphaGrowing.  May replace
// cr by a re-aligned fit (alpha case needs a common base length).
GraphFamily classify_graph(const RuleSet& rs, CompressedRules& cr);

// Family solvers; each fills interm with the solved F values per class rep.
RatFunc solve_almost_path(const RuleSet& rs, const CompressedRules& cr,
                          std::map<std::string, RatFunc>* interm = nullptr);
QuadExt solve_backward_path(const RuleSet& rs, const CompressedRules& cr, int a_loops);
RatFunc solve_alpha_growing(const RuleSet& rs, const CompressedRules& cr,
                            const GraphFamily& fam,
                            std::map<std::string, RatFunc>* interm = nullptr);

// Path-count dynamic programming over the (compressed) rules; entry n is
// |S_n| for 1 <= n <= order, entry 0 is 0.
std::vector<Rat> series_dp(const RuleSet& rs, int order);                            // closed
std::vector<Rat> series_dp(const RuleSet& rs, const CompressedRules& cr, int order); // general

// explore + induce + verify + classify, with the depth schedule of solve().
struct Analysis {
    RuleSet rs;
    std::optional<CompressedRules> cr;
    GraphFamily fam;
    int depth_used = 0;
    int certificate = 0;
};
Analysis analyze(const PatternSet& b, const SolveConfig& cfg = {});

// Full pipeline: classify, solve in closed form, cross-check the series
// against both the rule DP and the brute-force oracle.
SolveReport solve(const PatternSet& b, const SolveConfig& cfg = {});

} // namespace gftree
