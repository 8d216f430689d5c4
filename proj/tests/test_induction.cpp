#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "gftree/induction.hpp"

using namespace gftree;

namespace {

Budget big() { return Budget(10'000'000); }

RuleSet explored(std::vector<Perm> pats, int depth) {
    Budget budget = big();
    return explore(PatternSet(std::move(pats)), depth, budget);
}

const Chain* chain_with_base(const CompressedRules& cr, const Perm& base) {
    for (const Chain& c : cr.chains)
        if (c.tmpl.base == base) return &c;
    return nullptr;
}

} // namespace

TEST_CASE("family templates generate runs") {
    FamilyTemplate desc{{2, 1}, 0, 2, true}; // instances 21, 321, 4321, ...
    CHECK(desc.instance(0) == Perm{2, 1});
    CHECK(desc.instance(2) == Perm{4, 3, 2, 1});
    FamilyTemplate peeled = desc.peeled();
    CHECK(peeled.instance(0) == desc.instance(1));
    CHECK(peeled.instance(3) == desc.instance(4));

    FamilyTemplate asc{{1, 2}, 0, 0, false};
    CHECK(asc.instance(2) == Perm{1, 2, 3, 4});
}

TEST_CASE("descending chain with a growing multiplicity") {
    // 123,132: k(k-1)...1 ~> 12^k, (k+1)k...1.  The ascending family 12,
    // 312, 4312, ... collapses into the classes of 1 and 12 (their subtrees
    // are isomorphic), so a single chain remains plus two fixed classes.
    RuleSet rs = explored({{1, 2, 3}, {1, 3, 2}}, 10);
    Budget budget = big();
    CompressedRules cr = induce_general_rules(rs, budget);
    CHECK(cr.chains.size() == 1);
    REQUIRE(chain_with_base(cr, {2, 1}) != nullptr);
    CHECK(cr.fixed_classes(rs).size() == 2);
    Budget b2 = big();
    CHECK(verify_general_rules(rs, cr, rs.b.t + 3, b2));

    std::string text = describe_rule(rs, cr, 0);
    CHECK(text.find("12^k") != std::string::npos);
    CHECK(text.find("(k+1)k") != std::string::npos);
}

TEST_CASE("chain with a shifted multiplicity") {
    // 123,1432,2143: k(k-1)...4132 ~> 12^(k-3), (k+1)k...4132 is one valid
    // alignment; the fit may ground the chain at a shorter base
    RuleSet rs = explored({{1, 2, 3}, {1, 4, 3, 2}, {2, 1, 4, 3}}, 12);
    Budget budget = big();
    CompressedRules cr = induce_general_rules(rs, budget);
    Budget b2 = big();
    CHECK(verify_general_rules(rs, cr, rs.b.t + 3, b2));
    CHECK(!cr.chains.empty());
}

TEST_CASE("verification rejects a corrupted rule") {
    RuleSet rs = explored({{1, 2, 3}, {1, 3, 2}}, 10);
    Budget budget = big();
    CompressedRules cr = induce_general_rules(rs, budget);
    // bump one multiplicity: 12^k -> 12^(k+1)
    bool bumped = false;
    for (GeneralRule& r : cr.rules) {
        for (auto& [key, p] : r.chain_refs) {
            (void)key;
            p = p + Poly{1};
            bumped = true;
            break;
        }
        if (bumped) break;
        for (auto& [w, p] : r.fixed) {
            (void)w;
            p = p + Poly{1};
            bumped = true;
            break;
        }
        if (bumped) break;
    }
    REQUIRE(bumped);
    std::string cex;
    Budget b2 = big();
    CHECK(!verify_general_rules(rs, cr, rs.b.t + 3, b2, &cex));
    CHECK(!cex.empty());
}

TEST_CASE("multiplicity generating functions") {
    Poly p{2, 1}; // p(j) = j + 2
    CHECK(multiplicity_gf(p) == RatFunc(Poly{2, -1}, Poly{1, -1} * Poly{1, -1}));
    CHECK(multiplicity_gf(Poly()) == RatFunc(0));
    // sum_{j>=3} (j-1) x^{j-2} = x(2-x)/(1-x)^2
    RatFunc shifted = multiplicity_gf(Poly{1, 1}) - RatFunc(1);
    CHECK(shifted == RatFunc(Poly{0, 2, -1}, Poly{1, -1} * Poly{1, -1}));
    // coefficients match p(j) far beyond the fitted range
    auto s = multiplicity_gf(Poly{1, -2, 3}).series_expand(25);
    for (int j = 0; j <= 25; ++j)
        CHECK(s[static_cast<size_t>(j)] == Poly{1, -2, 3}.eval(Rat(j)));
}

TEST_CASE("polynomial fitting by finite differences") {
    Poly p{1, -1, 3}; // 3j^2 - j + 1
    std::vector<Rat> vals;
    for (int j = 2; j <= 7; ++j) vals.push_back(p.eval(Rat(j)));
    auto fit = fit_poly(vals, 2, 3);
    REQUIRE(fit.has_value());
    CHECK(*fit == p);

    std::vector<Rat> cubic;
    for (int j = 0; j <= 6; ++j) cubic.push_back(Rat(j) * j * j);
    CHECK(!fit_poly(cubic, 0, 2).has_value());
}

TEST_CASE("general rules certified by repeated specialization") {
    for (auto pats : {std::vector<Perm>{{1, 2, 3}},
                      std::vector<Perm>{{1, 2, 3}, {3, 1, 2}},
                      std::vector<Perm>{{1, 2, 3}, {2, 1, 4, 3}}}) {
        RuleSet rs = explored(pats, 2 * PatternSet(pats).t + 4);
        Budget budget = big();
        CompressedRules cr = induce_general_rules(rs, budget);
        Budget b2 = big();
        CHECK(verify_general_rules(rs, cr, rs.b.t + 3, b2));
    }
}
