#include "gftree/induction.hpp"
#include "gftree/errors.hpp"

#include <algorithm>
#include <set>
#include <functional>
#include <sstream>

namespace gftree {

Perm FamilyTemplate::instance(int j) const {
    Perm out;
    out.reserve(base.size() + static_cast<size_t>(j));
    int n = static_cast<int>(base.size());
    for (int i = 0; i <= n; ++i) {
        if (i == insert_pos) {
            if (descending)
                for (int r = j; r >= 1; --r) out.push_back(value_floor + r);
            else
                for (int r = 1; r <= j; ++r) out.push_back(value_floor + r);
        }
        if (i < n) out.push_back(base[i] > value_floor ? base[i] + j : base[i]);
    }
    return out;
}

FamilyTemplate FamilyTemplate::peeled() const {
    FamilyTemplate f;
    f.base = instance(1);
    f.descending = descending;
    f.value_floor = value_floor + 1;
    f.insert_pos = descending ? insert_pos : insert_pos + 1;
    return f;
}

namespace {

// symbolic element of value k + off
std::string kterm(int off) {
    if (off == 0) return "k";
    std::ostringstream os;
    os << "(k" << (off > 0 ? "+" : "-") << std::abs(off) << ")";
    return os.str();
}

} // namespace

std::string FamilyTemplate::describe(int shift) const {
    // word of length k + shift, where k is the symbolic instance length
    int n = static_cast<int>(base.size());
    std::string out;
    auto elem = [&](int v) -> std::string {
        // base value v; shifted values are v + (k + shift - n)
        if (v <= value_floor) return std::to_string(v);
        return kterm(v + shift - n);
    };
    auto run = [&]() -> std::string {
        // values value_floor+1 .. value_floor + (k + shift - n), symbolic top
        int top_off = value_floor + shift - n; // top = k + top_off
        std::string lo = std::to_string(value_floor + 1);
        std::string hi = kterm(top_off), hi2 = kterm(top_off - 1);
        if (descending) return hi + hi2 + "..." + lo;
        return lo + "..." + hi2 + hi;
    };
    for (int i = 0; i <= n; ++i) {
        if (i == insert_pos) out += run();
        if (i < n) out += elem(base[i]);
    }
    return out;
}

std::vector<int> CompressedRules::fixed_classes(const RuleSet& rs) const {
    std::vector<int> out;
    for (int cid : rs.class_order())
        if (!in_chain(cid)) out.push_back(cid);
    return out;
}

std::vector<Chain> detect_chains(const RuleSet& rs, Budget& budget) {
    int nc = static_cast<int>(rs.classes.size());
    std::vector<std::vector<Perm>> members(static_cast<size_t>(nc));
    for (const auto& [p, cid] : rs.member_of)
        if (static_cast<int>(p.size()) == rs.classes[static_cast<size_t>(cid)].first_level)
            members[static_cast<size_t>(cid)].push_back(p);
    std::map<Signature, int> class_of;
    for (int i = 0; i < nc; ++i) class_of[rs.classes[static_cast<size_t>(i)].sig] = i;

    // cheap membership test first; signatures only for walk continuations
    auto class_at = [&](const Perm& p, bool allow_sig) -> int {
        auto it = rs.member_of.find(p);
        if (it != rs.member_of.end()) return it->second;
        if (!allow_sig) return -1;
        if (!avoids_all(p, rs.b)) return -1;
        Signature s = subtree_shape(p, rs.b, rs.sig_depth, budget);
        auto it2 = class_of.find(s);
        return it2 == class_of.end() ? -1 : it2->second;
    };

    std::set<std::vector<int>> seen;
    std::vector<Chain> cands;
    for (int cid = 0; cid < nc; ++cid) {
        int n0 = rs.classes[static_cast<size_t>(cid)].first_level;
        if (n0 >= rs.depth) continue;
        for (const Perm& base : members[static_cast<size_t>(cid)]) {
            for (int pos = 0; pos <= n0; ++pos)
                for (int vf = 0; vf <= n0; ++vf)
                    for (int dir = 0; dir < 2; ++dir) {
                        FamilyTemplate t{base, pos, vf, dir == 0};
                        std::vector<int> mem{cid};
                        for (int j = 1; n0 + j <= rs.depth; ++j) {
                            int k = class_at(t.instance(j), j >= 2);
                            if (k < 0 ||
                                rs.classes[static_cast<size_t>(k)].first_level != n0 + j)
                                break;
                            mem.push_back(k);
                        }
                        if (n0 + static_cast<int>(mem.size()) - 1 != rs.depth) continue;
                        std::set<int> uniq(mem.begin(), mem.end());
                        if (uniq.size() != mem.size()) continue;
                        if (seen.insert(mem).second) cands.push_back(Chain{t, mem});
                    }
        }
    }
    std::sort(cands.begin(), cands.end(), [&](const Chain& a, const Chain& b) {
        if (a.m() != b.m()) return a.m() < b.m();
        if (a.tmpl.base != b.tmpl.base) return a.tmpl.base < b.tmpl.base;
        return a.members < b.members;
    });
    std::vector<Chain> accepted;
    std::set<int> used;
    for (const Chain& c : cands) {
        bool clash = false;
        for (int id : c.members)
            if (used.count(id)) { clash = true; break; }
        if (clash) continue;
        used.insert(c.members.begin(), c.members.end());
        accepted.push_back(c);
    }
    for (int f : rs.frontier)
        if (!used.count(f))
            throw NoFamilyFound("frontier class " +
                                perm_to_string(rs.classes[static_cast<size_t>(f)].rep) +
                                " not covered by any family");
    return accepted;
}

namespace {

struct FitError {};

struct TokenRule {
    std::map<std::pair<int, int>, int> chain; // (family, abs index) -> mult
    std::map<int, int> fixed;                 // class id -> mult

    bool operator==(const TokenRule& o) const {
        return chain == o.chain && fixed == o.fixed;
    }
};

TokenRule tokenize(const std::map<int, int>& rule,
                   const std::map<int, std::pair<int, int>>& chain_pos) {
    TokenRule t;
    for (const auto& [cid, mult] : rule) {
        auto it = chain_pos.find(cid);
        if (it != chain_pos.end()) t.chain[it->second] += mult;
        else t.fixed[cid] += mult;
    }
    return t;
}

int get_mult(const std::map<std::pair<int, int>, int>& m, std::pair<int, int> k) {
    auto it = m.find(k);
    return it == m.end() ? 0 : it->second;
}

// observed rule minus the hypothesized range contribution at index j
TokenRule residual(const TokenRule& obs, const GeneralRule& gr, int j) {
    TokenRule r = obs;
    if (gr.has_range) {
        for (int i = 0; i < j; ++i) {
            auto it = r.chain.find({gr.range_family, i});
            if (it == r.chain.end() || it->second == 0) throw FitError{};
            if (--it->second == 0) r.chain.erase(it);
        }
    }
    return r;
}

Rat eval_count(const Poly& p, int j) {
    Rat v = p.eval(Rat(j));
    if (!is_integer(v) || v < 0) throw FitError{};
    return v;
}

GeneralRule fit_chain(const RuleSet& rs, const std::vector<Chain>& chains,
                      const std::map<int, std::pair<int, int>>& chain_pos, int f,
                      int min_obs) {
    const Chain& c = chains[static_cast<size_t>(f)];
    std::vector<TokenRule> obs;
    for (int cid : c.members) {
        const LabelClass& lc = rs.classes[static_cast<size_t>(cid)];
        if (!lc.expanded) break;
        obs.push_back(tokenize(lc.rule, chain_pos));
    }
    int J = static_cast<int>(obs.size()) - 1;
    if (J + 1 < min_obs) throw FitError{};

    GeneralRule gr;
    // a child index strictly between the constant refs (<=1) and the offset
    // positions (>= j) can only come from a 0..j-1 range
    std::set<int> forced;
    for (const auto& [tk, mult] : obs[static_cast<size_t>(J)].chain)
        if (tk.second >= 2 && tk.second <= J - 1) forced.insert(tk.first);
    if (forced.size() > 1) throw FitError{};
    if (forced.size() == 1) {
        gr.has_range = true;
        gr.range_family = *forced.begin();
        for (int i = 0; i < J; ++i)
            if (!get_mult(obs[static_cast<size_t>(J)].chain, {gr.range_family, i}))
                throw FitError{};
    }

    // constant offset children at indices j and j+1, read off at J, checked at J-1
    TokenRule resJ = residual(obs[static_cast<size_t>(J)], gr, J);
    TokenRule resJ1 = residual(obs[static_cast<size_t>(J - 1)], gr, J - 1);
    for (int h = 0; h < static_cast<int>(chains.size()); ++h) {
        for (int delta = 0; delta <= 1; ++delta) {
            int mj = get_mult(resJ.chain, {h, J + delta});
            int mj1 = get_mult(resJ1.chain, {h, J - 1 + delta});
            if (mj != mj1) throw FitError{};
            if (mj) gr.offsets[{h, delta}] = mj;
        }
    }

    // remaining children: fixed classes and low chain members, polynomial in j
    std::vector<TokenRule> rem;
    std::set<std::pair<int, int>> ckeys;
    std::set<int> fkeys;
    for (int j = 2; j <= J; ++j) {
        TokenRule r = residual(obs[static_cast<size_t>(j)], gr, j);
        for (const auto& [hd, mult] : gr.offsets) {
            auto key = std::pair<int, int>{hd.first, j + hd.second};
            auto it = r.chain.find(key);
            if (it == r.chain.end() || it->second < mult) throw FitError{};
            if ((it->second -= mult) == 0) r.chain.erase(it);
        }
        for (const auto& [tk, mult] : r.chain) {
            if (tk.second > 1) throw FitError{};
            ckeys.insert(tk);
        }
        for (const auto& [w, mult] : r.fixed) fkeys.insert(w);
        rem.push_back(std::move(r));
    }
    int max_deg = rs.b.t - 2;
    for (const auto& tk : ckeys) {
        std::vector<Rat> vals;
        for (const auto& r : rem) vals.push_back(get_mult(r.chain, tk));
        auto p = fit_poly(vals, 2, max_deg);
        if (!p) throw FitError{};
        if (!p->is_zero()) gr.chain_refs[tk] = *p;
    }
    for (int w : fkeys) {
        std::vector<Rat> vals;
        for (const auto& r : rem) {
            auto it = r.fixed.find(w);
            vals.push_back(it == r.fixed.end() ? Rat(0) : Rat(it->second));
        }
        auto p = fit_poly(vals, 2, max_deg);
        if (!p) throw FitError{};
        if (!p->is_zero()) gr.fixed[w] = *p;
    }

    // exact validation on every observed index, including 0 and 1
    for (int j = 0; j <= J; ++j) {
        TokenRule want;
        if (gr.has_range)
            for (int i = 0; i < j; ++i) ++want.chain[{gr.range_family, i}];
        for (const auto& [hd, mult] : gr.offsets) want.chain[{hd.first, j + hd.second}] += mult;
        for (const auto& [tk, p] : gr.chain_refs) {
            Rat v = eval_count(p, j);
            if (v > 0) want.chain[tk] += static_cast<int>(rat_num(v));
        }
        for (const auto& [w, p] : gr.fixed) {
            Rat v = eval_count(p, j);
            if (v > 0) want.fixed[w] += static_cast<int>(rat_num(v));
        }
        if (!(want == obs[static_cast<size_t>(j)])) throw FitError{};
    }
    return gr;
}

std::map<int, std::pair<int, int>> positions(const std::vector<Chain>& chains) {
    std::map<int, std::pair<int, int>> pos;
    for (int f = 0; f < static_cast<int>(chains.size()); ++f)
        for (int j = 0; j < static_cast<int>(chains[static_cast<size_t>(f)].members.size()); ++j)
            pos[chains[static_cast<size_t>(f)].members[static_cast<size_t>(j)]] = {f, j};
    return pos;
}

void peel(Chain& c) {
    c.tmpl = c.tmpl.peeled();
    c.members.erase(c.members.begin());
}

// fit every chain and run the fixed-class sanity check
bool try_fit(const RuleSet& rs, const std::vector<Chain>& chains, int min_obs,
             CompressedRules& out) {
    out = CompressedRules{};
    out.chains = chains;
    out.chain_pos = positions(chains);
    for (int f = 0; f < static_cast<int>(chains.size()); ++f) {
        try {
            out.rules.push_back(fit_chain(rs, chains, out.chain_pos, f, min_obs));
        } catch (const FitError&) {
            return false;
        }
    }
    // a fixed class whose rule feeds a chain member past index 1 breaks every
    // family shape; a deeper grounding of that chain is needed
    for (size_t cid = 0; cid < rs.classes.size(); ++cid) {
        if (out.in_chain(static_cast<int>(cid)) || !rs.classes[cid].expanded) continue;
        for (const auto& [child, mult] : rs.classes[cid].rule)
            if (auto it = out.chain_pos.find(child);
                it != out.chain_pos.end() && it->second.second >= 2)
                return false;
    }
    return true;
}

} // namespace

CompressedRules induce_general_rules(const RuleSet& rs, Budget& budget) {
    std::vector<Chain> base = detect_chains(rs, budget);
    int nc = static_cast<int>(base.size());
    int min_obs = std::max(rs.b.t + 1, 4);
    // The detected chains may each be grounded a few steps too early, and the
    // fits interact (a range or offset into chain g only grounds at index 0
    // once g itself starts at the right base).  Search per-chain peel counts
    // in order of total peeling and take the first assignment where every
    // chain fits.
    std::vector<int> maxp(static_cast<size_t>(nc));
    int cap = 0;
    for (int f = 0; f < nc; ++f) {
        maxp[static_cast<size_t>(f)] = std::min(
            8, std::max(0, static_cast<int>(base[static_cast<size_t>(f)].members.size()) -
                               min_obs - 1));
        cap += maxp[static_cast<size_t>(f)];
    }
    std::vector<int> peels(static_cast<size_t>(nc), 0);
    CompressedRules result;
    std::function<bool(int, int)> rec = [&](int f, int rem) -> bool {
        if (f == nc) {
            if (rem != 0) return false;
            std::vector<Chain> chains = base;
            for (int i = 0; i < nc; ++i)
                for (int p = 0; p < peels[static_cast<size_t>(i)]; ++p)
                    peel(chains[static_cast<size_t>(i)]);
            if (!try_fit(rs, chains, min_obs, result)) return false;
            // the root is kept inside range-type chains (it genuinely starts
            // them, e.g. single-pattern sets) but peeled out of path chains
            // so that exceptional root rules become plain fixed rules
            for (int i = 0; i < nc; ++i)
                if (!result.rules[static_cast<size_t>(i)].has_range &&
                    chains[static_cast<size_t>(i)].members.front() == rs.root)
                    return false;
            return true;
        }
        for (int p = 0; p <= std::min(rem, maxp[static_cast<size_t>(f)]); ++p) {
            peels[static_cast<size_t>(f)] = p;
            if (rec(f + 1, rem - p)) return true;
        }
        return false;
    };
    for (int total = 0; total <= cap; ++total)
        if (rec(0, total)) return result;
    throw NoFamilyFound("no grounding of the detected families fits the observed rules");
}

std::optional<CompressedRules> align_to_common_m(const RuleSet& rs, const CompressedRules& cr) {
    std::vector<Chain> chains = cr.chains;
    int target = 0;
    for (const Chain& c : chains) target = std::max(target, c.m());
    for (Chain& c : chains)
        while (c.m() < target) peel(c);
    int min_obs = std::max(rs.b.t + 1, 4);
    for (int round = 0; round < 16; ++round) {
        CompressedRules out;
        if (try_fit(rs, chains, min_obs, out)) {
            // accept only a grounding in the growing-family shape: every rule
            // carries a range and cites no chain member by absolute index
            // (peeling deeper turns such members into plain fixed classes)
            bool shaped = true;
            for (const GeneralRule& r : out.rules)
                if (!r.has_range || !r.chain_refs.empty()) shaped = false;
            if (shaped) return out;
        }
        bool can_peel = true;
        for (const Chain& c : chains)
            if (static_cast<int>(c.members.size()) <= min_obs + 1) can_peel = false;
        if (!can_peel) break;
        for (Chain& c : chains) peel(c); // keep bases aligned
    }
    return std::nullopt;
}

namespace {

using SigCount = std::map<Signature, int>;

} // namespace

bool verify_general_rules(const RuleSet& rs, const CompressedRules& cr, int extra,
                          Budget& budget, std::string* counterexample) {
    std::map<std::pair<int, int>, Signature> sig_cache;
    auto member_sig = [&](int fam, int idx) -> const Signature& {
        auto key = std::pair<int, int>{fam, idx};
        auto it = sig_cache.find(key);
        if (it != sig_cache.end()) return it->second;
        const Chain& c = cr.chains[static_cast<size_t>(fam)];
        Signature s;
        if (idx < static_cast<int>(c.members.size()))
            s = rs.classes[static_cast<size_t>(c.members[static_cast<size_t>(idx)])].sig;
        else
            s = subtree_shape(c.tmpl.instance(idx), rs.b, rs.sig_depth, budget);
        return sig_cache.emplace(key, std::move(s)).first->second;
    };
    auto fail = [&](int f, int j, const std::string& why) {
        if (counterexample) {
            std::ostringstream os;
            os << "family " << cr.chains[static_cast<size_t>(f)].tmpl.describe()
               << " at k=" << cr.chains[static_cast<size_t>(f)].m() + j << ": " << why;
            *counterexample = os.str();
        }
        return false;
    };
    int nj = std::max(rs.b.t - 1, extra);
    for (int f = 0; f < static_cast<int>(cr.chains.size()); ++f) {
        const Chain& c = cr.chains[static_cast<size_t>(f)];
        const GeneralRule& gr = cr.rules[static_cast<size_t>(f)];
        for (int j = 0; j < nj; ++j) {
            Perm inst = c.tmpl.instance(j);
            if (!avoids_all(inst, rs.b)) return fail(f, j, "instance is not an avoider");
            SigCount got;
            for (const Perm& kid : tree_children(inst, rs.b, budget))
                ++got[subtree_shape(kid, rs.b, rs.sig_depth, budget)];
            SigCount want;
            try {
                if (gr.has_range)
                    for (int i = 0; i < j; ++i) ++want[member_sig(gr.range_family, i)];
                for (const auto& [hd, mult] : gr.offsets)
                    want[member_sig(hd.first, j + hd.second)] += mult;
                for (const auto& [tk, p] : gr.chain_refs) {
                    Rat v = eval_count(p, j);
                    if (v > 0)
                        want[member_sig(tk.first, tk.second)] += static_cast<int>(rat_num(v));
                }
                for (const auto& [w, p] : gr.fixed) {
                    Rat v = eval_count(p, j);
                    if (v > 0)
                        want[rs.classes[static_cast<size_t>(w)].sig] += static_cast<int>(rat_num(v));
                }
            } catch (const FitError&) {
                return fail(f, j, "multiplicity polynomial not a non-negative integer");
            }
            if (got != want) return fail(f, j, "children do not match the general rule");
        }
    }
    return true;
}

std::optional<Poly> fit_poly(const std::vector<Rat>& values, int j0, int max_deg) {
    if (values.empty()) return Poly();
    std::vector<std::vector<Rat>> rows{values};
    while (rows.back().size() > 1) {
        const auto& p = rows.back();
        std::vector<Rat> nx;
        for (size_t i = 0; i + 1 < p.size(); ++i) nx.push_back(p[i + 1] - p[i]);
        rows.push_back(std::move(nx));
    }
    int deg = -1;
    for (int k = 0; k < static_cast<int>(rows.size()); ++k)
        for (const Rat& v : rows[static_cast<size_t>(k)])
            if (v != 0) { deg = k; break; }
    if (deg > max_deg) return std::nullopt;
    Poly out;
    for (int k = 0; k <= deg; ++k) {
        // rows[k][0] * C(j - j0, k)
        Poly b{1};
        Rat fact = 1;
        for (int i = 0; i < k; ++i) {
            b *= Poly{Rat(-j0 - i), Rat(1)};
            fact *= (i + 1);
        }
        out += b * (rows[static_cast<size_t>(k)][0] / fact);
    }
    return out;
}

RatFunc multiplicity_gf(const Poly& p) {
    if (p.is_zero()) return RatFunc();
    int d = p.degree();
    std::vector<Rat> row;
    for (int i = 0; i <= d; ++i) row.push_back(p.eval(Rat(i)));
    Poly oneminus{1, -1};
    Poly denpow{1};
    RatFunc out;
    for (int k = 0; k <= d; ++k) {
        denpow *= oneminus;
        out += RatFunc(Poly::monomial(k, row[0]), denpow);
        std::vector<Rat> nx;
        for (size_t i = 0; i + 1 < row.size(); ++i) nx.push_back(row[i + 1] - row[i]);
        row = std::move(nx);
    }
    return out;
}

namespace {

Poly poly_in_k(const Poly& p, int m) {
    // substitute j = k - m
    Poly out, shift{Rat(-m), Rat(1)};
    for (int i = p.degree(); i >= 0; --i) out = out * shift + Poly(p.coeff(i));
    return out;
}

std::string exp_str(const Poly& pk) {
    if (pk.degree() == 0 && pk.coeff(0) == 1) return "";
    std::string s = pk.str("k");
    // parenthesize compound exponents only, so a bare multiplier prints as ^k
    if (s.find_first_of("+-*") != std::string::npos) s = "(" + s + ")";
    return "^" + s;
}

} // namespace

std::string describe_rule(const RuleSet& rs, const CompressedRules& cr, int chain) {
    const Chain& c = cr.chains[static_cast<size_t>(chain)];
    const GeneralRule& gr = cr.rules[static_cast<size_t>(chain)];
    int m = c.m();
    std::vector<std::string> kids;
    if (gr.has_range) {
        const Chain& g = cr.chains[static_cast<size_t>(gr.range_family)];
        kids.push_back(perm_to_string(g.tmpl.base) + ", ..., " +
                       g.tmpl.describe(-1 - (m - g.m())));
    }
    for (const auto& [tk, p] : gr.chain_refs) {
        const Chain& h = cr.chains[static_cast<size_t>(tk.first)];
        kids.push_back(
            perm_to_string(rs.classes[static_cast<size_t>(
                               h.members[static_cast<size_t>(tk.second)])].rep) +
            exp_str(poly_in_k(p, m)));
    }
    for (const auto& [w, p] : gr.fixed)
        kids.push_back(perm_to_string(rs.classes[static_cast<size_t>(w)].rep) +
                       exp_str(poly_in_k(p, m)));
    for (const auto& [hd, mult] : gr.offsets) {
        const Chain& h = cr.chains[static_cast<size_t>(hd.first)];
        std::string w = h.tmpl.describe(hd.second - (m - h.m()));
        if (mult != 1) w += "^" + std::to_string(mult);
        kids.push_back(w);
    }
    std::ostringstream os;
    os << c.tmpl.describe() << " ~> ";
    for (size_t i = 0; i < kids.size(); ++i) os << (i ? ", " : "") << kids[i];
    os << "  (k>=" << m << ")";
    return os.str();
}

} // namespace gftree
