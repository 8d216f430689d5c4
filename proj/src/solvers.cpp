#include "gftree/solvers.hpp"

#include "gftree/linear.hpp"
#include "gftree/tpoly.hpp"

#include <algorithm>
#include <numeric>

namespace gftree {

namespace {

// solution of (I - xM) y = 1 indexed like the matrix
std::map<int, RatFunc> finite_solution(const std::vector<std::vector<Int>>& m) {
    int n = static_cast<int>(m.size());
    RatFunc x = RatFunc::x();
    std::vector<LinearForm<RatFunc>> eqs;
    for (int i = 0; i < n; ++i) {
        LinearForm<RatFunc> eq = LinearForm<RatFunc>::unknown(i) - LinearForm<RatFunc>(RatFunc(1));
        for (int j = 0; j < n; ++j) {
            if (m[static_cast<size_t>(i)][static_cast<size_t>(j)] == 0) continue;
            Rat mult(m[static_cast<size_t>(i)][static_cast<size_t>(j)]);
            eq -= LinearForm<RatFunc>::unknown(j) * (x * RatFunc(mult));
        }
        eqs.push_back(std::move(eq));
    }
    return solve_linear_forms(eqs);
}

int rep_len(const RuleSet& rs, int cid) {
    return static_cast<int>(rs.classes[static_cast<size_t>(cid)].rep.size());
}

// Q(arg) for a univariate rational function Q, with arg rational in t
TRat compose_tr(const RatFunc& q, const TRat& arg) {
    auto horner = [&](const Poly& p) {
        TRat acc;
        for (int i = p.degree(); i >= 0; --i) acc = acc * arg + TRat(RatFunc(p.coeff(i)));
        return acc;
    };
    TRat d = horner(q.den());
    if (d.is_zero()) throw PoleAtEvaluationPoint("pole when composing in t");
    return horner(q.num()) / d;
}

} // namespace

std::string family_kind_name(FamilyKind k) {
    switch (k) {
    case FamilyKind::Finite: return "Finite";
    case FamilyKind::AlmostPath: return "AlmostPathDirected";
    case FamilyKind::BackwardPath: return "BackwardPathDirected";
    case FamilyKind::AlphaGrowing: return "AlphaGrowing";
    default: return "Unclassified";
    }
}

RatFunc solve_finite(const std::vector<std::vector<Int>>& matrix) {
    auto sol = finite_solution(matrix);
    return RatFunc::x() * sol.at(0);
}

GraphFamily classify_graph(const RuleSet& rs, CompressedRules& cr) {
    GraphFamily fam;
    int nf = static_cast<int>(cr.chains.size());
    if (nf == 0) return fam;

    auto flag_extended_w = [&](int m) {
        fam.m = m;
        fam.extended_w = false;
        for (int w : cr.fixed_classes(rs))
            if (rep_len(rs, w) > m) fam.extended_w = true;
    };

    bool almost = true;
    for (int f = 0; f < nf; ++f) {
        const GeneralRule& r = cr.rules[static_cast<size_t>(f)];
        if (r.has_range || r.offsets.size() != 1 ||
            r.offsets.count({f, 1}) == 0 || r.offsets.at({f, 1}) != 1)
            almost = false;
    }
    if (almost) {
        fam.kind = FamilyKind::AlmostPath;
        int m = 0;
        for (const Chain& c : cr.chains) m = std::max(m, c.m());
        flag_extended_w(m);
        return fam;
    }

    if (nf == 1) {
        const GeneralRule& r = cr.rules[0];
        if (r.has_range && r.range_family == 0 && r.chain_refs.empty()) {
            bool ok = r.offsets.count({0, 1}) != 0 && r.offsets.at({0, 1}) == 1;
            int a = 0;
            for (const auto& [key, mult] : r.offsets) {
                if (key.first != 0) ok = false;
                else if (key.second == 0) a = mult;
                else if (key.second != 1) ok = false;
            }
            if (ok) {
                fam.kind = FamilyKind::BackwardPath;
                fam.a_loops = a;
                flag_extended_w(cr.chains[0].m());
                return fam;
            }
        }
    }

    // alpha-growing needs every chain ranged, no chain_refs, a common base
    // length, and a role assignment matching the three rule shapes
    if (nf >= 2) {
        auto shaped_ok = [](const CompressedRules& c) {
            for (const Chain& ch : c.chains)
                if (ch.m() != c.chains[0].m()) return false;
            for (const GeneralRule& r : c.rules)
                if (!r.has_range || !r.chain_refs.empty()) return false;
            return true;
        };
        CompressedRules aligned = cr;
        if (!shaped_ok(aligned)) {
            auto opt = align_to_common_m(rs, cr);
            if (!opt || !shaped_ok(*opt)) return fam;
            aligned = *opt;
        }
        {
            // the chain system is solvable one chain at a time if the chains
            // admit a topological order: chain f may cite chain g (range or
            // offset) only when g comes earlier, except for references to
            // itself, which stay on the left-hand side (a self successor is
            // resolved by the kernel method, so a chain may not combine it
            // with a range over itself)
            int na = static_cast<int>(aligned.chains.size());
            bool ok = true;
            std::vector<std::vector<int>> need(static_cast<size_t>(na));
            for (int f = 0; f < na && ok; ++f) {
                const GeneralRule& r = aligned.rules[static_cast<size_t>(f)];
                if (r.range_family != f) need[static_cast<size_t>(f)].push_back(r.range_family);
                for (const auto& [key, mult] : r.offsets) {
                    (void)mult;
                    if (key.first != f) need[static_cast<size_t>(f)].push_back(key.first);
                }
                if (r.range_family == f && r.offsets.count({f, 1}) != 0) ok = false;
            }
            std::vector<int> order;
            if (ok) {
                std::vector<bool> done(static_cast<size_t>(na), false);
                while (static_cast<int>(order.size()) < na) {
                    int pick = -1;
                    for (int f = 0; f < na && pick < 0; ++f) {
                        if (done[static_cast<size_t>(f)]) continue;
                        bool ready = true;
                        for (int g : need[static_cast<size_t>(f)])
                            if (!done[static_cast<size_t>(g)]) ready = false;
                        if (ready) pick = f;
                    }
                    if (pick < 0) { ok = false; break; } // cyclic dependency
                    done[static_cast<size_t>(pick)] = true;
                    order.push_back(pick);
                }
            }
            if (ok) {
                cr = aligned;
                fam.kind = FamilyKind::AlphaGrowing;
                fam.alpha = na;
                fam.role.assign(static_cast<size_t>(na), 0);
                for (int s = 0; s < na; ++s)
                    fam.role[static_cast<size_t>(order[static_cast<size_t>(s)])] = s + 1;
                flag_extended_w(aligned.chains[0].m());
                return fam;
            }
        }
    }
    return fam;
}

RatFunc solve_almost_path(const RuleSet& rs, const CompressedRules& cr,
                          std::map<std::string, RatFunc>* interm) {
    int nc = static_cast<int>(rs.classes.size());
    auto node = [&](int cid) -> int {
        auto it = cr.chain_pos.find(cid);
        if (it == cr.chain_pos.end()) return cid;
        auto [g, i] = it->second;
        if (i > 1) throw NoFamilyFound("rule references a deep chain member");
        return nc + 2 * g + i;
    };

    std::vector<LinearForm<RatFunc>> eqs;
    std::vector<int> fixed = cr.fixed_classes(rs);
    for (int w : fixed) {
        int lw = rep_len(rs, w);
        LinearForm<RatFunc> eq =
            LinearForm<RatFunc>::unknown(w) - LinearForm<RatFunc>(RatFunc::xpow(lw));
        for (const auto& [c, mult] : rs.classes[static_cast<size_t>(w)].rule)
            eq -= LinearForm<RatFunc>::unknown(node(c)) *
                  (RatFunc::xpow(lw + 1 - rep_len(rs, c)) * RatFunc(mult));
        eqs.push_back(std::move(eq));
    }

    for (int f = 0; f < static_cast<int>(cr.chains.size()); ++f) {
        int m = cr.chains[static_cast<size_t>(f)].m();
        const GeneralRule& r = cr.rules[static_cast<size_t>(f)];
        std::vector<std::tuple<int, int, Poly>> targets; // unknown id, length, p(j)
        for (const auto& [key, p] : r.chain_refs)
            targets.emplace_back(nc + 2 * key.first + key.second,
                                 cr.chains[static_cast<size_t>(key.first)].m() + key.second, p);
        for (const auto& [w, p] : r.fixed) targets.emplace_back(w, rep_len(rs, w), p);

        // F_{v_j} = x^{m+j} + F_{v_{j+1}} + sum_w p_w(j) x^{m+j+1-l_w} F_w,
        // summed over j >= 0
        RatFunc xm_geo(Poly::monomial(m), Poly{1, -1}); // x^m/(1-x)
        LinearForm<RatFunc> e0 =
            LinearForm<RatFunc>::unknown(nc + 2 * f) - LinearForm<RatFunc>(xm_geo);
        LinearForm<RatFunc> e1 = LinearForm<RatFunc>::unknown(nc + 2 * f + 1) -
                                 LinearForm<RatFunc>::unknown(nc + 2 * f) +
                                 LinearForm<RatFunc>(RatFunc::xpow(m));
        for (const auto& [id, len, p] : targets) {
            RatFunc shift = RatFunc::xpow(m + 1 - len);
            e0 -= LinearForm<RatFunc>::unknown(id) * (shift * multiplicity_gf(p));
            e1 += LinearForm<RatFunc>::unknown(id) * (shift * RatFunc(p.eval(Rat(0))));
        }
        eqs.push_back(std::move(e0));
        eqs.push_back(std::move(e1));
    }

    auto sol = solve_linear_forms(eqs);
    if (interm) {
        for (int w : fixed)
            (*interm)[perm_to_string(rs.classes[static_cast<size_t>(w)].rep)] = sol.at(w);
        for (int f = 0; f < static_cast<int>(cr.chains.size()); ++f)
            (*interm)[perm_to_string(cr.chains[static_cast<size_t>(f)].tmpl.base)] =
                sol.at(nc + 2 * f);
    }
    return sol.at(node(rs.root));
}

QuadExt solve_backward_path(const RuleSet& rs, const CompressedRules& cr, int a_loops) {
    int nc = static_cast<int>(rs.classes.size());
    int m = cr.chains[0].m();
    const GeneralRule& r = cr.rules[0];
    using LF = LinearForm<QuadExt>;

    QuadExt t0 = QuadExt::t0(a_loops);
    QuadExt one(1);
    QuadExt xq(RatFunc::x());
    QuadExt T = t0 / (one - xq * t0); // sum_j x^j t0^{j+1}

    auto node = [&](int cid) -> int {
        auto it = cr.chain_pos.find(cid);
        if (it == cr.chain_pos.end()) return cid;
        if (it->second.second > 1) throw NoFamilyFound("rule references a deep chain member");
        return nc + it->second.second;
    };

    std::vector<LF> eqs;
    for (int w : cr.fixed_classes(rs)) {
        int lw = rep_len(rs, w);
        LF eq = LF::unknown(w) - LF(QuadExt(RatFunc::xpow(lw)));
        for (const auto& [c, mult] : rs.classes[static_cast<size_t>(w)].rule)
            eq -= LF::unknown(node(c)) *
                  QuadExt(RatFunc::xpow(lw + 1 - rep_len(rs, c)) * RatFunc(mult));
        eqs.push_back(std::move(eq));
    }

    // kernel method on A(t) = sum_j F_{v_j} t^j: at t = t0,
    // F_{v_0} = x^m t0/(1-x t0) + sum_w x^{m+1-l_w} t0 Q_w(x t0) F_w
    LF e0 = LF::unknown(nc) - LF(QuadExt(RatFunc::xpow(m)) * T);
    LF e1 = LF::unknown(nc + 1) -
            LF::unknown(nc) * (one - QuadExt(RatFunc(a_loops)) * xq) +
            LF(QuadExt(RatFunc::xpow(m)));
    for (const auto& [w, p] : r.fixed) {
        int lw = rep_len(rs, w);
        QuadExt shift(RatFunc::xpow(m + 1 - lw));
        e0 -= LF::unknown(w) * (shift * t0 * compose_at(multiplicity_gf(p), xq * t0));
        e1 += LF::unknown(w) * (shift * QuadExt(RatFunc(p.eval(Rat(0)))));
    }
    eqs.push_back(std::move(e0));
    eqs.push_back(std::move(e1));

    auto sol = solve_linear_forms(eqs);
    return sol.at(node(rs.root));
}

RatFunc solve_alpha_growing(const RuleSet& rs, const CompressedRules& cr,
                            const GraphFamily& fam,
                            std::map<std::string, RatFunc>* interm) {
    int na = static_cast<int>(cr.chains.size());
    int m = cr.chains[0].m();
    using LFT = LinearForm<TRat>;
    using LFR = LinearForm<RatFunc>;

    TRat t = TRat::t();
    TRat one(1);
    TRat xr(RatFunc::x());
    TRat geo = (one - xr * t).inverse(); // 1/(1-xt)
    TRat range_fac = xr * xr * t * geo;  // x^2 t/(1-xt)
    LFT base(TRat(RatFunc::xpow(m)) * geo);

    auto lift = [](const RatFunc& v) { return TRat(v); };
    auto at0 = [&](const LFT& a) {
        return a.map<RatFunc>([](const TRat& v) { return v.eval_t(RatFunc(0)); })
            .map<TRat>(lift);
    };
    auto w_terms = [&](const GeneralRule& r) {
        LFT s;
        for (const auto& [w, p] : r.fixed)
            s += LFT::unknown(w) * (TRat(RatFunc::xpow(m + 1 - rep_len(rs, w))) *
                                    compose_tr(multiplicity_gf(p), xr * t));
        return s;
    };

    std::vector<int> order(static_cast<size_t>(na), 0);
    for (int f = 0; f < na; ++f) order[static_cast<size_t>(fam.role[static_cast<size_t>(f)]) - 1] = f;

    // process chains in dependency order; every term of a rule acts on some
    // A_h(t) = sum_k F_{v_k^{(h)}} t^k:
    //   range over h        ->  x^2 t/(1-xt) A_h
    //   member v_k^{(h)}    ->  x A_h
    //   member v_{k+1}^{(h)} -> (A_h - A_h(0))/t
    // cross-chain terms cite chains already solved; own terms move to the
    // left-hand side, with a self successor resolved by the kernel method
    std::vector<LFT> aform(static_cast<size_t>(na));
    for (int f : order) {
        const GeneralRule& r = cr.rules[static_cast<size_t>(f)];
        int g = r.range_family;
        auto mult = [&](int h, int d) {
            auto it = r.offsets.find({h, d});
            return it == r.offsets.end() ? 0 : it->second;
        };
        LFT k0 = base + w_terms(r);
        for (int h = 0; h < na; ++h) {
            if (h == f) continue;
            const LFT& ah = aform[static_cast<size_t>(h)];
            if (g == h) k0 += ah * range_fac;
            if (int c0 = mult(h, 0); c0 != 0) k0 += ah * (TRat(RatFunc(c0)) * xr);
            if (int c1 = mult(h, 1); c1 != 0)
                k0 += (ah - at0(ah)) * (TRat(RatFunc(c1)) / t);
        }
        TRat lhs = one - TRat(RatFunc(mult(f, 0))) * xr;
        if (g == f) lhs -= range_fac;
        int r1 = mult(f, 1);
        if (r1 == 0) {
            aform[static_cast<size_t>(f)] = k0 * lhs.inverse();
        } else {
            // A lhs = K0 + r1 (A - A(0))/t  =>  A (t lhs - r1) = t K0 - r1 A(0);
            // the kernel point t* = r1/lhs zeroes the left side and pins
            // A(0) = t* K0(t*)/r1 (classification guarantees lhs is t-free here)
            RatFunc lhs0 = RatFunc(1) - RatFunc(mult(f, 0)) * RatFunc::x();
            RatFunc tstar = RatFunc(r1) / lhs0;
            LFR a0 = k0.map<RatFunc>([&](const TRat& v) { return v.eval_t(tstar); }) *
                     (tstar / RatFunc(r1));
            TRat denom = t * TRat(lhs0) - TRat(RatFunc(r1));
            aform[static_cast<size_t>(f)] =
                (k0 * t - a0.map<TRat>(lift) * TRat(RatFunc(r1))) * denom.inverse();
        }
    }

    std::vector<LFR> f0(static_cast<size_t>(na)), f1(static_cast<size_t>(na));
    for (int f = 0; f < na; ++f) {
        f0[static_cast<size_t>(f)] =
            aform[static_cast<size_t>(f)].map<RatFunc>([](const TRat& v) { return v.eval_t(RatFunc(0)); });
        f1[static_cast<size_t>(f)] =
            aform[static_cast<size_t>(f)].map<RatFunc>([](const TRat& v) { return v.coeff_t1(); });
    }

    std::vector<LFR> eqs;
    std::vector<int> fixed = cr.fixed_classes(rs);
    for (int w : fixed) {
        int lw = rep_len(rs, w);
        LFR eq = LFR::unknown(w) - LFR(RatFunc::xpow(lw));
        for (const auto& [c, cmult] : rs.classes[static_cast<size_t>(w)].rule) {
            RatFunc cf = RatFunc::xpow(lw + 1 - rep_len(rs, c)) * RatFunc(cmult);
            auto it = cr.chain_pos.find(c);
            if (it == cr.chain_pos.end()) {
                eq -= LFR::unknown(c) * cf;
            } else {
                auto [g, i] = it->second;
                if (i > 1) throw NoFamilyFound("rule references a deep chain member");
                eq -= (i == 0 ? f0[static_cast<size_t>(g)] : f1[static_cast<size_t>(g)]) * cf;
            }
        }
        eqs.push_back(std::move(eq));
    }
    auto sol = solve_linear_forms(eqs);

    if (interm) {
        for (int w : fixed)
            (*interm)[perm_to_string(rs.classes[static_cast<size_t>(w)].rep)] = sol.at(w);
        for (int f = 0; f < na; ++f) {
            LFR v = f0[static_cast<size_t>(f)].substitute(sol);
            (*interm)[perm_to_string(cr.chains[static_cast<size_t>(f)].tmpl.base)] = v.cst;
        }
    }

    auto it = cr.chain_pos.find(rs.root);
    if (it != cr.chain_pos.end()) {
        LFR v = f0[static_cast<size_t>(it->second.first)].substitute(sol);
        if (!v.terms.empty()) throw SingularSystem("unresolved unknowns at the root");
        return v.cst;
    }
    return sol.at(rs.root);
}

std::vector<Rat> series_dp(const RuleSet& rs, int order) {
    if (!rs.closed()) throw NotClosed("series DP on an open rule set");
    std::vector<Int> cur(rs.classes.size(), 0), nxt;
    cur[static_cast<size_t>(rs.root)] = 1;
    std::vector<Rat> out(static_cast<size_t>(order) + 1, Rat(0));
    for (int n = 1; n <= order; ++n) {
        Int total = 0;
        for (const Int& v : cur) total += v;
        out[static_cast<size_t>(n)] = Rat(total);
        if (n == order) break;
        nxt.assign(cur.size(), 0);
        for (size_t w = 0; w < cur.size(); ++w) {
            if (cur[w] == 0) continue;
            for (const auto& [c, mult] : rs.classes[w].rule)
                nxt[static_cast<size_t>(c)] += cur[w] * mult;
        }
        cur.swap(nxt);
    }
    return out;
}

std::vector<Rat> series_dp(const RuleSet& rs, const CompressedRules& cr, int order) {
    int nf = static_cast<int>(cr.chains.size());
    std::vector<Int> fx(rs.classes.size(), 0), nfx;
    std::vector<std::vector<Int>> ch(static_cast<size_t>(nf),
                                     std::vector<Int>(static_cast<size_t>(order) + 2, 0)),
        nch;

    auto add = [&](std::vector<Int>& f, std::vector<std::vector<Int>>& c, int cid, const Int& v) {
        auto it = cr.chain_pos.find(cid);
        if (it == cr.chain_pos.end()) f[static_cast<size_t>(cid)] += v;
        else c[static_cast<size_t>(it->second.first)][static_cast<size_t>(it->second.second)] += v;
    };
    add(fx, ch, rs.root, 1);

    std::vector<Rat> out(static_cast<size_t>(order) + 1, Rat(0));
    for (int n = 1; n <= order; ++n) {
        Int total = 0;
        for (const Int& v : fx) total += v;
        for (const auto& c : ch)
            for (const Int& v : c) total += v;
        out[static_cast<size_t>(n)] = Rat(total);
        if (n == order) break;

        nfx.assign(fx.size(), 0);
        nch.assign(ch.size(), std::vector<Int>(static_cast<size_t>(order) + 2, 0));
        for (size_t w = 0; w < fx.size(); ++w) {
            if (fx[w] == 0) continue;
            for (const auto& [c, mult] : rs.classes[w].rule)
                add(nfx, nch, static_cast<int>(c), fx[w] * mult);
        }
        auto poly_mult = [&](const Poly& p, int j) -> Int {
            Rat v = p.eval(Rat(j));
            if (!is_integer(v) || v < 0)
                throw VerificationMismatch("rule multiplicity is not a non-negative integer");
            return rat_num(v);
        };
        for (int f = 0; f < nf; ++f) {
            const GeneralRule& r = cr.rules[static_cast<size_t>(f)];
            for (int j = 0; j <= order; ++j) {
                const Int& cnt = ch[static_cast<size_t>(f)][static_cast<size_t>(j)];
                if (cnt == 0) continue;
                if (r.has_range)
                    for (int i = 0; i < j; ++i)
                        nch[static_cast<size_t>(r.range_family)][static_cast<size_t>(i)] += cnt;
                for (const auto& [key, mult] : r.offsets) {
                    int tj = j + key.second;
                    if (tj <= order + 1)
                        nch[static_cast<size_t>(key.first)][static_cast<size_t>(tj)] += cnt * mult;
                }
                for (const auto& [key, p] : r.chain_refs)
                    nch[static_cast<size_t>(key.first)][static_cast<size_t>(key.second)] +=
                        cnt * poly_mult(p, j);
                for (const auto& [w, p] : r.fixed)
                    nfx[static_cast<size_t>(w)] += cnt * poly_mult(p, j);
            }
        }
        fx.swap(nfx);
        ch.swap(nch);
    }
    return out;
}

Analysis analyze(const PatternSet& b, const SolveConfig& cfg) {
    int t = b.t;
    int d = cfg.depth > 0 ? cfg.depth : 2 * t + 4;
    int cap = std::max(d, 2 * t + 20);
    std::string last = "no consistent rule set within the depth schedule";
    while (true) {
        Budget budget(cfg.node_budget);
        RuleSet rs = explore(b, d, budget, cfg.sig_depth);
        if (rs.closed()) {
            GraphFamily fam;
            fam.kind = FamilyKind::Finite;
            fam.matrix = transition_matrix(rs);
            return Analysis{std::move(rs), std::nullopt, std::move(fam), d, 0};
        }
        try {
            Budget b2(cfg.node_budget);
            CompressedRules cr = induce_general_rules(rs, b2);
            int extra = t + 3;
            std::string cex;
            Budget b3(cfg.node_budget);
            if (!verify_general_rules(rs, cr, extra, b3, &cex))
                throw NoFamilyFound(cex);
            GraphFamily fam = classify_graph(rs, cr);
            if (fam.kind == FamilyKind::AlphaGrowing) {
                // classification may have re-aligned the chains; re-certify
                Budget b4(cfg.node_budget);
                if (!verify_general_rules(rs, cr, extra, b4, &cex))
                    throw NoFamilyFound(cex);
            }
            return Analysis{std::move(rs), std::move(cr), std::move(fam), d, extra};
        } catch (const NoFamilyFound& e) {
            last = e.what();
        }
        d += 2;
        if (d > cap) throw DepthExhausted(last);
    }
}

namespace {

SolveReport solve_attempt(const PatternSet& b, const SolveConfig& cfg,
                          const std::vector<std::uint64_t>& oracle, int nv) {
    Analysis an = analyze(b, cfg);
    SolveReport rep;
    rep.family = an.fam;
    rep.depth_used = an.depth_used;
    rep.certificate = an.certificate;

    int order = std::max(cfg.series_order, nv);
    std::vector<Rat> dp;
    switch (an.fam.kind) {
    case FamilyKind::Finite: {
        auto sol = finite_solution(an.fam.matrix);
        rep.gf = RatFunc::x() * sol.at(0);
        rep.gf_kind = GfKind::Rational;
        auto ord = an.rs.class_order();
        for (size_t i = 0; i < ord.size(); ++i) {
            const LabelClass& c = an.rs.classes[static_cast<size_t>(ord[i])];
            rep.intermediates[perm_to_string(c.rep)] =
                RatFunc::xpow(static_cast<int>(c.rep.size())) * sol.at(static_cast<int>(i));
        }
        dp = series_dp(an.rs, order);
        break;
    }
    case FamilyKind::AlmostPath:
        rep.gf = solve_almost_path(an.rs, *an.cr, &rep.intermediates);
        rep.gf_kind = GfKind::Rational;
        dp = series_dp(an.rs, *an.cr, order);
        break;
    case FamilyKind::BackwardPath:
        rep.gf_ext = solve_backward_path(an.rs, *an.cr, an.fam.a_loops);
        if (rep.gf_ext.is_rational()) {
            rep.gf = rep.gf_ext.a();
            rep.gf_kind = GfKind::Rational;
        } else {
            rep.gf_kind = GfKind::Quadratic;
        }
        dp = series_dp(an.rs, *an.cr, order);
        break;
    case FamilyKind::AlphaGrowing:
        rep.gf = solve_alpha_growing(an.rs, *an.cr, an.fam, &rep.intermediates);
        rep.gf_kind = GfKind::Rational;
        dp = series_dp(an.rs, *an.cr, order);
        break;
    case FamilyKind::Unclassified: {
        if (!cfg.allow_conjecture)
            throw Unclassified("label digraph matches no known family shape");
        rep.conjectural = true;
        dp = series_dp(an.rs, *an.cr, order);
        if (auto fit = pade_reconstruct(dp, 4)) {
            rep.gf = *fit;
            rep.gf_kind = GfKind::Rational;
        } else {
            int deg = (static_cast<int>(dp.size()) - 4) / 3 - 1;
            if (deg >= 1) {
                if (auto alg = algebraic_fit_deg2(dp, deg, 4)) {
                    rep.relation = *alg;
                    rep.gf_kind = GfKind::Algebraic;
                }
            }
        }
        break;
    }
    }

    std::vector<Rat> s;
    if (rep.gf_kind == GfKind::Rational && !rep.conjectural)
        s = rep.gf.series_expand(order);
    else if (rep.gf_kind == GfKind::Quadratic)
        s = rep.gf_ext.series_expand(order);
    else
        s = dp;

    for (int n = 0; n <= order; ++n)
        if (s[static_cast<size_t>(n)] != dp[static_cast<size_t>(n)])
            throw VerificationMismatch("closed form disagrees with the rule DP at n=" +
                                       std::to_string(n));
    for (int n = 1; n <= nv; ++n)
        if (s[static_cast<size_t>(n)] != Rat(oracle[static_cast<size_t>(n - 1)]))
            throw VerificationMismatch("series disagrees with brute force at n=" +
                                       std::to_string(n));
    rep.series = std::move(s);
    rep.verified_to = nv;
    return rep;
}

} // namespace

SolveReport solve(const PatternSet& b, const SolveConfig& cfg) {
    bool has3 = false;
    for (const Perm& p : b.patterns)
        if (p.size() == 3) has3 = true;
    int nv = cfg.n_verify > 0 ? cfg.n_verify : (has3 ? 11 : 10);

    Budget ob(cfg.node_budget);
    std::vector<std::uint64_t> oracle = count_avoiders(b, nv, ob);

    // a label cutoff at depth t can merge classes whose subtrees differ only
    // deeper down; the oracle catches that, and a deeper cutoff (which can
    // only split classes) repairs it
    SolveConfig attempt_cfg = cfg;
    for (int attempt = 0;; ++attempt) {
        try {
            return solve_attempt(b, attempt_cfg, oracle, nv);
        } catch (const VerificationMismatch&) {
            if (cfg.sig_depth > 0 || attempt >= 2) throw;
            attempt_cfg.sig_depth = b.t + 2 * (attempt + 1);
        }
    }
}

} // namespace gftree
