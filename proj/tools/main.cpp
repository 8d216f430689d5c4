#include "gftree/patterns_io.hpp"
#include "gftree/solvers.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <iostream>
#include <string>

using json = nlohmann::ordered_json;
using namespace gftree;

namespace {

struct Options {
    std::string patterns;
    int max_n = 10;
    int depth = 0;
    int series_order = 32;
    int n_verify = 0;
    std::uint64_t node_budget = 10'000'000;
    bool as_json = false;
    bool allow_conjecture = false;
};

json int_json(const Int& v) {
    static const Int lo = std::numeric_limits<long long>::min();
    static const Int hi = std::numeric_limits<long long>::max();
    if (v >= lo && v <= hi) return v.convert_to<long long>();
    return v.str();
}

json rat_series_json(const std::vector<Rat>& s) {
    json arr = json::array();
    for (const Rat& v : s) {
        if (is_integer(v)) arr.push_back(int_json(rat_num(v)));
        else arr.push_back(to_string(v));
    }
    return arr;
}

// integer coefficient lists with a common scalar cleared
std::pair<std::vector<Int>, std::vector<Int>> integer_coeffs(const Poly& num, const Poly& den) {
    using boost::multiprecision::gcd;
    using boost::multiprecision::lcm;
    Int l = 1;
    for (int i = 0; i <= num.degree(); ++i) l = lcm(l, rat_den(num.coeff(i)));
    for (int i = 0; i <= den.degree(); ++i) l = lcm(l, rat_den(den.coeff(i)));
    auto scaled = [&](const Poly& p) {
        std::vector<Int> out;
        for (int i = 0; i <= p.degree(); ++i)
            out.push_back(rat_num(p.coeff(i)) * (l / rat_den(p.coeff(i))));
        return out;
    };
    std::vector<Int> ni = scaled(num), di = scaled(den);
    Int g = 0;
    for (const Int& v : ni) g = gcd(g, abs(v));
    for (const Int& v : di) g = gcd(g, abs(v));
    if (g == 0) g = 1;
    for (Int& v : ni) v /= g;
    for (Int& v : di) v /= g;
    return {std::move(ni), std::move(di)};
}

json ratfunc_json(const RatFunc& f) {
    auto [ni, di] = integer_coeffs(f.num(), f.den());
    json num = json::array(), den = json::array();
    for (const Int& v : ni) num.push_back(int_json(v));
    for (const Int& v : di) den.push_back(int_json(v));
    return json{{"type", "rational"}, {"num", num}, {"den", den}};
}

json poly_json(const Poly& p) {
    json arr = json::array();
    for (int i = 0; i <= p.degree(); ++i) arr.push_back(to_string(p.coeff(i)));
    return arr;
}

json quadext_json(const QuadExt& q) {
    int a = q.loops();
    // x(1+x-ax) t^2 - (1+x-ax) t + 1 = 0, coefficient lists ascending in x
    json minpoly = json::array();
    minpoly.push_back(json::array({1}));
    minpoly.push_back(json::array({-1, a - 1}));
    minpoly.push_back(json::array({0, 1, 1 - a}));
    return json{{"type", "quadext"},
                {"a", ratfunc_json(q.a())},
                {"b", ratfunc_json(q.b())},
                {"a_loops", a},
                {"minpoly", minpoly}};
}

std::string fixed_rule_text(const RuleSet& rs, int w) {
    std::string out = perm_to_string(rs.classes[static_cast<size_t>(w)].rep) + " ~> ";
    bool first = true;
    const auto& rule = rs.classes[static_cast<size_t>(w)].rule;
    if (rule.empty()) return out + "(none)";
    for (const auto& [c, mult] : rule) {
        if (!first) out += ", ";
        first = false;
        out += perm_to_string(rs.classes[static_cast<size_t>(c)].rep);
        if (mult > 1) out += "^" + std::to_string(mult);
    }
    return out;
}

json family_json(const GraphFamily& fam, const RuleSet& rs, const CompressedRules* cr) {
    json j;
    j["kind"] = family_kind_name(fam.kind);
    if (fam.kind == FamilyKind::Finite) {
        json mat = json::array();
        for (const auto& row : fam.matrix) {
            json r = json::array();
            for (const Int& v : row) r.push_back(int_json(v));
            mat.push_back(r);
        }
        j["matrix"] = mat;
        return j;
    }
    if (cr) {
        json w = json::array();
        for (int c : cr->fixed_classes(rs))
            w.push_back(perm_to_string(rs.classes[static_cast<size_t>(c)].rep));
        j["w"] = w;
        j["m"] = fam.m;
        j["chains"] = cr->chains.size();
        if (fam.kind == FamilyKind::BackwardPath) j["a_loops"] = fam.a_loops;
        if (fam.kind == FamilyKind::AlphaGrowing) {
            j["alpha"] = fam.alpha;
            j["roles"] = fam.role;
        }
        if (fam.extended_w) j["extended_w"] = true;
    }
    return j;
}

void print_family_text(const GraphFamily& fam, const RuleSet& rs, const CompressedRules* cr) {
    std::cout << "classification: " << family_kind_name(fam.kind) << "\n";
    if (fam.kind == FamilyKind::Finite) {
        std::cout << "classes: " << fam.matrix.size() << "\n";
        for (const auto& row : fam.matrix) {
            std::cout << "  [";
            for (size_t i = 0; i < row.size(); ++i)
                std::cout << (i ? " " : "") << row[i];
            std::cout << "]\n";
        }
        return;
    }
    if (!cr) return;
    std::cout << "m: " << fam.m << "\n";
    std::cout << "W:";
    for (int c : cr->fixed_classes(rs))
        std::cout << " " << perm_to_string(rs.classes[static_cast<size_t>(c)].rep);
    std::cout << "\n";
    if (fam.kind == FamilyKind::BackwardPath) std::cout << "a_loops: " << fam.a_loops << "\n";
    if (fam.kind == FamilyKind::AlphaGrowing) std::cout << "alpha: " << fam.alpha << "\n";
    if (fam.extended_w) std::cout << "extended_w: true\n";
}

int run(const std::string& cmd, const Options& opt) {
    PatternSet b(parse_patterns(opt.patterns));
    SolveConfig cfg;
    cfg.depth = opt.depth;
    cfg.series_order = opt.series_order;
    cfg.n_verify = opt.n_verify;
    cfg.node_budget = opt.node_budget;
    cfg.allow_conjecture = opt.allow_conjecture;

    if (cmd == "enumerate") {
        Budget budget(opt.node_budget);
        auto counts = count_avoiders(b, opt.max_n, budget);
        if (opt.as_json) {
            json j;
            j["counts"] = counts;
            std::cout << j.dump() << "\n";
        } else {
            for (size_t i = 0; i < counts.size(); ++i)
                std::cout << (i ? " " : "") << counts[i];
            std::cout << "\n";
        }
        return 0;
    }

    if (cmd == "rules" || cmd == "classify") {
        Analysis an = analyze(b, cfg);
        const CompressedRules* cr = an.cr ? &*an.cr : nullptr;
        if (cmd == "classify") {
            if (opt.as_json) {
                json j = family_json(an.fam, an.rs, cr);
                j["depth"] = an.depth_used;
                std::cout << j.dump() << "\n";
            } else {
                print_family_text(an.fam, an.rs, cr);
            }
            return 0;
        }
        std::vector<std::string> fixed_lines, chain_lines;
        if (cr) {
            for (int w : cr->fixed_classes(an.rs))
                fixed_lines.push_back(fixed_rule_text(an.rs, w));
            for (int f = 0; f < static_cast<int>(cr->chains.size()); ++f)
                chain_lines.push_back(describe_rule(an.rs, *cr, f));
        } else {
            for (int w : an.rs.class_order()) fixed_lines.push_back(fixed_rule_text(an.rs, w));
        }
        if (opt.as_json) {
            json j;
            j["fixed"] = fixed_lines;
            j["general"] = chain_lines;
            j["depth"] = an.depth_used;
            std::cout << j.dump() << "\n";
        } else {
            for (const auto& l : fixed_lines) std::cout << l << "\n";
            for (const auto& l : chain_lines) std::cout << l << "\n";
        }
        return 0;
    }

    SolveReport rep = solve(b, cfg);
    if (opt.as_json) {
        json j;
        j["classification"] = family_kind_name(rep.family.kind);
        switch (rep.gf_kind) {
        case GfKind::Rational: j["gf"] = ratfunc_json(rep.gf); break;
        case GfKind::Quadratic: j["gf"] = quadext_json(rep.gf_ext); break;
        case GfKind::Algebraic:
            j["gf"] = json{{"type", "algebraic"},
                           {"relation", json::array({poly_json(rep.relation[0]),
                                                     poly_json(rep.relation[1]),
                                                     poly_json(rep.relation[2])})}};
            break;
        case GfKind::SeriesOnly: j["gf"] = json{{"type", "series"}}; break;
        }
        j["series"] = rat_series_json(rep.series);
        j["verified_to"] = rep.verified_to;
        j["certificate"] = rep.certificate;
        j["depth"] = rep.depth_used;
        if (rep.conjectural) j["conjectural"] = true;
        std::cout << j.dump() << "\n";
    } else {
        std::cout << "classification: " << family_kind_name(rep.family.kind) << "\n";
        switch (rep.gf_kind) {
        case GfKind::Rational: std::cout << "gf: " << rep.gf.str() << "\n"; break;
        case GfKind::Quadratic: std::cout << "gf: " << rep.gf_ext.str() << "\n"; break;
        case GfKind::Algebraic:
            std::cout << "gf: root of (" << rep.relation[0].str() << ") + ("
                      << rep.relation[1].str() << ")G + (" << rep.relation[2].str()
                      << ")G^2 = 0\n";
            break;
        case GfKind::SeriesOnly: std::cout << "gf: (series only)\n"; break;
        }
        std::cout << "series:";
        int upto = std::min<int>(static_cast<int>(rep.series.size()) - 1, 12);
        for (int n = 1; n <= upto; ++n) std::cout << " " << to_string(rep.series[static_cast<size_t>(n)]);
        std::cout << "\n";
        std::cout << "verified against brute force to n=" << rep.verified_to << "\n";
        if (rep.conjectural) std::cout << "conjectural: true\n";
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact enumeration of pattern-avoiding permutations via generating trees"};
    app.require_subcommand(1);

    Options opt;
    std::vector<CLI::App*> cmds;
    for (const char* name : {"enumerate", "rules", "classify", "solve"}) {
        CLI::App* c = app.add_subcommand(name);
        c->add_option("--patterns", opt.patterns, "comma-separated pattern list")->required();
        c->add_option("--max-n", opt.max_n, "enumeration length limit");
        c->add_option("--depth", opt.depth, "initial exploration depth (0 = automatic)");
        c->add_option("--series-order", opt.series_order, "series truncation order");
        c->add_option("--n-verify", opt.n_verify, "oracle verification depth (0 = automatic)");
        c->add_option("--node-budget", opt.node_budget, "tree node budget per call");
        c->add_flag("--json", opt.as_json, "machine-readable output");
        c->add_flag("--allow-conjecture", opt.allow_conjecture,
                    "accept series-fit results for unclassified digraphs");
        cmds.push_back(c);
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        return run(app.get_subcommands().front()->get_name(), opt);
    } catch (const InvalidInput& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const DepthExhausted& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const Unclassified& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 4;
    } catch (const VerificationMismatch& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 5;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
