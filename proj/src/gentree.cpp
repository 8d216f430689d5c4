#include "gftree/gentree.hpp"
#include "gftree/errors.hpp"

#include <algorithm>

namespace gftree {

std::vector<int> RuleSet::class_order() const {
    std::vector<int> order(classes.size());
    for (size_t i = 0; i < order.size(); ++i) order[i] = static_cast<int>(i);
    std::sort(order.begin(), order.end(), [&](int a, int bb) {
        const Perm& pa = classes[static_cast<size_t>(a)].rep;
        const Perm& pb = classes[static_cast<size_t>(bb)].rep;
        if (pa.size() != pb.size()) return pa.size() < pb.size();
        return pa < pb;
    });
    return order;
}

RuleSet explore(const PatternSet& b, int depth, Budget& budget, int sig_depth) {
    if (sig_depth <= 0) sig_depth = b.t;
    RuleSet rs{b, depth, sig_depth, {}, {}, {}, 0};
    std::map<Perm, Signature> sig_cache;
    std::map<Signature, int> class_of;

    auto signature_of = [&](const Perm& p) -> const Signature& {
        auto it = sig_cache.find(p);
        if (it != sig_cache.end()) return it->second;
        Signature s = subtree_shape(p, b, rs.sig_depth, budget);
        return sig_cache.emplace(p, std::move(s)).first->second;
    };
    auto class_for = [&](const Perm& p, int level) -> int {
        const Signature& s = signature_of(p);
        auto it = class_of.find(s);
        if (it != class_of.end()) {
            rs.member_of.emplace(p, it->second);
            return it->second;
        }
        int id = static_cast<int>(rs.classes.size());
        rs.classes.push_back(LabelClass{s, p, level, false, {}});
        class_of.emplace(s, id);
        rs.member_of.emplace(p, id);
        return id;
    };

    rs.root = class_for(Perm{1}, 1);
    for (int level = 1; level < depth; ++level) {
        // classes first seen at this level, reps in lex order
        std::vector<int> todo;
        for (size_t i = 0; i < rs.classes.size(); ++i)
            if (rs.classes[i].first_level == level) todo.push_back(static_cast<int>(i));
        std::sort(todo.begin(), todo.end(), [&](int a, int bb) {
            return rs.classes[static_cast<size_t>(a)].rep < rs.classes[static_cast<size_t>(bb)].rep;
        });
        for (int id : todo) {
            std::vector<Perm> kids = tree_children(rs.classes[static_cast<size_t>(id)].rep, b, budget);
            std::sort(kids.begin(), kids.end());
            std::map<int, int> rule;
            for (const auto& k : kids) ++rule[class_for(k, level + 1)];
            rs.classes[static_cast<size_t>(id)].rule = std::move(rule);
            rs.classes[static_cast<size_t>(id)].expanded = true;
        }
    }
    for (size_t i = 0; i < rs.classes.size(); ++i)
        if (!rs.classes[i].expanded) rs.frontier.push_back(static_cast<int>(i));
    return rs;
}

bool finite_label_test(const PatternSet& b) {
    auto without_max_is = [](const Perm& p, bool increasing) {
        int maxpos = static_cast<int>(std::max_element(p.begin(), p.end()) - p.begin());
        int prev = increasing ? 0 : static_cast<int>(p.size()) + 1;
        for (int i = 0; i < static_cast<int>(p.size()); ++i) {
            if (i == maxpos) continue;
            if (increasing ? (p[i] < prev) : (p[i] > prev)) return false;
            prev = p[i];
        }
        return true;
    };
    bool inc = false, dec = false;
    for (const auto& p : b.patterns) {
        if (without_max_is(p, true)) inc = true;
        if (without_max_is(p, false)) dec = true;
    }
    return inc && dec;
}

std::vector<std::vector<Int>> transition_matrix(const RuleSet& rs) {
    if (!rs.closed()) throw NotClosed("label set not closed at this depth");
    std::vector<int> order = rs.class_order();
    std::vector<int> pos(rs.classes.size());
    for (size_t i = 0; i < order.size(); ++i) pos[static_cast<size_t>(order[i])] = static_cast<int>(i);
    size_t n = order.size();
    std::vector<std::vector<Int>> m(n, std::vector<Int>(n, Int(0)));
    for (size_t i = 0; i < n; ++i) {
        const auto& rule = rs.classes[static_cast<size_t>(order[i])].rule;
        for (auto& [cid, mult] : rule)
            m[i][static_cast<size_t>(pos[static_cast<size_t>(cid)])] += mult;
    }
    return m;
}

} // namespace gftree
