#include "gftree/perm.hpp"

#include <algorithm>

namespace gftree {

std::string perm_to_string(const Perm& p) {
    bool wide = p.size() > 9;
    std::string s;
    if (wide) s += '[';
    for (size_t i = 0; i < p.size(); ++i) {
        if (wide && i) s += ' ';
        s += std::to_string(p[i]);
    }
    if (wide) s += ']';
    return s;
}

PatternSet::PatternSet(std::vector<Perm> pats) : patterns(std::move(pats)) {
    if (patterns.empty()) throw InvalidInput("empty pattern set");
    for (const auto& p : patterns) {
        if (p.empty()) throw InvalidInput("empty pattern");
        std::vector<bool> seen(p.size(), false);
        for (int v : p) {
            if (v < 1 || v > static_cast<int>(p.size()) || seen[v - 1])
                throw InvalidInput("pattern is not a permutation: " + perm_to_string(p));
            seen[v - 1] = true;
        }
        if (p.size() == 1)
            throw InvalidInput("pattern 1 leaves nothing to enumerate");
        t = std::max(t, static_cast<int>(p.size()));
    }
}

namespace {

// Backtracking occurrence search.  chosen[i] = position in sigma matched to
// tau[i]; positions strictly increase and relative order must agree.
bool search(const Perm& sigma, const Perm& tau, int i, int start,
            std::vector<int>& chosen, int forced_pos, int max_idx) {
    if (i == static_cast<int>(tau.size())) return true;
    int n = static_cast<int>(sigma.size());
    int remaining = static_cast<int>(tau.size()) - i;
    int lo = start, hi = n - remaining;
    for (int p = lo; p <= hi; ++p) {
        if (i == max_idx) {
            if (forced_pos >= 0 && p != forced_pos) continue;
        } else if (forced_pos >= 0) {
            // other pattern entries may not reuse the forced position
            if (p == forced_pos) continue;
            if (i > max_idx && p < forced_pos) continue;
            if (i < max_idx && p > forced_pos) continue;
        }
        bool ok = true;
        for (int j = 0; j < i; ++j) {
            if ((sigma[p] < sigma[chosen[j]]) != (tau[i] < tau[j])) { ok = false; break; }
        }
        if (!ok) continue;
        chosen[i] = p;
        if (search(sigma, tau, i + 1, p + 1, chosen, forced_pos, max_idx)) return true;
    }
    return false;
}

} // namespace

bool contains_pattern(const Perm& sigma, const Perm& tau, int forced_pos) {
    if (tau.size() > sigma.size()) return false;
    int max_idx = static_cast<int>(std::max_element(tau.begin(), tau.end()) - tau.begin());
    std::vector<int> chosen(tau.size());
    return search(sigma, tau, 0, 0, chosen, forced_pos, max_idx);
}

bool avoids_all(const Perm& sigma, const PatternSet& b) {
    for (const auto& tau : b.patterns)
        if (contains_pattern(sigma, tau)) return false;
    return true;
}

std::vector<Perm> tree_children(const Perm& sigma, const PatternSet& b, Budget& budget) {
    int n = static_cast<int>(sigma.size());
    std::vector<Perm> out;
    for (int slot = 0; slot <= n; ++slot) {
        budget.tick();
        Perm child;
        child.reserve(sigma.size() + 1);
        child.insert(child.end(), sigma.begin(), sigma.begin() + slot);
        child.push_back(n + 1);
        child.insert(child.end(), sigma.begin() + slot, sigma.end());
        // sigma avoids b, so any new occurrence must use the inserted max
        bool ok = true;
        for (const auto& tau : b.patterns) {
            if (contains_pattern(child, tau, slot)) { ok = false; break; }
        }
        if (ok) out.push_back(std::move(child));
    }
    return out;
}

namespace {

void count_dfs(const Perm& sigma, const PatternSet& b, int nmax, Budget& budget,
               std::vector<std::uint64_t>& counts) {
    int n = static_cast<int>(sigma.size());
    ++counts[static_cast<size_t>(n)];
    if (n == nmax) return;
    for (const auto& c : tree_children(sigma, b, budget))
        count_dfs(c, b, nmax, budget, counts);
}

} // namespace

std::vector<std::uint64_t> count_avoiders(const PatternSet& b, int nmax, Budget& budget) {
    std::vector<std::uint64_t> levels(static_cast<size_t>(nmax) + 1, 0);
    if (nmax >= 1) count_dfs(Perm{1}, b, nmax, budget, levels);
    return {levels.begin() + 1, levels.end()};
}

namespace {

void profile_dfs(const Perm& sigma, const PatternSet& b, int depth_left, Budget& budget,
                 std::vector<std::uint64_t>& levels, int level) {
    ++levels[static_cast<size_t>(level)];
    if (depth_left == 0) return;
    for (const auto& c : tree_children(sigma, b, budget))
        profile_dfs(c, b, depth_left - 1, budget, levels, level + 1);
}

} // namespace

std::vector<std::uint64_t> subtree_profile(const Perm& sigma, const PatternSet& b,
                                           int depth, Budget& budget) {
    std::vector<std::uint64_t> levels(static_cast<size_t>(depth), 0);
    profile_dfs(sigma, b, depth - 1, budget, levels, 0);
    return levels;
}

std::vector<std::uint64_t> subtree_shape(const Perm& sigma, const PatternSet& b,
                                         int depth, Budget& budget) {
    std::vector<std::uint64_t> out{0};
    if (depth > 1) {
        std::vector<std::vector<std::uint64_t>> kids;
        for (const auto& c : tree_children(sigma, b, budget))
            kids.push_back(subtree_shape(c, b, depth - 1, budget));
        std::sort(kids.begin(), kids.end());
        for (const auto& k : kids) out.insert(out.end(), k.begin(), k.end());
    }
    out.push_back(1);
    return out;
}

} // namespace gftree
