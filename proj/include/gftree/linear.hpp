#pragma once

#include "errors.hpp"

#include <map>
#include <vector>

namespace gftree {

// cst + sum coeff[i] * unknown_i over a field F
template <class F>
struct LinearForm {
    F cst{};
    std::map<int, F> terms;

    LinearForm() = default;
    explicit LinearForm(F c) : cst(std::move(c)) {}
    static LinearForm unknown(int id) {
        LinearForm f;
        f.terms[id] = F(1);
        return f;
    }

    LinearForm operator+(const LinearForm& o) const {
        LinearForm r(*this);
        r.cst += o.cst;
        for (auto& [k, v] : o.terms) {
            auto it = r.terms.find(k);
            if (it == r.terms.end()) r.terms[k] = v;
            else {
                it->second += v;
                if (it->second.is_zero()) r.terms.erase(it);
            }
        }
        return r;
    }
    LinearForm operator-(const LinearForm& o) const { return *this + (-o); }
    LinearForm operator-() const {
        LinearForm r;
        r.cst = -cst;
        for (auto& [k, v] : terms) r.terms[k] = -v;
        return r;
    }
    LinearForm operator*(const F& s) const {
        if (s.is_zero()) return LinearForm();
        LinearForm r;
        r.cst = cst * s;
        for (auto& [k, v] : terms) r.terms[k] = v * s;
        return r;
    }
    LinearForm& operator+=(const LinearForm& o) { return *this = *this + o; }
    LinearForm& operator-=(const LinearForm& o) { return *this = *this - o; }

    // substitute known values for some unknowns
    template <class Map>
    LinearForm substitute(const Map& values) const {
        LinearForm r;
        r.cst = cst;
        for (auto& [k, v] : terms) {
            auto it = values.find(k);
            if (it != values.end()) r.cst += v * it->second;
            else r.terms[k] = v;
        }
        return r;
    }

    // map coefficients into another field (e.g. RatFunc -> QuadExt, or
    // TRat -> RatFunc by evaluating at a point)
    template <class G, class Fn>
    LinearForm<G> map(Fn fn) const {
        LinearForm<G> r;
        r.cst = fn(cst);
        for (auto& [k, v] : terms) {
            G g = fn(v);
            if (!g.is_zero()) r.terms[k] = g;
        }
        return r;
    }
};

// Solve the square system "form_i == 0" for the unknowns appearing in the
// forms.  Returns unknown id -> value.  Throws SingularSystem if the system
// is under- or over-determined.
template <class F>
std::map<int, F> solve_linear_forms(std::vector<LinearForm<F>> eqs) {
    std::map<int, F> solution;
    std::vector<int> order;
    for (size_t i = 0; i < eqs.size(); ++i) {
        // pick an equation with at least one live unknown
        size_t pick = i;
        while (pick < eqs.size() && eqs[pick].terms.empty()) {
            if (!eqs[pick].cst.is_zero())
                throw SingularSystem("inconsistent linear system");
            ++pick;
        }
        if (pick == eqs.size()) break;
        std::swap(eqs[i], eqs[pick]);
        auto it = eqs[i].terms.begin();
        int var = it->first;
        F pivot = it->second;
        LinearForm<F> expr = (eqs[i] - LinearForm<F>::unknown(var) * pivot) * (-pivot.inverse());
        // expr is var in terms of remaining unknowns
        std::map<int, LinearForm<F>> sub;
        sub.emplace(var, expr);
        for (size_t j = i + 1; j < eqs.size(); ++j) {
            auto jt = eqs[j].terms.find(var);
            if (jt == eqs[j].terms.end()) continue;
            F c = jt->second;
            eqs[j].terms.erase(jt);
            eqs[j] += expr * c;
        }
        order.push_back(var);
        eqs[i] = expr; // store the elimination expression for back-substitution
    }
    // leftover equations must be trivially satisfied
    for (size_t j = order.size(); j < eqs.size(); ++j)
        if (!eqs[j].terms.empty() || !eqs[j].cst.is_zero())
            throw SingularSystem("inconsistent linear system");
    // back-substitute
    for (size_t i = order.size(); i-- > 0;) {
        LinearForm<F> expr = eqs[i].substitute(solution);
        if (!expr.terms.empty())
            throw SingularSystem("underdetermined linear system");
        solution[order[i]] = expr.cst;
    }
    return solution;
}

} // namespace gftree
