#ifndef GFTREE_POLY_HPP
#define GFTREE_POLY_HPP

#include <algorithm>
#include <cassert>
#include <initializer_list>
#include <utility>
#include <vector>

#include "gftree/errors.hpp"
#include "gftree/rat.hpp"

namespace gftree {

/// Univariate polynomial over Q, coefficients ascending by degree.
/// The zero polynomial is the empty coefficient vector.
class Poly {
public:
    Poly() = default;
    Poly(std::initializer_list<Rat> cs) : c_(cs) { trim(); }
    explicit Poly(std::vector<Rat> cs) : c_(std::move(cs)) { trim(); }
    Poly(const Rat& k) : c_{k} { trim(); }  // NOLINT: implicit scalar embed
    Poly(long long k) : c_{Rat(k)} { trim(); }  // NOLINT

    static Poly x() { return Poly{Rat(0), Rat(1)}; }
    static Poly monomial(int deg, const Rat& k = Rat(1)) {
        std::vector<Rat> cs(deg + 1, Rat(0));
        cs[deg] = k;
        return Poly(std::move(cs));
    }

    bool is_zero() const { return c_.empty(); }
    int degree() const { return static_cast<int>(c_.size()) - 1; }
    const std::vector<Rat>& coeffs() const { return c_; }
    Rat coeff(int i) const {
        return (i >= 0 && i < static_cast<int>(c_.size())) ? c_[i] : Rat(0);
    }
    Rat leading() const { return is_zero() ? Rat(0) : c_.back(); }

    Rat eval(const Rat& x0) const {
        Rat r = 0;
        for (auto it = c_.rbegin(); it != c_.rend(); ++it) r = r * x0 + *it;
        return r;
    }

    friend Poly operator+(const Poly& a, const Poly& b) {
        std::vector<Rat> r(std::max(a.c_.size(), b.c_.size()), Rat(0));
        for (size_t i = 0; i < a.c_.size(); ++i) r[i] += a.c_[i];
        for (size_t i = 0; i < b.c_.size(); ++i) r[i] += b.c_[i];
        return Poly(std::move(r));
    }
    friend Poly operator-(const Poly& a, const Poly& b) {
        std::vector<Rat> r(std::max(a.c_.size(), b.c_.size()), Rat(0));
        for (size_t i = 0; i < a.c_.size(); ++i) r[i] += a.c_[i];
        for (size_t i = 0; i < b.c_.size(); ++i) r[i] -= b.c_[i];
        return Poly(std::move(r));
    }
    Poly operator-() const {
        std::vector<Rat> r = c_;
        for (auto& v : r) v = -v;
        return Poly(std::move(r));
    }
    friend Poly operator*(const Poly& a, const Poly& b) {
        if (a.is_zero() || b.is_zero()) return {};
        std::vector<Rat> r(a.c_.size() + b.c_.size() - 1, Rat(0));
        for (size_t i = 0; i < a.c_.size(); ++i)
            for (size_t j = 0; j < b.c_.size(); ++j) r[i + j] += a.c_[i] * b.c_[j];
        return Poly(std::move(r));
    }
    friend Poly operator*(const Poly& a, const Rat& k) {
        std::vector<Rat> r = a.c_;
        for (auto& v : r) v *= k;
        return Poly(std::move(r));
    }
    friend Poly operator*(const Rat& k, const Poly& a) { return a * k; }

    Poly& operator+=(const Poly& o) { return *this = *this + o; }
    Poly& operator-=(const Poly& o) { return *this = *this - o; }
    Poly& operator*=(const Poly& o) { return *this = *this * o; }

    friend bool operator==(const Poly& a, const Poly& b) { return a.c_ == b.c_; }
    friend bool operator!=(const Poly& a, const Poly& b) { return !(a == b); }

    /// Multiply by x^k.
    Poly shifted(int k) const {
        if (is_zero()) return {};
        std::vector<Rat> r(c_.size() + k, Rat(0));
        for (size_t i = 0; i < c_.size(); ++i) r[i + k] = c_[i];
        return Poly(std::move(r));
    }

    /// Euclidean division; requires b != 0.
    static std::pair<Poly, Poly> divmod(const Poly& a, const Poly& b) {
        if (b.is_zero()) throw DivisionByZero("Poly::divmod by zero");
        Poly q, r = a;
        std::vector<Rat> qc(std::max(0, a.degree() - b.degree() + 1), Rat(0));
        while (!r.is_zero() && r.degree() >= b.degree()) {
            Rat f = r.leading() / b.leading();
            int d = r.degree() - b.degree();
            qc[d] = f;
            r = r - (b * f).shifted(d);
        }
        return {Poly(std::move(qc)), r};
    }

    /// Exact division; throws if a remainder is left.
    static Poly div_exact(const Poly& a, const Poly& b) {
        auto [q, r] = divmod(a, b);
        if (!r.is_zero()) throw DivisionByZero("Poly::div_exact: not divisible");
        return q;
    }

    /// Primitive integer image (denominators cleared, content removed, positive leading sign).
    std::vector<Int> primitive_z() const {
        if (is_zero()) return {};
        Int l = 1;
        for (const auto& v : c_) {
            Int d = rat_den(v);
            l = boost::multiprecision::lcm(l, d);
        }
        std::vector<Int> z(c_.size());
        for (size_t i = 0; i < c_.size(); ++i) z[i] = rat_num(c_[i]) * (l / rat_den(c_[i]));
        Int g = 0;
        for (const auto& v : z) g = boost::multiprecision::gcd(g, v);
        if (g == 0) g = 1;
        if (z.back() < 0) g = -g;
        for (auto& v : z) v /= g;
        return z;
    }

    /// gcd via primitive pseudo-remainder sequence; result is primitive with
    /// positive leading coefficient (1 for coprime inputs).
    static Poly gcd(const Poly& a, const Poly& b) {
        std::vector<Int> u = a.primitive_z(), v = b.primitive_z();
        if (u.empty()) return from_z(v);
        if (v.empty()) return from_z(u);
        if (u.size() < v.size()) std::swap(u, v);
        while (!v.empty()) {
            std::vector<Int> r = prem(u, v);
            u = std::move(v);
            v = primitive(std::move(r));
        }
        return from_z(u);
    }

    /// Coefficient vector padded with zeros up to index `order`.
    std::vector<Rat> series_pad(int order) const {
        std::vector<Rat> r(static_cast<size_t>(order) + 1, Rat(0));
        for (size_t i = 0; i < c_.size() && i < r.size(); ++i) r[i] = c_[i];
        return r;
    }

    std::string str(const std::string& var = "x") const;

private:
    std::vector<Rat> c_;

    void trim() {
        while (!c_.empty() && c_.back() == 0) c_.pop_back();
    }

    static Poly from_z(const std::vector<Int>& z) {
        std::vector<Rat> r(z.size());
        for (size_t i = 0; i < z.size(); ++i) r[i] = Rat(z[i]);
        return Poly(std::move(r));
    }

    static std::vector<Int> primitive(std::vector<Int> z) {
        while (!z.empty() && z.back() == 0) z.pop_back();
        if (z.empty()) return z;
        Int g = 0;
        for (const auto& v : z) g = boost::multiprecision::gcd(g, v);
        if (z.back() < 0) g = -g;
        for (auto& v : z) v /= g;
        return z;
    }

    // Pseudo-remainder of integer polynomials, deg(u) >= deg(v) on entry.
    static std::vector<Int> prem(std::vector<Int> u, const std::vector<Int>& v) {
        Int lv = v.back();
        int dv = static_cast<int>(v.size()) - 1;
        while (u.size() >= v.size()) {
            Int lu = u.back();
            int du = static_cast<int>(u.size()) - 1;
            for (auto& w : u) w *= lv;
            for (int i = 0; i <= dv; ++i) u[du - dv + i] -= lu * v[i];
            while (!u.empty() && u.back() == 0) u.pop_back();
        }
        return u;
    }
};

inline std::string Poly::str(const std::string& var) const {
    if (is_zero()) return "0";
    std::string s;
    bool first = true;
    for (int i = 0; i <= degree(); ++i) {
        Rat v = coeff(i);
        if (v == 0) continue;
        std::string term;
        Rat av = v < 0 ? Rat(-v) : v;
        if (i == 0) {
            term = to_string(av);
        } else {
            std::string pw = (i == 1) ? var : var + "^" + std::to_string(i);
            term = (av == 1) ? pw : to_string(av) + "*" + pw;
        }
        if (first) {
            s = (v < 0 ? "-" : "") + term;
            first = false;
        } else {
            s += (v < 0 ? " - " : " + ") + term;
        }
    }
    return s;
}

} // namespace gftree

#endif
