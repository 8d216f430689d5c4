#pragma once

#include "ratfunc.hpp"
#include "quadext.hpp"

#include <vector>

namespace gftree {

// Polynomial in a second variable t with coefficients in Q(x).
class TPoly {
public:
    TPoly() = default;
    TPoly(RatFunc c) { c_.push_back(std::move(c)); trim(); }
    TPoly(std::initializer_list<RatFunc> cs) : c_(cs) { trim(); }

    static TPoly t() { return TPoly{RatFunc(0), RatFunc(1)}; }
    static TPoly tpow(int k) {
        TPoly p;
        p.c_.assign(static_cast<size_t>(k) + 1, RatFunc(0));
        p.c_.back() = RatFunc(1);
        return p;
    }

    bool is_zero() const { return c_.empty(); }
    int degree() const { return static_cast<int>(c_.size()) - 1; }
    RatFunc coeff(int i) const {
        if (i < 0 || i > degree()) return RatFunc(0);
        return c_[static_cast<size_t>(i)];
    }
    RatFunc leading() const { return c_.empty() ? RatFunc(0) : c_.back(); }

    TPoly operator+(const TPoly& o) const {
        TPoly r;
        r.c_.resize(std::max(c_.size(), o.c_.size()), RatFunc(0));
        for (size_t i = 0; i < c_.size(); ++i) r.c_[i] += c_[i];
        for (size_t i = 0; i < o.c_.size(); ++i) r.c_[i] += o.c_[i];
        r.trim();
        return r;
    }
    TPoly operator-(const TPoly& o) const {
        TPoly r;
        r.c_.resize(std::max(c_.size(), o.c_.size()), RatFunc(0));
        for (size_t i = 0; i < c_.size(); ++i) r.c_[i] += c_[i];
        for (size_t i = 0; i < o.c_.size(); ++i) r.c_[i] -= o.c_[i];
        r.trim();
        return r;
    }
    TPoly operator-() const {
        TPoly r(*this);
        for (auto& v : r.c_) v = -v;
        return r;
    }
    TPoly operator*(const TPoly& o) const {
        if (is_zero() || o.is_zero()) return TPoly();
        TPoly r;
        r.c_.assign(c_.size() + o.c_.size() - 1, RatFunc(0));
        for (size_t i = 0; i < c_.size(); ++i) {
            if (c_[i].is_zero()) continue;
            for (size_t j = 0; j < o.c_.size(); ++j)
                r.c_[i + j] += c_[i] * o.c_[j];
        }
        r.trim();
        return r;
    }
    TPoly operator*(const RatFunc& k) const {
        TPoly r(*this);
        for (auto& v : r.c_) v *= k;
        r.trim();
        return r;
    }

    bool operator==(const TPoly& o) const { return c_ == o.c_; }

    RatFunc eval(const RatFunc& tv) const {
        RatFunc acc(0);
        for (size_t i = c_.size(); i-- > 0;) acc = acc * tv + c_[i];
        return acc;
    }
    QuadExt eval(const QuadExt& tv) const {
        QuadExt acc;
        for (size_t i = c_.size(); i-- > 0;) acc = acc * tv + QuadExt(c_[i]);
        return acc;
    }

    // Euclidean remainder over the field Q(x)
    static TPoly rem(TPoly u, const TPoly& v) {
        RatFunc lv = v.leading().inverse();
        while (u.degree() >= v.degree() && !u.is_zero()) {
            RatFunc q = u.leading() * lv;
            int shift = u.degree() - v.degree();
            for (int i = 0; i <= v.degree(); ++i)
                u.c_[static_cast<size_t>(i + shift)] -= q * v.coeff(i);
            u.trim();
        }
        return u;
    }
    static TPoly divq(TPoly u, const TPoly& v, TPoly* remainder = nullptr) {
        TPoly q;
        q.c_.assign(static_cast<size_t>(std::max(0, u.degree() - v.degree()) + 1), RatFunc(0));
        RatFunc lv = v.leading().inverse();
        while (!u.is_zero() && u.degree() >= v.degree()) {
            RatFunc c = u.leading() * lv;
            int shift = u.degree() - v.degree();
            q.c_[static_cast<size_t>(shift)] = c;
            for (int i = 0; i <= v.degree(); ++i)
                u.c_[static_cast<size_t>(i + shift)] -= c * v.coeff(i);
            u.trim();
        }
        q.trim();
        if (remainder) *remainder = u;
        return q;
    }
    static TPoly gcd(TPoly a, TPoly b) {
        while (!b.is_zero()) {
            TPoly r = rem(a, b);
            a = b;
            b = r;
        }
        if (!a.is_zero()) a = a * a.leading().inverse(); // monic in t
        return a;
    }

private:
    void trim() {
        while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
    }
    std::vector<RatFunc> c_;
};

// Rational function in t over Q(x), gcd-reduced with monic-in-t denominator.
class TRat {
public:
    TRat() : num_(), den_(RatFunc(1)) {}
    TRat(TPoly n) : num_(std::move(n)), den_(RatFunc(1)) {}
    TRat(TPoly n, TPoly d) : num_(std::move(n)), den_(std::move(d)) { normalize(); }
    TRat(RatFunc c) : num_(std::move(c)), den_(RatFunc(1)) {}
    TRat(long long c) : num_(RatFunc(c)), den_(RatFunc(1)) {}

    static TRat t() { return TRat(TPoly::t()); }

    const TPoly& num() const { return num_; }
    const TPoly& den() const { return den_; }
    bool is_zero() const { return num_.is_zero(); }

    TRat operator+(const TRat& o) const {
        return TRat(num_ * o.den_ + o.num_ * den_, den_ * o.den_);
    }
    TRat operator-(const TRat& o) const {
        return TRat(num_ * o.den_ - o.num_ * den_, den_ * o.den_);
    }
    TRat operator-() const {
        TRat r(*this);
        r.num_ = -r.num_;
        return r;
    }
    TRat operator*(const TRat& o) const {
        return TRat(num_ * o.num_, den_ * o.den_);
    }
    TRat operator/(const TRat& o) const {
        if (o.num_.is_zero()) throw DivisionByZero("t-rational division by zero");
        return TRat(num_ * o.den_, den_ * o.num_);
    }
    TRat& operator+=(const TRat& o) { return *this = *this + o; }
    TRat& operator-=(const TRat& o) { return *this = *this - o; }
    TRat& operator*=(const TRat& o) { return *this = *this * o; }
    TRat& operator/=(const TRat& o) { return *this = *this / o; }
    TRat inverse() const {
        if (num_.is_zero()) throw DivisionByZero("inverse of zero");
        return TRat(den_, num_);
    }

    bool operator==(const TRat& o) const { return num_ == o.num_ && den_ == o.den_; }

    RatFunc eval_t(const RatFunc& tv) const {
        RatFunc d = den_.eval(tv);
        if (d.is_zero()) throw PoleAtEvaluationPoint("pole in t at evaluation point");
        return num_.eval(tv) / d;
    }
    QuadExt eval_t(const QuadExt& tv) const {
        QuadExt d = den_.eval(tv);
        if (d.is_zero()) throw PoleAtEvaluationPoint("pole in t at evaluation point");
        return num_.eval(tv) / d;
    }

    // coefficient of t^1 in the Taylor expansion at t = 0
    RatFunc coeff_t1() const {
        RatFunc d0 = den_.coeff(0);
        if (d0.is_zero()) throw PoleAtEvaluationPoint("pole at t = 0");
        return (num_.coeff(1) * d0 - num_.coeff(0) * den_.coeff(1)) / (d0 * d0);
    }

private:
    void normalize() {
        if (den_.is_zero()) throw DivisionByZero("zero denominator in t");
        if (num_.is_zero()) {
            den_ = TPoly(RatFunc(1));
            return;
        }
        TPoly g = TPoly::gcd(num_, den_);
        if (g.degree() > 0) {
            num_ = TPoly::divq(num_, g);
            den_ = TPoly::divq(den_, g);
        }
        RatFunc lead = den_.leading().inverse();
        num_ = num_ * lead;
        den_ = den_ * lead;
    }

    TPoly num_, den_;
};

// f(arg) for a univariate rational function f, with arg in the extension
inline QuadExt compose_at(const RatFunc& f, const QuadExt& arg) {
    auto horner = [&](const Poly& p) {
        QuadExt acc;
        for (int i = p.degree(); i >= 0; --i)
            acc = acc * arg + QuadExt(RatFunc(p.coeff(i)));
        return acc;
    };
    QuadExt d = horner(f.den());
    if (d.is_zero()) throw PoleAtEvaluationPoint("pole when composing");
    return horner(f.num()) / d;
}

} // namespace gftree
