#pragma once

#include "poly.hpp"
#include "errors.hpp"

#include <utility>
#include <vector>

namespace gftree {

// Rational function num/den over Q, kept gcd-reduced.  Normalization: if
// den(0) != 0 we scale so den[0] == 1, otherwise den is made monic.  The
// latter lets us carry "Laurent" values like x^{-1} around as 1/x without
// special casing, as long as nobody asks for a series expansion at 0.
class RatFunc {
public:
    RatFunc() : num_(), den_(Poly{1}) {}
    RatFunc(Poly n) : num_(std::move(n)), den_(Poly{1}) {}
    RatFunc(Poly n, Poly d) : num_(std::move(n)), den_(std::move(d)) { normalize(); }
    RatFunc(const Rat& c) : num_(Poly(c)), den_(Poly{1}) {}
    RatFunc(long long c) : num_(Poly(c)), den_(Poly{1}) {}

    static RatFunc x() { return RatFunc(Poly::x()); }
    // x^k for k possibly negative
    static RatFunc xpow(long long k) {
        if (k >= 0) return RatFunc(Poly::monomial(static_cast<int>(k)));
        return RatFunc(Poly{1}, Poly::monomial(static_cast<int>(-k)));
    }

    const Poly& num() const { return num_; }
    const Poly& den() const { return den_; }
    bool is_zero() const { return num_.is_zero(); }
    bool is_polynomial() const { return den_.degree() == 0; }

    RatFunc operator+(const RatFunc& o) const {
        return RatFunc(num_ * o.den_ + o.num_ * den_, den_ * o.den_);
    }
    RatFunc operator-(const RatFunc& o) const {
        return RatFunc(num_ * o.den_ - o.num_ * den_, den_ * o.den_);
    }
    RatFunc operator-() const {
        RatFunc r(*this);
        r.num_ = -r.num_;
        return r;
    }
    RatFunc operator*(const RatFunc& o) const {
        return RatFunc(num_ * o.num_, den_ * o.den_);
    }
    RatFunc operator/(const RatFunc& o) const {
        if (o.num_.is_zero()) throw DivisionByZero("rational function division by zero");
        return RatFunc(num_ * o.den_, den_ * o.num_);
    }
    RatFunc& operator+=(const RatFunc& o) { return *this = *this + o; }
    RatFunc& operator-=(const RatFunc& o) { return *this = *this - o; }
    RatFunc& operator*=(const RatFunc& o) { return *this = *this * o; }
    RatFunc& operator/=(const RatFunc& o) { return *this = *this / o; }

    bool operator==(const RatFunc& o) const { return num_ == o.num_ && den_ == o.den_; }
    bool operator!=(const RatFunc& o) const { return !(*this == o); }

    RatFunc inverse() const {
        if (num_.is_zero()) throw DivisionByZero("inverse of zero");
        return RatFunc(den_, num_);
    }

    Rat eval(const Rat& v) const {
        Rat d = den_.eval(v);
        if (d == 0) throw PoleAtEvaluationPoint("pole at evaluation point");
        return num_.eval(v) / d;
    }

    // First `order+1` Taylor coefficients at 0.  Requires den(0) != 0.
    std::vector<Rat> series_expand(int order) const {
        if (den_.coeff(0) == 0)
            throw NonUnitDenominator("series expansion needs den(0) != 0");
        std::vector<Rat> out(static_cast<size_t>(order) + 1, Rat(0));
        Rat d0 = den_.coeff(0);
        for (int n = 0; n <= order; ++n) {
            Rat acc = num_.coeff(n);
            for (int k = 1; k <= n; ++k) acc -= den_.coeff(k) * out[n - k];
            out[n] = acc / d0;
        }
        return out;
    }

    std::string str(const std::string& var = "x") const {
        if (is_polynomial()) return num_.str(var);
        return "(" + num_.str(var) + ")/(" + den_.str(var) + ")";
    }

private:
    void normalize() {
        if (den_.is_zero()) throw DivisionByZero("zero denominator");
        if (num_.is_zero()) {
            den_ = Poly{1};
            return;
        }
        Poly g = Poly::gcd(num_, den_);
        if (g.degree() > 0) {
            num_ = Poly::div_exact(num_, g);
            den_ = Poly::div_exact(den_, g);
        }
        Rat scale = (den_.coeff(0) != 0) ? den_.coeff(0) : den_.leading();
        if (scale != 1) {
            Rat inv = Rat(1) / scale;
            num_ = num_ * inv;
            den_ = den_ * inv;
        }
    }

    Poly num_, den_;
};

} // namespace gftree
