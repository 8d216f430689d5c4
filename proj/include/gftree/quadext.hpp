#pragma once

#include "ratfunc.hpp"
#include "series.hpp"

#include <vector>

namespace gftree {

// Power-series root T(x) with T(0)=1 of
//   x(1+x-ax) T^2 - (1+x-ax) T + 1 = 0,
// where a = loops.  For a=1 this is the Catalan generating function.
inline Series kernel_t0(int loops, int order) {
    Series c(order); // 1 + x - a x
    c[0] = 1;
    if (order >= 1) c[1] = Rat(1) - Rat(loops);
    Series cinv = c.inverse();
    Series T = Series::constant(1, order);
    Series xs = Series::x(order);
    for (int it = 0; it <= order; ++it) {
        // T <- (1 + x c T^2) / c ; gains at least one coefficient per pass
        T = (Series::constant(1, order) + xs * c * T * T) * cinv;
    }
    return T;
}

// Element a + b*t0 of the degree-2 extension of Q(x) by the kernel root
// above.  Reduction uses t0^2 = S*t0 - P with S = 1/x, P = 1/(x(1+x-ax)).
// loops == -1 marks a purely rational value with no attached root; mixing
// it with any extension element adopts that element's root.
class QuadExt {
public:
    QuadExt() : a_(), b_(), loops_(-1) {}
    QuadExt(RatFunc a) : a_(std::move(a)), b_(), loops_(-1) {}
    QuadExt(long long v) : a_(v), b_(), loops_(-1) {}
    QuadExt(RatFunc a, RatFunc b, int loops)
        : a_(std::move(a)), b_(std::move(b)), loops_(loops) {
        if (b_.is_zero()) loops_ = -1;
    }

    static QuadExt t0(int loops) { return QuadExt(RatFunc(0), RatFunc(1), loops); }

    const RatFunc& a() const { return a_; }
    const RatFunc& b() const { return b_; }
    int loops() const { return loops_; }
    bool is_rational() const { return b_.is_zero(); }

    // S = 1/x, P = 1/(x(1+x-ax)) for this element's root
    static RatFunc sum_of_roots() { return RatFunc(Poly{1}, Poly::x()); }
    static RatFunc prod_of_roots(int loops) {
        Poly c{1, Rat(1) - Rat(loops)}; // 1 + x - a x
        return RatFunc(Poly{1}, Poly::x() * c);
    }

    QuadExt operator+(const QuadExt& o) const {
        return QuadExt(a_ + o.a_, b_ + o.b_, merge_loops(o));
    }
    QuadExt operator-(const QuadExt& o) const {
        return QuadExt(a_ - o.a_, b_ - o.b_, merge_loops(o));
    }
    QuadExt operator-() const { return QuadExt(-a_, -b_, loops_); }
    QuadExt operator*(const QuadExt& o) const {
        int L = merge_loops(o);
        // (a + b t)(c + d t) = ac + (ad + bc) t + bd (S t - P)
        RatFunc bd = b_ * o.b_;
        RatFunc aa = a_ * o.a_;
        RatFunc bb = a_ * o.b_ + b_ * o.a_;
        if (!bd.is_zero()) {
            aa = aa - bd * prod_of_roots(L);
            bb = bb + bd * sum_of_roots();
        }
        return QuadExt(std::move(aa), std::move(bb), L);
    }
    QuadExt inverse() const {
        if (b_.is_zero()) {
            return QuadExt(a_.inverse(), RatFunc(0), loops_);
        }
        RatFunc S = sum_of_roots(), P = prod_of_roots(loops_);
        // conjugate is a + b(S - t); norm = a^2 + abS + b^2 P is rational
        RatFunc n = a_ * a_ + a_ * b_ * S + b_ * b_ * P;
        if (n.is_zero()) throw DivisionByZero("inverse of zero extension element");
        RatFunc ni = n.inverse();
        return QuadExt((a_ + b_ * S) * ni, -b_ * ni, loops_);
    }
    QuadExt operator/(const QuadExt& o) const { return *this * o.inverse(); }
    QuadExt& operator+=(const QuadExt& o) { return *this = *this + o; }
    QuadExt& operator-=(const QuadExt& o) { return *this = *this - o; }
    QuadExt& operator*=(const QuadExt& o) { return *this = *this * o; }
    QuadExt& operator/=(const QuadExt& o) { return *this = *this / o; }

    bool operator==(const QuadExt& o) const {
        if (!(a_ == o.a_ && b_ == o.b_)) return false;
        if (b_.is_zero()) return true;
        return loops_ == o.loops_;
    }
    bool operator!=(const QuadExt& o) const { return !(*this == o); }
    bool is_zero() const { return a_.is_zero() && b_.is_zero(); }

    std::vector<Rat> series_expand(int order) const {
        std::vector<Rat> out(a_.series_expand(order));
        if (!b_.is_zero()) {
            Series t = kernel_t0(loops_, order);
            std::vector<Rat> bs = b_.series_expand(order);
            Series prod = Series(std::move(bs)) * t;
            for (int i = 0; i <= order; ++i) out[static_cast<size_t>(i)] += prod[i];
        }
        return out;
    }

    std::string str() const {
        if (b_.is_zero()) return a_.str();
        std::string s = a_.is_zero() ? "" : a_.str() + " + ";
        return s + "(" + b_.str() + ")*T" + std::to_string(loops_) + "(x)";
    }

private:
    int merge_loops(const QuadExt& o) const {
        if (loops_ == -1) return o.loops_;
        if (o.loops_ == -1) return loops_;
        if (loops_ != o.loops_)
            throw InvalidInput("mixing elements from different quadratic extensions");
        return loops_;
    }

    RatFunc a_, b_;
    int loops_;
};

} // namespace gftree
