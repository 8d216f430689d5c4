#pragma once

#include "rat.hpp"
#include "errors.hpp"

#include <vector>

namespace gftree {

// Truncated power series over Q with a fixed order (number of coefficients
// kept).  Arithmetic truncates; orders must match.
class Series {
public:
    explicit Series(int order) : c_(static_cast<size_t>(order) + 1, Rat(0)) {}
    Series(std::vector<Rat> c) : c_(std::move(c)) {}

    static Series x(int order) {
        Series s(order);
        if (order >= 1) s.c_[1] = 1;
        return s;
    }
    static Series constant(const Rat& v, int order) {
        Series s(order);
        s.c_[0] = v;
        return s;
    }

    int order() const { return static_cast<int>(c_.size()) - 1; }
    const Rat& operator[](int i) const { return c_[static_cast<size_t>(i)]; }
    Rat& operator[](int i) { return c_[static_cast<size_t>(i)]; }
    const std::vector<Rat>& coeffs() const { return c_; }

    Series operator+(const Series& o) const {
        Series r(*this);
        for (size_t i = 0; i < c_.size(); ++i) r.c_[i] += o.c_[i];
        return r;
    }
    Series operator-(const Series& o) const {
        Series r(*this);
        for (size_t i = 0; i < c_.size(); ++i) r.c_[i] -= o.c_[i];
        return r;
    }
    Series operator*(const Series& o) const {
        Series r(order());
        for (size_t i = 0; i < c_.size(); ++i) {
            if (c_[i] == 0) continue;
            for (size_t j = 0; i + j < c_.size(); ++j)
                r.c_[i + j] += c_[i] * o.c_[j];
        }
        return r;
    }
    Series operator*(const Rat& k) const {
        Series r(*this);
        for (auto& v : r.c_) v *= k;
        return r;
    }

    Series inverse() const {
        if (c_[0] == 0) throw DivisionByZero("series inverse needs nonzero constant term");
        Series r(order());
        r.c_[0] = Rat(1) / c_[0];
        for (size_t n = 1; n < c_.size(); ++n) {
            Rat acc(0);
            for (size_t k = 1; k <= n; ++k) acc += c_[k] * r.c_[n - k];
            r.c_[n] = -acc / c_[0];
        }
        return r;
    }
    Series operator/(const Series& o) const { return *this * o.inverse(); }

    bool operator==(const Series& o) const { return c_ == o.c_; }

private:
    std::vector<Rat> c_;
};

} // namespace gftree
