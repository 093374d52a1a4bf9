#pragma once

#include <cstdint>
#include <numeric>
#include <string>

#include "replab/errors.hpp"

namespace replab {

// Exact rational number on 64-bit words.  All products and cross sums are
// computed in 128 bits and checked back into 64; anything larger throws
// ArithmeticOverflow rather than silently wrapping.  The linear algebra in
// this project stays far below that bound, so the check is a tripwire, not a
// routine code path.
class Rat {
  public:
    Rat() = default;
    Rat(long long n) : num_(n), den_(1) {}  // NOLINT: implicit by design
    Rat(int n) : num_(n), den_(1) {}        // NOLINT
    Rat(long long n, long long d) : num_(n), den_(d) {
        if (den_ == 0) throw ArithmeticOverflow("rational with zero denominator");
        normalize_small();
    }

    long long num() const { return num_; }
    long long den() const { return den_; }
    bool is_zero() const { return num_ == 0; }
    bool is_integer() const { return den_ == 1; }

    friend Rat operator-(const Rat& a) { return Rat(-a.num_, a.den_, already_normal{}); }

    friend Rat operator+(const Rat& a, const Rat& b) {
        __int128 n = w(a.num_) * b.den_ + w(b.num_) * a.den_;
        __int128 d = w(a.den_) * b.den_;
        return make(n, d);
    }
    friend Rat operator-(const Rat& a, const Rat& b) {
        __int128 n = w(a.num_) * b.den_ - w(b.num_) * a.den_;
        __int128 d = w(a.den_) * b.den_;
        return make(n, d);
    }
    friend Rat operator*(const Rat& a, const Rat& b) {
        long long g1 = std::gcd(a.num_, b.den_);
        long long g2 = std::gcd(b.num_, a.den_);
        __int128 n = w(a.num_ / (g1 ? g1 : 1)) * (b.num_ / (g2 ? g2 : 1));
        __int128 d = w(a.den_ / (g2 ? g2 : 1)) * (b.den_ / (g1 ? g1 : 1));
        return make(n, d);
    }
    friend Rat operator/(const Rat& a, const Rat& b) {
        if (b.num_ == 0) throw ArithmeticOverflow("rational division by zero");
        __int128 n = w(a.num_) * b.den_;
        __int128 d = w(a.den_) * b.num_;
        return make(n, d);
    }

    Rat& operator+=(const Rat& b) { return *this = *this + b; }
    Rat& operator-=(const Rat& b) { return *this = *this - b; }
    Rat& operator*=(const Rat& b) { return *this = *this * b; }
    Rat& operator/=(const Rat& b) { return *this = *this / b; }

    friend bool operator==(const Rat& a, const Rat& b) {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }
    friend bool operator!=(const Rat& a, const Rat& b) { return !(a == b); }
    friend bool operator<(const Rat& a, const Rat& b) {
        return w(a.num_) * b.den_ < w(b.num_) * a.den_;
    }

    std::string to_string() const {
        std::string s = std::to_string(num_);
        if (den_ != 1) s += "/" + std::to_string(den_);
        return s;
    }

  private:
    long long num_ = 0;
    long long den_ = 1;

    struct already_normal {};
    Rat(long long n, long long d, already_normal) : num_(n), den_(d) {}

    static __int128 w(long long v) { return static_cast<__int128>(v); }

    static Rat make(__int128 n, __int128 d) {
        if (d < 0) {
            n = -n;
            d = -d;
        }
        __int128 g = gcd128(n < 0 ? -n : n, d);
        if (g > 1) {
            n /= g;
            d /= g;
        }
        constexpr __int128 lo = static_cast<__int128>(INT64_MIN);
        constexpr __int128 hi = static_cast<__int128>(INT64_MAX);
        if (n < lo || n > hi || d > hi)
            throw ArithmeticOverflow("rational overflowed 64 bits");
        return Rat(static_cast<long long>(n), static_cast<long long>(d), already_normal{});
    }

    static __int128 gcd128(__int128 a, __int128 b) {
        while (b) {
            __int128 t = a % b;
            a = b;
            b = t;
        }
        return a < 0 ? -a : a;
    }

    void normalize_small() {
        if (den_ < 0) {
            num_ = -num_;
            den_ = -den_;
        }
        long long g = std::gcd(num_, den_);
        if (g > 1) {
            num_ /= g;
            den_ /= g;
        }
    }
};

inline std::string to_string(const Rat& v) { return v.to_string(); }

}  // namespace replab
