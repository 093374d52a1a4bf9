#pragma once

#include <algorithm>
#include <cstdint>
#include <string>
#include <vector>

#include "replab/errors.hpp"

namespace replab {

// Arbitrary-precision signed integer.  Supports exactly the operations the
// representation-theory code needs: ring arithmetic, comparisons, exact
// division by a machine word, and decimal printing.  Magnitude is stored as
// little-endian base-2^32 limbs with no leading zero limb.
class BigInt {
  public:
    BigInt() = default;
    BigInt(long long v) {  // NOLINT: implicit by design
        if (v == 0) return;
        sign_ = v < 0 ? -1 : 1;
        unsigned long long m = v < 0 ? 0ULL - static_cast<unsigned long long>(v)
                                     : static_cast<unsigned long long>(v);
        mag_.push_back(static_cast<uint32_t>(m & 0xffffffffu));
        if (m >> 32) mag_.push_back(static_cast<uint32_t>(m >> 32));
    }
    BigInt(int v) : BigInt(static_cast<long long>(v)) {}

    bool is_zero() const { return sign_ == 0; }
    int sign() const { return sign_; }

    bool fits_int64() const {
        if (mag_.size() > 2) return false;
        unsigned long long m = magnitude_u64();
        if (sign_ >= 0) return m <= 0x7fffffffffffffffULL;
        return m <= 0x8000000000000000ULL;
    }
    long long to_int64() const {
        if (!fits_int64()) throw ArithmeticOverflow("BigInt does not fit in int64: " + to_string());
        unsigned long long m = magnitude_u64();
        if (sign_ < 0) return static_cast<long long>(0ULL - m);
        return static_cast<long long>(m);
    }

    friend BigInt operator-(const BigInt& a) {
        BigInt r = a;
        r.sign_ = -r.sign_;
        return r;
    }

    friend BigInt operator+(const BigInt& a, const BigInt& b) {
        if (a.sign_ == 0) return b;
        if (b.sign_ == 0) return a;
        BigInt r;
        if (a.sign_ == b.sign_) {
            r.mag_ = add_mag(a.mag_, b.mag_);
            r.sign_ = a.sign_;
        } else {
            int c = cmp_mag(a.mag_, b.mag_);
            if (c == 0) return BigInt();
            if (c > 0) {
                r.mag_ = sub_mag(a.mag_, b.mag_);
                r.sign_ = a.sign_;
            } else {
                r.mag_ = sub_mag(b.mag_, a.mag_);
                r.sign_ = b.sign_;
            }
        }
        return r;
    }
    friend BigInt operator-(const BigInt& a, const BigInt& b) { return a + (-b); }

    friend BigInt operator*(const BigInt& a, const BigInt& b) {
        if (a.sign_ == 0 || b.sign_ == 0) return BigInt();
        BigInt r;
        r.sign_ = a.sign_ * b.sign_;
        r.mag_.assign(a.mag_.size() + b.mag_.size(), 0);
        for (size_t i = 0; i < a.mag_.size(); ++i) {
            unsigned long long carry = 0;
            for (size_t j = 0; j < b.mag_.size(); ++j) {
                unsigned long long cur = static_cast<unsigned long long>(a.mag_[i]) * b.mag_[j] +
                                         r.mag_[i + j] + carry;
                r.mag_[i + j] = static_cast<uint32_t>(cur & 0xffffffffu);
                carry = cur >> 32;
            }
            size_t k = i + b.mag_.size();
            while (carry) {
                unsigned long long cur = r.mag_[k] + carry;
                r.mag_[k] = static_cast<uint32_t>(cur & 0xffffffffu);
                carry = cur >> 32;
                ++k;
            }
        }
        r.trim();
        return r;
    }

    BigInt& operator+=(const BigInt& b) { return *this = *this + b; }
    BigInt& operator-=(const BigInt& b) { return *this = *this - b; }
    BigInt& operator*=(const BigInt& b) { return *this = *this * b; }

    // Quotient by a positive machine integer; throws unless the division is
    // exact.  This is all the division the library ever needs (Weyl dimension
    // quotients, Freudenthal quotients, Newton-identity divisions).
    BigInt div_exact(long long d) const {
        if (d == 0) throw ArithmeticOverflow("division by zero");
        BigInt r;
        bool neg = d < 0;
        unsigned long long du = neg ? 0ULL - static_cast<unsigned long long>(d)
                                    : static_cast<unsigned long long>(d);
        r.sign_ = sign_ * (neg ? -1 : 1);
        r.mag_.assign(mag_.size(), 0);
        unsigned long long rem = 0;
        for (size_t i = mag_.size(); i-- > 0;) {
            unsigned long long cur = (rem << 32) | mag_[i];
            if (du > 0xffffffffULL) {
                // Two-limb divisor path via 128-bit arithmetic.
                __uint128_t wide = (static_cast<__uint128_t>(rem) << 32) | mag_[i];
                r.mag_[i] = static_cast<uint32_t>(wide / du);
                rem = static_cast<unsigned long long>(wide % du);
            } else {
                r.mag_[i] = static_cast<uint32_t>(cur / du);
                rem = cur % du;
            }
        }
        if (rem != 0) throw ArithmeticOverflow("div_exact: division is not exact");
        r.trim();
        if (r.mag_.empty()) r.sign_ = 0;
        return r;
    }

    friend bool operator==(const BigInt& a, const BigInt& b) {
        return a.sign_ == b.sign_ && a.mag_ == b.mag_;
    }
    friend bool operator!=(const BigInt& a, const BigInt& b) { return !(a == b); }
    friend bool operator<(const BigInt& a, const BigInt& b) {
        if (a.sign_ != b.sign_) return a.sign_ < b.sign_;
        int c = cmp_mag(a.mag_, b.mag_);
        return a.sign_ >= 0 ? c < 0 : c > 0;
    }
    friend bool operator>(const BigInt& a, const BigInt& b) { return b < a; }
    friend bool operator<=(const BigInt& a, const BigInt& b) { return !(b < a); }
    friend bool operator>=(const BigInt& a, const BigInt& b) { return !(a < b); }

    std::string to_string() const {
        if (sign_ == 0) return "0";
        std::vector<uint32_t> work = mag_;
        std::string digits;
        while (!work.empty()) {
            unsigned long long rem = 0;
            for (size_t i = work.size(); i-- > 0;) {
                unsigned long long cur = (rem << 32) | work[i];
                work[i] = static_cast<uint32_t>(cur / 1000000000ULL);
                rem = cur % 1000000000ULL;
            }
            while (!work.empty() && work.back() == 0) work.pop_back();
            for (int k = 0; k < 9; ++k) {
                digits.push_back(static_cast<char>('0' + rem % 10));
                rem /= 10;
            }
        }
        while (digits.size() > 1 && digits.back() == '0') digits.pop_back();
        std::string out;
        if (sign_ < 0) out.push_back('-');
        out.append(digits.rbegin(), digits.rend());
        return out;
    }

  private:
    int sign_ = 0;
    std::vector<uint32_t> mag_;

    unsigned long long magnitude_u64() const {
        unsigned long long m = mag_.empty() ? 0 : mag_[0];
        if (mag_.size() > 1) m |= static_cast<unsigned long long>(mag_[1]) << 32;
        return m;
    }
    void trim() {
        while (!mag_.empty() && mag_.back() == 0) mag_.pop_back();
        if (mag_.empty()) sign_ = 0;
    }
    static int cmp_mag(const std::vector<uint32_t>& a, const std::vector<uint32_t>& b) {
        if (a.size() != b.size()) return a.size() < b.size() ? -1 : 1;
        for (size_t i = a.size(); i-- > 0;)
            if (a[i] != b[i]) return a[i] < b[i] ? -1 : 1;
        return 0;
    }
    static std::vector<uint32_t> add_mag(const std::vector<uint32_t>& a,
                                         const std::vector<uint32_t>& b) {
        const auto& big = a.size() >= b.size() ? a : b;
        const auto& small = a.size() >= b.size() ? b : a;
        std::vector<uint32_t> r = big;
        unsigned long long carry = 0;
        for (size_t i = 0; i < r.size(); ++i) {
            unsigned long long cur = r[i] + carry + (i < small.size() ? small[i] : 0);
            r[i] = static_cast<uint32_t>(cur & 0xffffffffu);
            carry = cur >> 32;
            if (carry == 0 && i >= small.size()) break;
        }
        if (carry) r.push_back(static_cast<uint32_t>(carry));
        return r;
    }
    // Requires |a| >= |b|.
    static std::vector<uint32_t> sub_mag(const std::vector<uint32_t>& a,
                                         const std::vector<uint32_t>& b) {
        std::vector<uint32_t> r = a;
        long long borrow = 0;
        for (size_t i = 0; i < r.size(); ++i) {
            long long cur = static_cast<long long>(r[i]) - borrow -
                            (i < b.size() ? static_cast<long long>(b[i]) : 0);
            if (cur < 0) {
                cur += 1LL << 32;
                borrow = 1;
            } else {
                borrow = 0;
            }
            r[i] = static_cast<uint32_t>(cur);
        }
        while (!r.empty() && r.back() == 0) r.pop_back();
        return r;
    }
};

inline std::string to_string(const BigInt& v) { return v.to_string(); }

}  // namespace replab
