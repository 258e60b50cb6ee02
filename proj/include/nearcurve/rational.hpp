// Exact rational arithmetic on checked 128-bit integers.
//
// Counting near-points hinges on exact yes/no decisions: whether a/q lies in the
// interval, whether |q f(a/q) - b| < delta. For polynomial curves with rational
// coefficients both reduce to integer comparisons, provided nothing overflows.
// Every multiply/add here goes through __builtin_*_overflow; an overflow raises
// ResourceError instead of wrapping, so an exact count is exact or loudly absent.
//
// Rat is always stored reduced with positive denominator. Doubles convert exactly
// (p / 2^k by mantissa expansion, never "snapped" to a nearby nice fraction), so a
// caller passing 0.2 gets the binary double 0.2, while the CLI parses the *string*
// "0.2" to 1/5. Both are legitimate curves; they are just different ones.
#pragma once

#include <cmath>
#include <cstdint>
#include <string>
#include <string_view>

#include "nearcurve/errors.hpp"

namespace nearcurve {

using i128 = __int128;

inline i128 checked_add(i128 a, i128 b) {
    i128 r;
    if (__builtin_add_overflow(a, b, &r)) throw ResourceError("128-bit overflow (add)");
    return r;
}

inline i128 checked_sub(i128 a, i128 b) {
    i128 r;
    if (__builtin_sub_overflow(a, b, &r)) throw ResourceError("128-bit overflow (sub)");
    return r;
}

inline i128 checked_mul(i128 a, i128 b) {
    i128 r;
    if (__builtin_mul_overflow(a, b, &r)) throw ResourceError("128-bit overflow (mul)");
    return r;
}

inline i128 iabs128(i128 a) { return a < 0 ? -a : a; }

inline i128 gcd128(i128 a, i128 b) {
    a = iabs128(a);
    b = iabs128(b);
    while (b != 0) {
        i128 t = a % b;
        a = b;
        b = t;
    }
    return a;
}

// Floor/ceil division for d > 0 (C++ '/' truncates toward zero).
inline i128 floor_div(i128 n, i128 d) {
    i128 q = n / d, r = n % d;
    return (r != 0 && n < 0) ? q - 1 : q;
}

inline i128 ceil_div(i128 n, i128 d) {
    i128 q = n / d, r = n % d;
    return (r != 0 && n > 0) ? q + 1 : q;
}

// Nearest integer to n/d (d > 0), ties toward +inf. Ties only occur at distance
// exactly 1/2, which no strict comparison against delta <= 1/2 ever counts.
inline i128 round_div(i128 n, i128 d) {
    return floor_div(checked_add(checked_mul(2, n), d), checked_mul(2, d));
}

inline std::string to_string_i128(i128 v) {
    if (v == 0) return "0";
    bool neg = v < 0;
    unsigned __int128 u = neg ? static_cast<unsigned __int128>(-(v + 1)) + 1
                              : static_cast<unsigned __int128>(v);
    std::string s;
    while (u != 0) {
        s.insert(s.begin(), static_cast<char>('0' + static_cast<int>(u % 10)));
        u /= 10;
    }
    if (neg) s.insert(s.begin(), '-');
    return s;
}

class Rat {
public:
    Rat() : num_(0), den_(1) {}
    Rat(long long n) : num_(n), den_(1) {} // NOLINT: implicit by design
    Rat(i128 num, i128 den) : num_(num), den_(den) { normalize(); }

    i128 num() const { return num_; }
    i128 den() const { return den_; }

    // Exact value of a finite double: mantissa * 2^exponent, reduced.
    static Rat from_double(double d) {
        if (!std::isfinite(d)) throw DomainError("cannot convert non-finite double to rational");
        if (d == 0.0) return Rat();
        int e = 0;
        double m = std::frexp(d, &e); // d = m * 2^e, |m| in [0.5, 1)
        auto p = static_cast<long long>(std::ldexp(m, 53)); // exact: 53-bit mantissa
        int shift = e - 53;
        if (shift >= 0) {
            if (shift > 73) throw ResourceError("double too large for 128-bit rational");
            return Rat(checked_mul(static_cast<i128>(p), i128(1) << shift), 1);
        }
        if (-shift > 126) throw ResourceError("double too small for 128-bit rational");
        return Rat(p, i128(1) << (-shift));
    }

    // "p/q", "3", "0.25", "2.5e-3" -> exact rational. Anything else: DomainError.
    static Rat parse(std::string_view s);

    double to_double() const {
        // Split to avoid double rounding of huge num/den: long double has a 64-bit
        // mantissa, plenty for any value that survives desk-scale arithmetic.
        return static_cast<double>(static_cast<long double>(num_) /
                                   static_cast<long double>(den_));
    }

    long double to_long_double() const {
        return static_cast<long double>(num_) / static_cast<long double>(den_);
    }

    bool is_zero() const { return num_ == 0; }
    bool is_integer() const { return den_ == 1; }
    int sign() const { return num_ > 0 ? 1 : (num_ < 0 ? -1 : 0); }

    Rat operator-() const { return Rat(-num_, den_, already_reduced{}); }

    friend Rat operator+(const Rat& a, const Rat& b) {
        i128 g = gcd128(a.den_, b.den_);
        i128 bd = b.den_ / g;
        i128 n = checked_add(checked_mul(a.num_, bd), checked_mul(b.num_, a.den_ / g));
        return Rat(n, checked_mul(a.den_, bd));
    }
    friend Rat operator-(const Rat& a, const Rat& b) { return a + (-b); }
    friend Rat operator*(const Rat& a, const Rat& b) {
        // Cross-reduce before multiplying to keep intermediates small.
        i128 g1 = gcd128(a.num_, b.den_), g2 = gcd128(b.num_, a.den_);
        return Rat(checked_mul(a.num_ / g1, b.num_ / g2),
                   checked_mul(a.den_ / g2, b.den_ / g1), already_reduced{});
    }
    friend Rat operator/(const Rat& a, const Rat& b) {
        if (b.num_ == 0) throw DomainError("rational division by zero");
        i128 g1 = gcd128(a.num_, b.num_), g2 = gcd128(b.den_, a.den_);
        Rat r(checked_mul(a.num_ / g1, b.den_ / g2),
              checked_mul(a.den_ / g2, b.num_ / g1), already_reduced{});
        if (r.den_ < 0) { r.num_ = -r.num_; r.den_ = -r.den_; }
        return r;
    }

    friend bool operator==(const Rat& a, const Rat& b) {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }
    friend bool operator!=(const Rat& a, const Rat& b) { return !(a == b); }
    friend bool operator<(const Rat& a, const Rat& b) {
        return checked_mul(a.num_, b.den_) < checked_mul(b.num_, a.den_);
    }
    friend bool operator>(const Rat& a, const Rat& b) { return b < a; }
    friend bool operator<=(const Rat& a, const Rat& b) { return !(b < a); }
    friend bool operator>=(const Rat& a, const Rat& b) { return !(a < b); }

    i128 floor() const { return floor_div(num_, den_); }
    i128 ceil() const { return ceil_div(num_, den_); }

    // Distance to the nearest integer, ||.|| in the usual notation.
    Rat dist_to_nearest_int() const {
        i128 r = num_ % den_;
        if (r < 0) r += den_;
        i128 d = r <= den_ - r ? r : den_ - r;
        return Rat(d, den_);
    }

    std::string str() const {
        if (den_ == 1) return to_string_i128(num_);
        return to_string_i128(num_) + "/" + to_string_i128(den_);
    }

private:
    struct already_reduced {};
    Rat(i128 num, i128 den, already_reduced) : num_(num), den_(den) {}

    void normalize() {
        if (den_ == 0) throw DomainError("rational with zero denominator");
        if (den_ < 0) { num_ = -num_; den_ = -den_; }
        i128 g = gcd128(num_, den_);
        if (g > 1) { num_ /= g; den_ /= g; }
        if (num_ == 0) den_ = 1;
    }

    i128 num_;
    i128 den_;
};

inline Rat Rat::parse(std::string_view s) {
    auto fail = [&] { throw DomainError("cannot parse rational literal '" + std::string(s) + "'"); };
    if (s.empty()) fail();
    size_t i = 0;
    int sign = 1;
    if (s[i] == '+' || s[i] == '-') { sign = s[i] == '-' ? -1 : 1; ++i; }
    if (i >= s.size()) fail();

    auto read_digits = [&](i128& out) -> int {
        int n = 0;
        while (i < s.size() && s[i] >= '0' && s[i] <= '9') {
            out = checked_add(checked_mul(out, 10), s[i] - '0');
            ++i;
            ++n;
        }
        return n;
    };

    i128 intpart = 0;
    int nint = read_digits(intpart);

    if (i < s.size() && s[i] == '/') { // p/q form
        ++i;
        i128 q = 0;
        if (nint == 0 || read_digits(q) == 0 || i != s.size() || q == 0) fail();
        return Rat(sign * intpart, q);
    }

    i128 mantissa = intpart;
    int frac_digits = 0;
    if (i < s.size() && s[i] == '.') {
        ++i;
        size_t before = i;
        read_digits(mantissa);
        frac_digits = static_cast<int>(i - before);
        if (nint == 0 && frac_digits == 0) fail();
    } else if (nint == 0) {
        fail();
    }

    long long exp10 = 0;
    if (i < s.size() && (s[i] == 'e' || s[i] == 'E')) {
        ++i;
        int esign = 1;
        if (i < s.size() && (s[i] == '+' || s[i] == '-')) { esign = s[i] == '-' ? -1 : 1; ++i; }
        i128 e = 0;
        if (read_digits(e) == 0 || e > 100) fail();
        exp10 = esign * static_cast<long long>(e);
    }
    if (i != s.size()) fail();

    long long net = exp10 - frac_digits; // value = mantissa * 10^net
    if (net > 37 || net < -37) throw ResourceError("rational literal exceeds 128-bit range");
    i128 p10 = 1;
    for (long long k = 0; k < std::llabs(net); ++k) p10 = checked_mul(p10, 10);
    if (net >= 0) return Rat(checked_mul(sign * mantissa, p10), 1);
    return Rat(sign * mantissa, p10);
}

} // namespace nearcurve
