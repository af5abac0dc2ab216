// cycles.hpp
//
// Exact rational clock-cycle arithmetic.  Schedule durations mix integer
// merge costs with fractional constants (1.5, 8.4, 1.9), so all time
// accounting is done on normalized int64 fractions and only converted to
// floating point for report-level aggregates.

#ifndef LSCOMP_CYCLES_HPP
#define LSCOMP_CYCLES_HPP

#include <cstdint>
#include <compare>
#include <numeric>
#include <stdexcept>
#include <string>

namespace lscomp {

/// Exact nonneg-or-negative rational number of clock cycles.
/// Invariant: den > 0 and gcd(|num|, den) == 1 (0 is stored as 0/1).
struct Cycles {
    std::int64_t num = 0;
    std::int64_t den = 1;

    constexpr Cycles() = default;
    constexpr Cycles(std::int64_t whole) : num(whole), den(1) {}

    Cycles(std::int64_t n, std::int64_t d) : num(n), den(d) { normalize(); }

    void normalize() {
        if (den == 0) throw std::invalid_argument("Cycles: zero denominator");
        if (den < 0) { num = -num; den = -den; }
        std::int64_t g = std::gcd(num < 0 ? -num : num, den);
        if (g > 1) { num /= g; den /= g; }
        if (num == 0) den = 1;
    }

    friend Cycles operator+(const Cycles& a, const Cycles& b) {
        return Cycles(a.num * b.den + b.num * a.den, a.den * b.den);
    }
    friend Cycles operator-(const Cycles& a, const Cycles& b) {
        return Cycles(a.num * b.den - b.num * a.den, a.den * b.den);
    }
    friend Cycles operator*(const Cycles& a, std::int64_t k) {
        return Cycles(a.num * k, a.den);
    }
    friend Cycles operator*(std::int64_t k, const Cycles& a) { return a * k; }
    Cycles& operator+=(const Cycles& o) { *this = *this + o; return *this; }
    Cycles& operator-=(const Cycles& o) { *this = *this - o; return *this; }

    friend bool operator==(const Cycles& a, const Cycles& b) {
        return a.num == b.num && a.den == b.den;
    }
    friend std::strong_ordering operator<=>(const Cycles& a, const Cycles& b) {
        // Cross-multiplied compare; operands stay far below the int64 range
        // for any schedule this toolkit produces.
        return a.num * b.den <=> b.num * a.den;
    }

    double to_double() const { return double(num) / double(den); }

    /// Smallest integer >= value (final report rounding).
    std::int64_t ceil_int() const {
        std::int64_t q = num / den;
        if (num > 0 && num % den != 0) ++q;
        return q;
    }

    bool is_zero() const { return num == 0; }

    /// Exact decimal rendering.  Every duration in the model is a multiple
    /// of 1/10 cycle (constants 1.5, 8.4, 1.9, 1), but arbitrary
    /// denominators fall back to a fraction string "num/den".
    std::string str() const;

    /// Parse "12", "8.4", "-0.5" into an exact fraction.
    static Cycles parse(const std::string& text);

    static Cycles max(const Cycles& a, const Cycles& b) { return a < b ? b : a; }
};

} // namespace lscomp

#endif
