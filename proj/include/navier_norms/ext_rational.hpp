#pragma once

#include <gmpxx.h>

#include <compare>
#include <iosfwd>
#include <string>
#include <string_view>

namespace navier_norms {

/// Exact rational number extended with a single point at +infinity.
///
/// Finite values are kept canonical (lowest terms, positive denominator).
/// Arithmetic follows 1/inf = 0, 1/0 = inf, inf + x = inf; any operation
/// that would need inf - inf, 0 * inf or a negative infinity throws
/// ErrorCode::kUndefinedArithmetic.
class ExtRational {
public:
    ExtRational() = default;
    ExtRational(long value) : value_(value) {}  // NOLINT(google-explicit-constructor)
    ExtRational(long num, long den);
    explicit ExtRational(mpq_class value);

    static ExtRational infinity();

    /// Accepts "inf", "+inf", "∞", integers, "a/b" and plain decimals
    /// ("1.05" -> 21/20, "-2.5e-1" -> -1/4); decimals convert exactly.
    static ExtRational parse(std::string_view text);

    bool is_infinite() const noexcept { return infinite_; }
    bool is_finite() const noexcept { return !infinite_; }
    bool is_zero() const noexcept { return !infinite_ && sgn(value_) == 0; }
    int sign() const noexcept { return infinite_ ? 1 : sgn(value_); }

    /// Requires a finite value.
    const mpq_class& value() const;
    std::string numerator_string() const;    // "1" for +inf
    std::string denominator_string() const;  // "0" for +inf
    double to_double() const;
    std::string to_string() const;  // "p/q", "p" or "inf"

    ExtRational reciprocal() const;

    friend ExtRational operator+(const ExtRational& a, const ExtRational& b);
    friend ExtRational operator-(const ExtRational& a, const ExtRational& b);
    friend ExtRational operator*(const ExtRational& a, const ExtRational& b);
    friend ExtRational operator/(const ExtRational& a, const ExtRational& b);
    ExtRational operator-() const;

    friend bool operator==(const ExtRational& a, const ExtRational& b);
    friend std::strong_ordering operator<=>(const ExtRational& a, const ExtRational& b);

private:
    mpq_class value_{0};
    bool infinite_ = false;
};

std::ostream& operator<<(std::ostream& os, const ExtRational& x);

}  // namespace navier_norms
