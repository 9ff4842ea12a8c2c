#pragma once

#include <gmpxx.h>

#include <stdexcept>
#include <string>
#include <string_view>

namespace sidorenko
{
    /// Arbitrary-precision integer; homomorphism counts are always non-negative.
    using BigCount = mpz_class;

    /// Exact rational, kept in canonical form (gcd(num, den) = 1, den > 0).
    using Rational = mpq_class;

    class NumericError : public std::runtime_error
    {
    public:
        using std::runtime_error::runtime_error;
    };

    /// Parses "p/q" or "p". Rejects floats, empty strings and zero denominators.
    auto parse_rational(std::string_view text) -> Rational;

    /// Always "p/q", including "0/1" and "3/1".
    auto to_fraction_string(const Rational & r) -> std::string;

    auto to_decimal_string(const BigCount & c) -> std::string;

    auto pow(const Rational & base, unsigned long exponent) -> Rational;
    auto pow(const BigCount & base, unsigned long exponent) -> BigCount;

    /// Smallest integer >= r.
    auto ceil(const Rational & r) -> BigCount;
}
