#pragma once

#include <gmpxx.h>

#include <string>

namespace rlab
{
    auto binomial(long n, long k) -> mpz_class;

    // generalized binomial x(x-1)...(x-k+1)/k! for rational x; zero once a factor goes negative
    auto binomial_rational(const mpq_class & x, long k) -> mpq_class;

    auto pow_q(const mpq_class & base, unsigned long exponent) -> mpq_class;

    auto ceil_q(const mpq_class & x) -> mpz_class;
    auto floor_q(const mpq_class & x) -> mpz_class;

    // smallest integer x >= 0 with x^root >= value
    auto ceil_root(const mpq_class & value, unsigned long root) -> mpz_class;

    auto to_string_q(const mpq_class & x) -> std::string;

    auto to_long(const mpz_class & x) -> long;

    // Value coeff * 2^(half_exponent / 2); keeps powers of 2^{-1/2} exact.
    struct Sqrt2Scaled
    {
        mpq_class coeff{0};
        long half_exponent = 0;

        auto times(const Sqrt2Scaled & other) const -> Sqrt2Scaled;
        auto times(const mpq_class & factor) const -> Sqrt2Scaled;
        auto power(unsigned long exponent) const -> Sqrt2Scaled;
        auto approx() const -> double;
        auto to_string() const -> std::string;
    };

    // exact test count <= value for a non-negative integer count
    auto at_most(const mpz_class & count, const Sqrt2Scaled & value) -> bool;

    // exact test value >= threshold (both non-negative)
    auto at_least(const Sqrt2Scaled & value, const mpq_class & threshold) -> bool;
}
