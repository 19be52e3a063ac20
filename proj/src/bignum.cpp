#include <rlab/bignum.hpp>
#include <rlab/error.hpp>

#include <cmath>

namespace rlab
{
    auto binomial(long n, long k) -> mpz_class
    {
        if (k < 0 || n < 0 || k > n)
            return 0;
        mpz_class result;
        mpz_bin_uiui(result.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
        return result;
    }

    auto binomial_rational(const mpq_class & x, long k) -> mpq_class
    {
        if (k < 0)
            return 0;
        mpq_class result = 1;
        for (long i = 0; i < k; ++i) {
            mpq_class factor = x - i;
            if (factor <= 0)
                return 0;
            result *= factor;
            result /= (i + 1);
        }
        return result;
    }

    auto pow_q(const mpq_class & base, unsigned long exponent) -> mpq_class
    {
        mpz_class num, den;
        mpz_pow_ui(num.get_mpz_t(), base.get_num_mpz_t(), exponent);
        mpz_pow_ui(den.get_mpz_t(), base.get_den_mpz_t(), exponent);
        mpq_class result(num, den);
        result.canonicalize();
        return result;
    }

    auto ceil_q(const mpq_class & x) -> mpz_class
    {
        mpz_class result;
        mpz_cdiv_q(result.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
        return result;
    }

    auto floor_q(const mpq_class & x) -> mpz_class
    {
        mpz_class result;
        mpz_fdiv_q(result.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
        return result;
    }

    auto ceil_root(const mpq_class & value, unsigned long root) -> mpz_class
    {
        if (value <= 0)
            return 0;
        mpz_class lo = 0, hi = 1;
        auto reaches = [&](const mpz_class & x) {
            mpz_class p;
            mpz_pow_ui(p.get_mpz_t(), x.get_mpz_t(), root);
            return mpq_class(p) >= value;
        };
        while (! reaches(hi))
            hi *= 2;
        while (hi - lo > 1) {
            mpz_class mid = (lo + hi) / 2;
            if (reaches(mid))
                hi = mid;
            else
                lo = mid;
        }
        return reaches(lo) ? lo : hi;
    }

    auto to_string_q(const mpq_class & x) -> std::string
    {
        return x.get_str();
    }

    auto to_long(const mpz_class & x) -> long
    {
        require(x.fits_slong_p(), ErrorKind::SizeOverflow, "value " + x.get_str() + " exceeds machine range");
        return x.get_si();
    }

    auto Sqrt2Scaled::times(const Sqrt2Scaled & other) const -> Sqrt2Scaled
    {
        return {coeff * other.coeff, half_exponent + other.half_exponent};
    }

    auto Sqrt2Scaled::times(const mpq_class & factor) const -> Sqrt2Scaled
    {
        return {coeff * factor, half_exponent};
    }

    auto Sqrt2Scaled::power(unsigned long exponent) const -> Sqrt2Scaled
    {
        return {pow_q(coeff, exponent), half_exponent * long(exponent)};
    }

    auto Sqrt2Scaled::approx() const -> double
    {
        return coeff.get_d() * std::pow(2.0, double(half_exponent) / 2.0);
    }

    auto Sqrt2Scaled::to_string() const -> std::string
    {
        if (half_exponent == 0)
            return coeff.get_str();
        return coeff.get_str() + "*2^(" + std::to_string(half_exponent) + "/2)";
    }

    namespace
    {
        // compares a >= b where a = qa * 2^(ha/2), b = qb * 2^(hb/2), all coefficients non-negative
        auto ge(const mpq_class & qa, long ha, const mpq_class & qb, long hb) -> bool
        {
            // square both sides: qa^2 2^ha >= qb^2 2^hb
            mpq_class lhs = qa * qa, rhs = qb * qb;
            long shift = ha - hb;
            if (shift >= 0)
                mpq_mul_2exp(lhs.get_mpq_t(), lhs.get_mpq_t(), static_cast<unsigned long>(shift));
            else
                mpq_mul_2exp(rhs.get_mpq_t(), rhs.get_mpq_t(), static_cast<unsigned long>(-shift));
            return lhs >= rhs;
        }
    }

    auto at_most(const mpz_class & count, const Sqrt2Scaled & value) -> bool
    {
        return ge(value.coeff, value.half_exponent, mpq_class(count), 0);
    }

    auto at_least(const Sqrt2Scaled & value, const mpq_class & threshold) -> bool
    {
        return ge(value.coeff, value.half_exponent, threshold, 0);
    }
}
