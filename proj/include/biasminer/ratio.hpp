#pragma once

#include <cmath>
#include <cstdint>

namespace biasminer {

// Exact test of num/den >= threshold for counts num, den <= 2^32 (den > 0)
// and a finite non-negative double threshold. The threshold is decomposed
// into its exact binary mantissa and exponent so the comparison never
// rounds; this keeps confidence cuts reproducible and free of the usual
// 0.2*5-vs-1 floating-point ambiguity.
inline bool ratio_at_least(std::uint64_t num, std::uint64_t den, double threshold) {
    if (threshold <= 0.0) return true;
    if (den == 0) return false;
    if (threshold > 4294967296.0) return false;  // ratio is at most num <= 2^32

    int exp = 0;
    const double mant = std::frexp(threshold, &exp);  // threshold = mant * 2^exp, mant in [0.5, 1)
    const auto mant_int = static_cast<std::uint64_t>(std::ldexp(mant, 53));  // exact, 53 bits
    const int shift = 53 - exp;  // threshold = mant_int * 2^-shift; exp <= 33 so shift >= 20

    // num/den >= mant_int * 2^-shift  <=>  num * 2^shift >= mant_int * den.
    // A shift too large for 128 bits means threshold < 2^-42, where
    // threshold * den < 2^-10, so any num >= 1 clears it.
    if (shift > 95) return num >= 1;
    const unsigned __int128 lhs = static_cast<unsigned __int128>(num) << shift;
    const unsigned __int128 rhs =
        static_cast<unsigned __int128>(mant_int) * static_cast<unsigned __int128>(den);
    return lhs >= rhs;
}

// Smallest integer c with c >= fraction * n (exact), used to resolve
// relative support thresholds.
inline std::uint64_t exact_ceil_fraction(double fraction, std::uint64_t n) {
    if (n == 0) return 0;
    const double guess = fraction * static_cast<double>(n);
    std::uint64_t c = guess < 2.0 ? 0 : static_cast<std::uint64_t>(guess) - 2;
    while (!ratio_at_least(c, n, fraction)) ++c;
    return c;
}

}  // namespace biasminer
