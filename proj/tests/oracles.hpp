#pragma once

// Brute-force reference implementations used only by the tests. Everything
// here goes through trial division or literal double loops so that expected
// values are derived independently of the library's sieves and bucketing.

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <vector>

namespace oracle {

inline bool is_prime(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

inline bool is_squarefree(std::uint64_t n) {
    if (n == 0) return false;
    for (std::uint64_t d = 2; d * d <= n; ++d) {
        if (n % d != 0) continue;
        n /= d;
        if (n % d == 0) return false;
    }
    return true;
}

inline int mobius(std::uint64_t n) {
    int sign = 1;
    for (std::uint64_t d = 2; d * d <= n; ++d) {
        if (n % d != 0) continue;
        n /= d;
        if (n % d == 0) return 0;
        sign = -sign;
    }
    if (n > 1) sign = -sign;
    return sign;
}

inline std::vector<std::uint64_t> primes_upto(std::uint64_t n) {
    std::vector<std::uint64_t> out;
    for (std::uint64_t k = 2; k <= n; ++k)
        if (is_prime(k)) out.push_back(k);
    return out;
}

inline std::uint64_t phi(std::uint64_t q) {
    std::uint64_t n = 0;
    for (std::uint64_t a = 1; a <= q; ++a)
        if (std::gcd(a, q) == 1) ++n;
    return n;
}

inline std::uint64_t tau(std::uint64_t q) {
    std::uint64_t n = 0;
    for (std::uint64_t d = 1; d <= q; ++d)
        if (q % d == 0) ++n;
    return n;
}

// Literal double loop over (p, s).
inline std::uint64_t count_pairs(std::uint64_t a, std::uint64_t q, std::uint64_t P,
                                 std::uint64_t S, bool squarefree_only) {
    std::uint64_t total = 0;
    for (std::uint64_t p = 2; p <= P; ++p) {
        if (!is_prime(p) || std::gcd(p, q) != 1) continue;
        for (std::uint64_t s = 1; s <= S; ++s) {
            if (std::gcd(s, q) != 1) continue;
            if (squarefree_only && !is_squarefree(s)) continue;
            if ((p % q) * (s % q) % q == a % q) ++total;
        }
    }
    return total;
}

inline std::uint64_t pi_q(std::uint64_t P, std::uint64_t q) {
    std::uint64_t n = 0;
    for (std::uint64_t p = 2; p <= P; ++p)
        if (is_prime(p) && std::gcd(p, q) == 1) ++n;
    return n;
}

inline std::uint64_t s_q(std::uint64_t S, std::uint64_t q) {
    std::uint64_t n = 0;
    for (std::uint64_t s = 1; s <= S; ++s)
        if (is_squarefree(s) && std::gcd(s, q) == 1) ++n;
    return n;
}

// Star discrepancy sup over t in (0, 1] of |#{u_i < t}/N - t|, scanning the
// one-sided limits at every sample value (where the sup is attained).
inline double star_discrepancy(std::vector<double> us) {
    std::sort(us.begin(), us.end());
    double n = static_cast<double>(us.size());
    double best = 0.0;
    for (double v : us) {
        double below = static_cast<double>(
            std::lower_bound(us.begin(), us.end(), v) - us.begin());
        double at_or_below = static_cast<double>(
            std::upper_bound(us.begin(), us.end(), v) - us.begin());
        best = std::max(best, std::abs(below / n - v));
        best = std::max(best, std::abs(at_or_below / n - v));
    }
    return best;
}

} // namespace oracle
