#pragma once

#include <cstdint>
#include <vector>

namespace psprod {

// Arithmetic tables up to a fixed limit, filled by one linear-sieve pass:
// Mobius function, smallest prime factor, square-free indicator and the
// ascending list of primes. Immutable once built.
struct SieveTables {
    std::uint64_t limit = 0;
    std::vector<std::int8_t> mobius;    // mobius[n] for n in [0, limit]; mobius[0] = 0
    std::vector<std::uint32_t> spf;     // smallest prime factor; spf[0] = spf[1] = 0
    std::vector<bool> squarefree;       // squarefree[n] == (mobius[n] != 0), n >= 1
    std::vector<std::uint64_t> primes;  // ascending primes <= limit

    // pi(x): number of primes <= x. Requires x <= limit.
    std::uint64_t prime_count(std::uint64_t x) const;
};

inline constexpr std::uint64_t kDefaultSieveBudget = 2ull << 30;  // bytes

// Builds the tables with a linear (each composite visited once) sieve.
// Throws CapacityError when limit is 0 or the estimated footprint exceeds
// the memory budget.
SieveTables build_sieve(std::uint64_t limit,
                        std::uint64_t memory_budget_bytes = kDefaultSieveBudget);

// Primes in [lo, hi], requiring 2 <= lo <= hi. Memory use is proportional
// to the segment length plus the base primes up to sqrt(hi), which are
// sieved internally.
std::vector<std::uint64_t> segmented_primes(std::uint64_t lo, std::uint64_t hi);

} // namespace psprod
