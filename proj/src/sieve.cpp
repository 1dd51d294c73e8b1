#include "psprod/sieve.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "psprod/errors.hpp"

namespace psprod {

std::uint64_t SieveTables::prime_count(std::uint64_t x) const {
    if (x > limit)
        throw Error("prime_count(" + std::to_string(x) + ") beyond sieve limit " +
                    std::to_string(limit));
    auto it = std::upper_bound(primes.begin(), primes.end(), x);
    return static_cast<std::uint64_t>(it - primes.begin());
}

namespace {

// mobius + spf + primes: ~5.2 bytes per entry plus the prime list.
std::uint64_t estimated_bytes(std::uint64_t limit) {
    double n = static_cast<double>(limit) + 1.0;
    double pi_est = limit < 17 ? 8.0 : 1.3 * n / std::log(n);
    return static_cast<std::uint64_t>(n * (1.0 + 4.0 + 0.125) + 8.0 * pi_est);
}

} // namespace

SieveTables build_sieve(std::uint64_t limit, std::uint64_t memory_budget_bytes) {
    if (limit == 0)
        throw CapacityError("build_sieve: limit must be at least 1");
    if (estimated_bytes(limit) > memory_budget_bytes)
        throw CapacityError("build_sieve: limit " + std::to_string(limit) +
                            " needs ~" + std::to_string(estimated_bytes(limit)) +
                            " bytes, budget is " + std::to_string(memory_budget_bytes));
    if (limit > 0xFFFFFFFFull)
        throw CapacityError("build_sieve: limit beyond 32-bit spf table");

    SieveTables t;
    t.limit = limit;
    t.mobius.assign(limit + 1, 0);
    t.spf.assign(limit + 1, 0);
    t.squarefree.assign(limit + 1, false);
    t.mobius[1] = 1;

    for (std::uint64_t i = 2; i <= limit; ++i) {
        if (t.spf[i] == 0) {
            t.spf[i] = static_cast<std::uint32_t>(i);
            t.primes.push_back(i);
            t.mobius[i] = -1;
        }
        for (std::uint64_t p : t.primes) {
            if (p > t.spf[i] || i * p > limit)
                break;
            t.spf[i * p] = static_cast<std::uint32_t>(p);
            t.mobius[i * p] = (p == t.spf[i]) ? 0 : static_cast<std::int8_t>(-t.mobius[i]);
        }
    }
    for (std::uint64_t n = 1; n <= limit; ++n)
        t.squarefree[n] = t.mobius[n] != 0;
    return t;
}

std::vector<std::uint64_t> segmented_primes(std::uint64_t lo, std::uint64_t hi) {
    if (lo < 2 || lo > hi)
        throw Error("segmented_primes: need 2 <= lo <= hi, got [" +
                    std::to_string(lo) + ", " + std::to_string(hi) + "]");

    // Base primes up to sqrt(hi) by a plain odd sieve.
    std::uint64_t root = static_cast<std::uint64_t>(std::sqrt(static_cast<double>(hi)));
    while (root * root < hi) ++root;
    while (root > 0 && (root - 1) * (root - 1) >= hi) --root;
    std::vector<std::uint64_t> base;
    {
        std::vector<bool> comp(root + 1, false);
        for (std::uint64_t i = 2; i <= root; ++i) {
            if (comp[i]) continue;
            base.push_back(i);
            for (std::uint64_t j = i * i; j <= root; j += i)
                comp[j] = true;
        }
    }

    std::vector<std::uint64_t> out;
    constexpr std::uint64_t kSegment = 1u << 20;
    std::vector<bool> comp;
    for (std::uint64_t seg_lo = lo; seg_lo <= hi;) {
        std::uint64_t seg_hi = std::min(hi, seg_lo + kSegment - 1);
        comp.assign(seg_hi - seg_lo + 1, false);
        for (std::uint64_t p : base) {
            if (p * p > seg_hi) break;
            std::uint64_t start = std::max(p * p, (seg_lo + p - 1) / p * p);
            for (std::uint64_t m = start; m <= seg_hi; m += p)
                comp[m - seg_lo] = true;
        }
        for (std::uint64_t n = seg_lo; n <= seg_hi; ++n)
            if (n >= 2 && !comp[n - seg_lo])
                out.push_back(n);
        if (seg_hi == hi) break;
        seg_lo = seg_hi + 1;
    }
    return out;
}

} // namespace psprod
