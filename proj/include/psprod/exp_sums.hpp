#pragma once

#include <complex>
#include <cstdint>
#include <optional>

#include "psprod/asymptotics.hpp"
#include "psprod/counting.hpp"
#include "psprod/sieve.hpp"

namespace psprod {

// S_q(a; x) = sum over primes p <= x with gcd(p, q) = 1 of
// e(a * pinv / q), where pinv is the inverse of p mod q and
// e(t) = exp(2 pi i t). Phases come from the integer residue
// (a * pinv) mod q, never from floating-point division of large products.
struct KloostermanValue {
    std::uint64_t a = 1;
    std::uint64_t q = 1;
    std::uint64_t x = 2;
    std::complex<double> value{0.0, 0.0};
    double modulus_abs = 0.0;
    double trivial_bound = 0.0;               // pi_q(x), number of terms
    std::optional<double> regime_bound;       // bound_B(q, x); empty for q = 1
};

// Requires a reduced residue a mod q, x >= 2, tables.limit >= x.
// Plain summation up to 10^6 terms, compensated summation beyond.
KloostermanValue kloosterman_prime_sum(std::uint64_t a, std::uint64_t q,
                                       std::uint64_t x, const SieveTables& tables,
                                       const RegimeConfig& cfg = {});

// Parseval consistency: summing |S_q(a; x)|^2 over ALL residues a mod q
// (including non-reduced a) must equal q times the number of prime pairs
// (p1, p2) with equal inverses mod q.
struct ParsevalCheck {
    double lhs = 0.0;  // sum of squared moduli, computed from the phases
    double rhs = 0.0;  // q * #{(p1, p2) : p1inv = p2inv mod q}, exact
    double relative_gap() const;
};
ParsevalCheck parseval_check(std::uint64_t q, std::uint64_t x,
                             const SieveTables& tables);

// Star discrepancy of the points {a * pinv mod q} / q in [0, 1), evaluated
// exactly from the sorted sample. q = 1 degenerates to all points at 0 and
// value 1.0, flagged below.
struct Discrepancy {
    double value = 1.0;          // in [0, 1]
    std::uint64_t points = 0;    // pi_q(P)
    bool degenerate = false;     // q == 1
};
// Throws EmptySequenceError when pi_q(P) = 0.
Discrepancy inverse_residue_discrepancy(std::uint64_t a, std::uint64_t q,
                                        std::uint64_t P, const SieveTables& tables);

// |count_pairs_all(a,q,P,S) - count_N_q(P,S)/q|, computed exactly in
// integers before the final division by q.
double interval_count_error(const ProblemInstance& inst, const SieveTables& tables);

} // namespace psprod
