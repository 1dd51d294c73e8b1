#pragma once

#include <cstdint>
#include <optional>

#include "psprod/modular.hpp"
#include "psprod/sieve.hpp"

namespace psprod {

// One counting problem: how many pairs (p, s) with p <= P prime, s <= S
// square-free, gcd(ps, q) = 1 and p*s = a (mod q). The residue must be
// reduced: 1 <= a <= q and gcd(a, q) = 1.
struct ProblemInstance {
    std::uint64_t a = 1;
    std::uint64_t q = 1;
    std::uint64_t P = 2;
    std::uint64_t S = 1;
};

// Validates the instance (reduced residue, P >= 2, S >= 1).
// Throws InvalidResidueError / Error on violations.
ProblemInstance make_instance(std::uint64_t a, std::uint64_t q,
                              std::uint64_t P, std::uint64_t S);

// Number of primes p <= P with gcd(p, q) = 1. Requires tables.limit >= P.
std::uint64_t pi_q(std::uint64_t P, const ModulusContext& ctx,
                   const SieveTables& tables);

// Number of square-free s <= S with gcd(s, q) = 1. Requires tables.limit >= S.
std::uint64_t s_q(std::uint64_t S, const ModulusContext& ctx,
                  const SieveTables& tables);

// #{n <= S : gcd(n, q) = 1}, exact via inclusion-exclusion over the prime
// divisors of q.
std::uint64_t coprime_count(std::uint64_t S, const ModulusContext& ctx);

// The multiset {inverse of p mod q : p <= P prime, gcd(p, q) = 1}, in
// ascending order of p. All values lie in [0, q).
std::vector<std::uint32_t> inverse_residues(std::uint64_t q, std::uint64_t P,
                                            const SieveTables& tables);

// Exact count for the instance, bucketing s by residue class:
// O(S + pi(P) log q) time, O(q) space.
std::uint64_t count_exact(const ProblemInstance& inst, const SieveTables& tables);

// Same congruence count with the square-free condition on s dropped.
std::uint64_t count_pairs_all(const ProblemInstance& inst, const SieveTables& tables);

// #{(p, s) : p <= P prime, s <= S, gcd(ps, q) = 1} with no congruence
// condition; equals pi_q(P) * coprime_count(S).
std::uint64_t count_N_q(std::uint64_t P, std::uint64_t S,
                        const ModulusContext& ctx, const SieveTables& tables);

// Partial sums of the square-free expansion
//   count_exact(a,q,P,S) = sum_{d <= sqrt(S), gcd(d,q)=1} mu(d) *
//                          count_pairs_all(a*d^{-2} mod q, q, P, S/d^2).
// With no cap the sum runs to floor(sqrt(S)) and value equals count_exact;
// truncated sums are signed.
struct MobiusDecomposition {
    std::int64_t value = 0;
    std::uint64_t d_limit = 0;  // largest d included
};
MobiusDecomposition count_via_mobius(const ProblemInstance& inst,
                                     const SieveTables& tables,
                                     std::optional<std::uint64_t> D_cap = {});

// sum over all reduced residues a of count_exact(a,q,P,S); equals
// pi_q(P) * s_q(S) since every pair lands in exactly one class.
std::uint64_t sum_over_residues(std::uint64_t q, std::uint64_t P,
                                std::uint64_t S, const SieveTables& tables);

} // namespace psprod
