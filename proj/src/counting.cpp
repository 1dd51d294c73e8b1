#include "psprod/counting.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "psprod/errors.hpp"

namespace psprod {

namespace {

void require_tables(const SieveTables& tables, std::uint64_t need, const char* who) {
    if (tables.limit < need)
        throw Error(std::string(who) + ": sieve limit " + std::to_string(tables.limit) +
                    " below required " + std::to_string(need));
}

// Per-class counts of 1 <= s <= S with s % q == r. Classes not coprime to q
// stay zero; they can never match a reduced target residue.
std::vector<std::uint32_t> residue_histogram(std::uint64_t q, std::uint64_t S,
                                             const SieveTables& tables,
                                             bool squarefree_only) {
    if (S / q + 2 > 0xFFFFFFFFull)
        throw CapacityError("residue_histogram: per-class count would overflow");
    std::vector<char> coprime_class(q, 1);
    std::uint64_t n = q;
    for (std::uint64_t d = 2; d * d <= n; ++d) {
        if (n % d != 0) continue;
        while (n % d == 0) n /= d;
        for (std::uint64_t m = 0; m < q; m += d) coprime_class[m] = 0;
    }
    if (n > 1)
        for (std::uint64_t m = 0; m < q; m += n) coprime_class[m] = 0;

    std::vector<std::uint32_t> hist(q, 0);
    std::uint64_t r = 1 % q;
    for (std::uint64_t s = 1; s <= S; ++s) {
        if (coprime_class[r] && (!squarefree_only || tables.squarefree[s]))
            ++hist[r];
        if (++r == q) r = 0;
    }
    return hist;
}

std::uint64_t count_with_histogram(const ProblemInstance& inst,
                                   const SieveTables& tables,
                                   bool squarefree_only) {
    auto hist = residue_histogram(inst.q, inst.S, tables, squarefree_only);
    auto invs = inverse_residues(inst.q, inst.P, tables);
    std::uint64_t a_mod = inst.a % inst.q;
    std::uint64_t total = 0;
    for (std::uint32_t inv : invs)
        total += hist[mulmod(a_mod, inv, inst.q)];
    return total;
}

} // namespace

ProblemInstance make_instance(std::uint64_t a, std::uint64_t q,
                              std::uint64_t P, std::uint64_t S) {
    if (q == 0)
        throw Error("make_instance: modulus 0");
    if (a < 1 || a > q)
        throw InvalidResidueError("make_instance: residue " + std::to_string(a) +
                                  " outside [1, " + std::to_string(q) + "]");
    if (std::gcd(a, q) != 1)
        throw InvalidResidueError("make_instance: gcd(" + std::to_string(a) + ", " +
                                  std::to_string(q) + ") > 1");
    if (P < 2)
        throw Error("make_instance: P must be >= 2");
    if (S < 1)
        throw Error("make_instance: S must be >= 1");
    return ProblemInstance{a, q, P, S};
}

std::uint64_t pi_q(std::uint64_t P, const ModulusContext& ctx,
                   const SieveTables& tables) {
    require_tables(tables, P, "pi_q");
    std::uint64_t n = tables.prime_count(P);
    for (std::uint64_t p : ctx.prime_divisors)
        if (p <= P)
            --n;
    return n;
}

std::uint64_t s_q(std::uint64_t S, const ModulusContext& ctx,
                  const SieveTables& tables) {
    require_tables(tables, S, "s_q");
    std::uint64_t n = 0;
    for (std::uint64_t s = 1; s <= S; ++s)
        if (tables.squarefree[s] && ctx.coprime(s))
            ++n;
    return n;
}

std::uint64_t coprime_count(std::uint64_t S, const ModulusContext& ctx) {
    // sum over square-free divisors d of q of mu(d) * floor(S/d)
    std::uint64_t total = 0;
    std::uint64_t minus = 0;
    std::size_t k = ctx.prime_divisors.size();
    for (std::uint64_t mask = 0; mask < (1ull << k); ++mask) {
        std::uint64_t d = 1;
        bool odd = false;
        for (std::size_t i = 0; i < k; ++i)
            if (mask & (1ull << i)) {
                d *= ctx.prime_divisors[i];
                odd = !odd;
            }
        (odd ? minus : total) += S / d;
    }
    return total - minus;
}

std::vector<std::uint32_t> inverse_residues(std::uint64_t q, std::uint64_t P,
                                            const SieveTables& tables) {
    require_tables(tables, P, "inverse_residues");
    std::vector<std::uint32_t> out;
    for (std::uint64_t p : tables.primes) {
        if (p > P) break;
        if (q % p == 0 && q > 1) continue;
        out.push_back(static_cast<std::uint32_t>(mod_inverse(p, q)));
    }
    return out;
}

std::uint64_t count_exact(const ProblemInstance& inst, const SieveTables& tables) {
    require_tables(tables, std::max(inst.P, inst.S), "count_exact");
    return count_with_histogram(inst, tables, /*squarefree_only=*/true);
}

std::uint64_t count_pairs_all(const ProblemInstance& inst, const SieveTables& tables) {
    require_tables(tables, std::max(inst.P, inst.S), "count_pairs_all");
    return count_with_histogram(inst, tables, /*squarefree_only=*/false);
}

std::uint64_t count_N_q(std::uint64_t P, std::uint64_t S,
                        const ModulusContext& ctx, const SieveTables& tables) {
    return pi_q(P, ctx, tables) * coprime_count(S, ctx);
}

MobiusDecomposition count_via_mobius(const ProblemInstance& inst,
                                     const SieveTables& tables,
                                     std::optional<std::uint64_t> D_cap) {
    require_tables(tables, std::max(inst.P, inst.S), "count_via_mobius");
    std::uint64_t dmax =
        static_cast<std::uint64_t>(std::sqrt(static_cast<double>(inst.S)));
    while (dmax > 0 && dmax * dmax > inst.S) --dmax;
    while ((dmax + 1) * (dmax + 1) <= inst.S) ++dmax;
    if (D_cap)
        dmax = std::min(dmax, std::max<std::uint64_t>(*D_cap, 1));

    MobiusDecomposition out;
    out.d_limit = dmax;
    for (std::uint64_t d = 1; d <= dmax; ++d) {
        if (tables.mobius[d] == 0) continue;
        if (std::gcd(d, inst.q) != 1) continue;
        std::uint64_t inv = mod_inverse(d, inst.q);
        std::uint64_t ad = mulmod(mulmod(inv, inv, inst.q), inst.a % inst.q, inst.q);
        if (inst.q == 1) ad = 1;  // canonical residue for the trivial modulus
        ProblemInstance sub{ad, inst.q, inst.P, inst.S / (d * d)};
        std::uint64_t c = count_pairs_all(sub, tables);
        out.value += static_cast<std::int64_t>(tables.mobius[d]) *
                     static_cast<std::int64_t>(c);
    }
    return out;
}

std::uint64_t sum_over_residues(std::uint64_t q, std::uint64_t P,
                                std::uint64_t S, const SieveTables& tables) {
    require_tables(tables, std::max(P, S), "sum_over_residues");
    ModulusContext ctx = build_modulus_context(q);
    auto hist = residue_histogram(q, S, tables, /*squarefree_only=*/true);
    auto invs = inverse_residues(q, P, tables);
    std::uint64_t total = 0;
    for (std::uint64_t a : reduced_residues(ctx)) {
        std::uint64_t a_mod = a % q;
        for (std::uint32_t inv : invs)
            total += hist[mulmod(a_mod, inv, q)];
    }
    return total;
}

} // namespace psprod
