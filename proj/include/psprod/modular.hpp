#pragma once

#include <cstdint>
#include <vector>

namespace psprod {

// Factorization-derived data for a modulus q >= 1. Immutable once built.
struct ModulusContext {
    std::uint64_t q = 1;
    std::uint64_t phi = 1;                       // Euler totient
    std::uint64_t tau = 1;                       // number of divisors
    std::vector<std::uint64_t> prime_divisors;   // distinct, ascending

    bool coprime(std::uint64_t n) const;
};

// Inverse of x modulo q as an integer in [1, q); by convention 0 when q = 1.
// Throws NoInverseError when gcd(x, q) != 1.
std::uint64_t mod_inverse(std::uint64_t x, std::uint64_t q);

// Factorizes q by trial division. Throws Error for q = 0.
ModulusContext build_modulus_context(std::uint64_t q);

// All residues a in [1, q] with gcd(a, q) = 1; exactly phi(q) values,
// ascending. For q = 1 this is {1}.
std::vector<std::uint64_t> reduced_residues(const ModulusContext& ctx);

// (a * b) mod q without overflow.
std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t q);

} // namespace psprod
