#include "psprod/modular.hpp"

#include <numeric>
#include <string>

#include "psprod/errors.hpp"

namespace psprod {

bool ModulusContext::coprime(std::uint64_t n) const {
    for (std::uint64_t p : prime_divisors)
        if (n % p == 0)
            return false;
    return true;
}

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t q) {
    return static_cast<std::uint64_t>(
        static_cast<unsigned __int128>(a) * b % q);
}

std::uint64_t mod_inverse(std::uint64_t x, std::uint64_t q) {
    if (q == 0)
        throw Error("mod_inverse: modulus 0");
    if (q == 1)
        return 0;
    std::int64_t r0 = static_cast<std::int64_t>(q);
    std::int64_t r1 = static_cast<std::int64_t>(x % q);
    std::int64_t t0 = 0, t1 = 1;
    while (r1 != 0) {
        std::int64_t k = r0 / r1;
        std::int64_t r2 = r0 - k * r1;
        std::int64_t t2 = t0 - k * t1;
        r0 = r1; r1 = r2;
        t0 = t1; t1 = t2;
    }
    if (r0 != 1)
        throw NoInverseError("mod_inverse: gcd(" + std::to_string(x) + ", " +
                             std::to_string(q) + ") = " + std::to_string(r0));
    if (t0 < 0)
        t0 += static_cast<std::int64_t>(q);
    return static_cast<std::uint64_t>(t0);
}

ModulusContext build_modulus_context(std::uint64_t q) {
    if (q == 0)
        throw Error("build_modulus_context: modulus 0");
    ModulusContext ctx;
    ctx.q = q;
    ctx.phi = 1;
    ctx.tau = 1;
    std::uint64_t n = q;
    for (std::uint64_t d = 2; d * d <= n; d += (d == 2 ? 1 : 2)) {
        if (n % d != 0) continue;
        std::uint64_t e = 0, pe = 1;
        while (n % d == 0) {
            n /= d;
            ++e;
            pe *= d;
        }
        ctx.prime_divisors.push_back(d);
        ctx.phi *= pe / d * (d - 1);
        ctx.tau *= e + 1;
    }
    if (n > 1) {
        ctx.prime_divisors.push_back(n);
        ctx.phi *= n - 1;
        ctx.tau *= 2;
    }
    return ctx;
}

std::vector<std::uint64_t> reduced_residues(const ModulusContext& ctx) {
    std::vector<std::uint64_t> out;
    out.reserve(ctx.phi);
    for (std::uint64_t a = 1; a <= ctx.q; ++a)
        if (ctx.coprime(a))
            out.push_back(a);
    return out;
}

} // namespace psprod
