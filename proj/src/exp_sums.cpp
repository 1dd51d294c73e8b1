#include "psprod/exp_sums.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>
#include <vector>

#include "psprod/errors.hpp"

namespace psprod {

namespace {

constexpr double kTwoPi = 2.0 * 3.14159265358979323846;
constexpr std::uint64_t kCompensatedThreshold = 1000000;

// Kahan-compensated accumulator for one real component.
struct Compensated {
    double sum = 0.0, c = 0.0;
    void add(double v) {
        double y = v - c;
        double t = sum + y;
        c = (t - sum) - y;
        sum = t;
    }
};

// sum over the inverse multiset of e((a * inv mod q) / q). a need not be
// reduced (Parseval sums over all residues).
std::complex<double> phase_sum(std::uint64_t a, std::uint64_t q,
                               const std::vector<std::uint32_t>& invs) {
    std::uint64_t a_mod = a % q;
    if (invs.size() > kCompensatedThreshold) {
        Compensated re, im;
        for (std::uint32_t inv : invs) {
            double t = kTwoPi * static_cast<double>(mulmod(a_mod, inv, q)) /
                       static_cast<double>(q);
            re.add(std::cos(t));
            im.add(std::sin(t));
        }
        return {re.sum, im.sum};
    }
    double re = 0.0, im = 0.0;
    for (std::uint32_t inv : invs) {
        double t = kTwoPi * static_cast<double>(mulmod(a_mod, inv, q)) /
                   static_cast<double>(q);
        re += std::cos(t);
        im += std::sin(t);
    }
    return {re, im};
}

} // namespace

KloostermanValue kloosterman_prime_sum(std::uint64_t a, std::uint64_t q,
                                       std::uint64_t x, const SieveTables& tables,
                                       const RegimeConfig& cfg) {
    if (q == 0)
        throw Error("kloosterman_prime_sum: modulus 0");
    if (a < 1 || a > q || std::gcd(a, q) != 1)
        throw InvalidResidueError("kloosterman_prime_sum: residue " +
                                  std::to_string(a) + " not reduced mod " +
                                  std::to_string(q));
    if (x < 2)
        throw Error("kloosterman_prime_sum: x must be >= 2");

    auto invs = inverse_residues(q, x, tables);
    KloostermanValue out;
    out.a = a;
    out.q = q;
    out.x = x;
    out.value = phase_sum(a, q, invs);
    out.modulus_abs = std::abs(out.value);
    out.trivial_bound = static_cast<double>(invs.size());
    if (q >= 2)
        out.regime_bound = bound_B(q, x, cfg);
    return out;
}

double ParsevalCheck::relative_gap() const {
    if (rhs == 0.0)
        return std::abs(lhs);
    return std::abs(lhs - rhs) / rhs;
}

ParsevalCheck parseval_check(std::uint64_t q, std::uint64_t x,
                             const SieveTables& tables) {
    if (q == 0)
        throw Error("parseval_check: modulus 0");
    if (x < 2)
        throw Error("parseval_check: x must be >= 2");
    auto invs = inverse_residues(q, x, tables);

    ParsevalCheck out;
    for (std::uint64_t a = 0; a < q; ++a) {
        std::complex<double> s = phase_sum(a, q, invs);
        out.lhs += std::norm(s);
    }
    std::vector<std::uint64_t> hist(q, 0);
    for (std::uint32_t inv : invs)
        ++hist[inv];
    std::uint64_t pairs = 0;
    for (std::uint64_t h : hist)
        pairs += h * h;
    out.rhs = static_cast<double>(q) * static_cast<double>(pairs);
    return out;
}

Discrepancy inverse_residue_discrepancy(std::uint64_t a, std::uint64_t q,
                                        std::uint64_t P, const SieveTables& tables) {
    if (q == 0)
        throw Error("inverse_residue_discrepancy: modulus 0");
    if (a < 1 || a > q || std::gcd(a, q) != 1)
        throw InvalidResidueError("inverse_residue_discrepancy: residue not reduced");
    auto invs = inverse_residues(q, P, tables);
    if (invs.empty())
        throw EmptySequenceError("inverse_residue_discrepancy: no primes <= " +
                                 std::to_string(P) + " coprime to " +
                                 std::to_string(q));

    std::uint64_t a_mod = a % q;
    std::vector<double> us;
    us.reserve(invs.size());
    for (std::uint32_t inv : invs)
        us.push_back(static_cast<double>(mulmod(a_mod, inv, q)) /
                     static_cast<double>(q));
    std::sort(us.begin(), us.end());

    // star discrepancy of a sorted sample: sup over anchored intervals is
    // attained at the jump points
    double n = static_cast<double>(us.size());
    double d = 0.0;
    for (std::size_t i = 0; i < us.size(); ++i) {
        double hi = (static_cast<double>(i) + 1.0) / n - us[i];
        double lo = us[i] - static_cast<double>(i) / n;
        d = std::max(d, std::max(hi, lo));
    }

    Discrepancy out;
    out.value = d;
    out.points = invs.size();
    out.degenerate = q == 1;
    return out;
}

double interval_count_error(const ProblemInstance& inst, const SieveTables& tables) {
    ModulusContext ctx = build_modulus_context(inst.q);
    std::uint64_t cpa = count_pairs_all(inst, tables);
    std::uint64_t nq = count_N_q(inst.P, inst.S, ctx, tables);
    unsigned __int128 lhs = static_cast<unsigned __int128>(cpa) * inst.q;
    unsigned __int128 diff = lhs >= nq ? lhs - nq : nq - lhs;
    return static_cast<double>(diff) / static_cast<double>(inst.q);
}

} // namespace psprod
