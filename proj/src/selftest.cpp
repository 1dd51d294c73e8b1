#include "psprod/selftest.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <random>
#include <vector>

#include "psprod/asymptotics.hpp"
#include "psprod/counting.hpp"
#include "psprod/errors.hpp"
#include "psprod/exp_sums.hpp"
#include "psprod/modular.hpp"
#include "psprod/sweep.hpp"

namespace psprod {

namespace {

std::string fmt(const char* pattern, double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), pattern, v);
    return buf;
}

// Factorization fully independent of the sieve tables.
bool squarefree_by_trial_division(std::uint64_t n) {
    for (std::uint64_t d = 2; d * d <= n; ++d) {
        if (n % d != 0) continue;
        n /= d;
        if (n % d == 0) return false;
    }
    return true;
}

bool prime_by_trial_division(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

} // namespace

CheckResult check_squarefree_identity(const SieveTables& tables, std::uint64_t limit) {
    CheckResult res{"squarefree-identity", true, ""};
    limit = std::min(limit, tables.limit);
    // Left side sum_{d^2 | n} mu(d) accumulated sieve-style from the table,
    // right side independent trial-division factorization.
    std::vector<int> acc(limit + 1, 0);
    for (std::uint64_t d = 1; d * d <= limit; ++d) {
        int m = tables.mobius[d];
        if (m == 0) continue;
        for (std::uint64_t n = d * d; n <= limit; n += d * d)
            acc[n] += m;
    }
    std::uint64_t bad = 0;
    for (std::uint64_t n = 1; n <= limit; ++n) {
        int expected = squarefree_by_trial_division(n) ? 1 : 0;
        if (acc[n] != expected || tables.squarefree[n] != (expected == 1)) {
            ++bad;
            if (res.pass) {
                res.pass = false;
                res.detail = "first mismatch at n = " + std::to_string(n);
            }
        }
    }
    if (res.pass)
        res.detail = "n <= " + std::to_string(limit) + ", 0 mismatches";
    else
        res.detail += " (" + std::to_string(bad) + " total)";
    return res;
}

CheckResult check_mobius_divisor_sum(const SieveTables& tables, std::uint64_t limit) {
    CheckResult res{"mobius-divisor-sum", true, ""};
    limit = std::min(limit, tables.limit);
    std::vector<int> acc(limit + 1, 0);
    for (std::uint64_t d = 1; d <= limit; ++d) {
        int m = tables.mobius[d];
        if (m == 0) continue;
        for (std::uint64_t n = d; n <= limit; n += d)
            acc[n] += m;
    }
    for (std::uint64_t n = 1; n <= limit; ++n)
        if (acc[n] != (n == 1 ? 1 : 0)) {
            res.pass = false;
            res.detail = "sum over divisors of " + std::to_string(n) + " is " +
                         std::to_string(acc[n]);
            return res;
        }
    res.detail = "n <= " + std::to_string(limit);
    return res;
}

CheckResult check_segmented_consistency(const SieveTables& tables, std::uint64_t limit) {
    CheckResult res{"segmented-primes", true, ""};
    limit = std::min(limit, tables.limit);
    auto seg = segmented_primes(2, limit);
    std::vector<std::uint64_t> full(tables.primes.begin(),
                                    std::upper_bound(tables.primes.begin(),
                                                     tables.primes.end(), limit));
    if (seg != full) {
        res.pass = false;
        res.detail = "[2, " + std::to_string(limit) + "] disagrees with full sieve";
        return res;
    }
    auto window = segmented_primes(1000000, 1000100);
    for (std::uint64_t n = 1000000; n <= 1000100; ++n) {
        bool in = std::binary_search(window.begin(), window.end(), n);
        if (in != prime_by_trial_division(n)) {
            res.pass = false;
            res.detail = "window disagrees with trial division at " + std::to_string(n);
            return res;
        }
    }
    res.detail = "[2, " + std::to_string(limit) + "] and [1000000, 1000100]";
    return res;
}

CheckResult check_inverse_roundtrip(const SieveTables&) {
    CheckResult res{"mod-inverse", true, ""};
    std::mt19937_64 eng(271828);
    for (int i = 0; i < 2000; ++i) {
        std::uint64_t q = eng() % 100000 + 1;
        std::uint64_t x = eng() % (10 * q) + 1;
        if (std::gcd(x, q) != 1) {
            try {
                mod_inverse(x, q);
                res.pass = false;
                res.detail = "no exception for gcd(" + std::to_string(x) + ", " +
                             std::to_string(q) + ") > 1";
                return res;
            } catch (const NoInverseError&) {
            }
            continue;
        }
        std::uint64_t inv = mod_inverse(x, q);
        if (q == 1) {
            if (inv != 0) {
                res.pass = false;
                res.detail = "q = 1 convention violated";
                return res;
            }
            continue;
        }
        if (inv < 1 || inv >= q || mulmod(x % q, inv, q) != 1) {
            res.pass = false;
            res.detail = "inverse of " + std::to_string(x) + " mod " +
                         std::to_string(q) + " wrong";
            return res;
        }
    }
    res.detail = "2000 random (x, q)";
    return res;
}

CheckResult check_mobius_decomposition(const SieveTables& tables) {
    CheckResult res{"mobius-decomposition", true, ""};
    std::mt19937_64 eng(314159);
    std::vector<ProblemInstance> cases;
    for (int i = 0; i < 50; ++i) {
        std::uint64_t q = eng() % 200 + 1;
        std::uint64_t P = eng() % 1999 + 2;
        std::uint64_t S = eng() % 2000 + 1;
        std::uint64_t a;
        do a = eng() % q + 1; while (std::gcd(a, q) != 1);
        cases.push_back(make_instance(a, q, P, S));
    }
    cases.push_back(make_instance(1, 3, 100, 1));     // S = 1
    cases.push_back(make_instance(1, 1, 2000, 2000)); // q = 1
    cases.push_back(make_instance(198, 199, 500, 500)); // a = q - 1
    for (const auto& inst : cases) {
        auto dec = count_via_mobius(inst, tables);
        std::uint64_t exact = count_exact(inst, tables);
        if (dec.value < 0 || static_cast<std::uint64_t>(dec.value) != exact) {
            res.pass = false;
            res.detail = "a=" + std::to_string(inst.a) + " q=" + std::to_string(inst.q) +
                         " P=" + std::to_string(inst.P) + " S=" + std::to_string(inst.S) +
                         ": decomposition " + std::to_string(dec.value) + " != exact " +
                         std::to_string(exact);
            return res;
        }
    }
    res.detail = std::to_string(cases.size()) + " instances (incl. corners)";
    return res;
}

CheckResult check_partition_identity(const SieveTables& tables) {
    CheckResult res{"partition-identity", true, ""};
    const std::uint64_t P = 2000, S = 2000;
    for (std::uint64_t q = 1; q <= 24; ++q) {
        ModulusContext ctx = build_modulus_context(q);
        std::uint64_t direct = 0;
        for (std::uint64_t a : reduced_residues(ctx))
            direct += count_exact(make_instance(a, q, P, S), tables);
        std::uint64_t expect = pi_q(P, ctx, tables) * s_q(S, ctx, tables);
        std::uint64_t via_op = sum_over_residues(q, P, S, tables);
        if (direct != expect || via_op != expect) {
            res.pass = false;
            res.detail = "q = " + std::to_string(q) + ": " + std::to_string(direct) +
                         " / " + std::to_string(via_op) + " vs " + std::to_string(expect);
            return res;
        }
    }
    res.detail = "q <= 24, P = S = 2000";
    return res;
}

CheckResult check_coprime_pair_remainder(const SieveTables& tables) {
    CheckResult res{"coprime-pair-remainder", true, ""};
    for (std::uint64_t q = 1; q <= 200; ++q) {
        ModulusContext ctx = build_modulus_context(q);
        for (std::uint64_t P : {std::uint64_t{1000}, std::uint64_t{2000}})
            for (std::uint64_t S : {std::uint64_t{1000}, std::uint64_t{2000}}) {
                std::uint64_t nq = count_N_q(P, S, ctx, tables);
                std::uint64_t piq = pi_q(P, ctx, tables);
                // compare q*N_q with phi*pi_q*S exactly in integers
                unsigned __int128 lhs = static_cast<unsigned __int128>(nq) * q;
                unsigned __int128 rhs =
                    static_cast<unsigned __int128>(ctx.phi) * piq * S;
                unsigned __int128 diff = lhs > rhs ? lhs - rhs : rhs - lhs;
                unsigned __int128 bound =
                    static_cast<unsigned __int128>(piq) * ctx.tau * q;
                if (diff > bound) {
                    res.pass = false;
                    res.detail = "q = " + std::to_string(q) +
                                 " P = " + std::to_string(P) +
                                 " S = " + std::to_string(S);
                    return res;
                }
            }
    }
    res.detail = "q <= 200, P,S in {1000, 2000}";
    return res;
}

CheckResult check_squarefree_density(const SieveTables& tables) {
    CheckResult res{"squarefree-density", true, ""};
    double worst = 0.0;
    for (std::uint64_t q : {1, 2, 3, 4, 6, 12}) {
        ModulusContext ctx = build_modulus_context(q);
        for (std::uint64_t S : {std::uint64_t{1000}, std::uint64_t{10000}}) {
            double ratio =
                std::abs(static_cast<double>(s_q(S, ctx, tables)) -
                         predicted_s_q(S, ctx)) /
                std::sqrt(static_cast<double>(S));
            worst = std::max(worst, ratio / (4.0 * static_cast<double>(ctx.tau)));
            if (ratio > 4.0 * static_cast<double>(ctx.tau)) {
                res.pass = false;
                res.detail = "q = " + std::to_string(q) + " S = " + std::to_string(S) +
                             ": ratio " + fmt("%.4f", ratio);
                return res;
            }
        }
    }
    res.detail = "worst ratio/bound = " + fmt("%.4f", worst);
    return res;
}

CheckResult check_kloosterman_bounds(const SieveTables& tables) {
    CheckResult res{"kloosterman-bounds", true, ""};
    const std::uint64_t x = 2000;
    for (std::uint64_t q = 1; q <= 25; ++q) {
        ModulusContext ctx = build_modulus_context(q);
        double scale = std::max(1.0, static_cast<double>(pi_q(x, ctx, tables)));
        for (std::uint64_t a : reduced_residues(ctx)) {
            auto v = kloosterman_prime_sum(a, q, x, tables);
            if (v.modulus_abs > v.trivial_bound * (1.0 + 1e-9)) {
                res.pass = false;
                res.detail = "trivial bound violated at a = " + std::to_string(a) +
                             " q = " + std::to_string(q);
                return res;
            }
            std::uint64_t conj_a = q > 1 ? q - a : 1;
            if (std::gcd(conj_a, q) != 1) continue;
            auto w = kloosterman_prime_sum(conj_a, q, x, tables);
            if (std::abs(w.value - std::conj(v.value)) > 1e-9 * scale) {
                res.pass = false;
                res.detail = "conjugate symmetry violated at a = " +
                             std::to_string(a) + " q = " + std::to_string(q);
                return res;
            }
        }
    }
    res.detail = "q <= 25, x = 2000, all reduced residues";
    return res;
}

CheckResult check_parseval(const SieveTables& tables) {
    CheckResult res{"parseval", true, ""};
    double worst = 0.0;
    for (std::uint64_t q = 1; q <= 30; ++q) {
        auto pc = parseval_check(q, 2000, tables);
        worst = std::max(worst, pc.relative_gap());
        if (pc.relative_gap() > 1e-6) {
            res.pass = false;
            res.detail = "q = " + std::to_string(q) + ": relative gap " +
                         fmt("%.3e", pc.relative_gap());
            return res;
        }
    }
    res.detail = "q <= 30, x = 2000, worst gap " + fmt("%.3e", worst);
    return res;
}

CheckResult check_pair_density_ratio(const SieveTables& tables) {
    CheckResult res{"pair-density-ratio", true, ""};
    double worst = 0.0;
    for (std::uint64_t q : {1, 2, 3, 5, 12, 101}) {
        ModulusContext ctx = build_modulus_context(q);
        auto residues = reduced_residues(ctx);
        for (std::uint64_t P : {std::uint64_t{100}, std::uint64_t{1000}})
            for (std::uint64_t S : {std::uint64_t{100}, std::uint64_t{1000}})
                for (std::size_t i = 0; i < std::min<std::size_t>(3, residues.size()); ++i) {
                    double v = static_cast<double>(count_pairs_all(
                                   make_instance(residues[i], q, P, S), tables)) /
                               (static_cast<double>(P) * static_cast<double>(S) /
                                    static_cast<double>(q) +
                                1.0);
                    worst = std::max(worst, v);
                }
    }
    res.pass = std::isfinite(worst) && worst > 0.0;
    res.detail = "max count/(PS/q + 1) over grid = " + fmt("%.4f", worst) +
                 " (reported, no constant asserted)";
    return res;
}

CheckResult check_csv_roundtrip(const SieveTables& tables) {
    CheckResult res{"csv-roundtrip", true, ""};
    SweepSpec spec;
    spec.q_values = {3, 4, 7};
    spec.P_values = {100, 1000};
    spec.S_values = {100, 1000};
    spec.a_policy = APolicy::Sample;
    spec.sample_n = 2;
    spec.seed = 42;
    auto rows = run_sweep(spec, tables);
    std::string csv = render_csv(rows);
    std::string again = render_csv(parse_csv(csv));
    if (csv != again) {
        res.pass = false;
        res.detail = "render -> parse -> render not byte-identical";
        return res;
    }
    auto rows2 = run_sweep(spec, tables);
    if (rows.size() != rows2.size()) {
        res.pass = false;
        res.detail = "row counts differ between identical runs";
        return res;
    }
    for (std::size_t i = 0; i < rows.size(); ++i) {
        const auto &a = rows[i], &b = rows2[i];
        if (a.a != b.a || a.q != b.q || a.P != b.P || a.S != b.S ||
            a.regime != b.regime || a.exact != b.exact ||
            a.main_term != b.main_term || a.abs_error != b.abs_error ||
            a.envelope != b.envelope ||
            a.normalized_error != b.normalized_error || a.D != b.D) {
            res.pass = false;
            res.detail = "row " + std::to_string(i) +
                         " differs between identical runs";
            return res;
        }
    }
    res.detail = std::to_string(rows.size()) +
                 " rows, byte-identical re-render, deterministic re-run";
    return res;
}

std::vector<CheckResult> run_selftest() {
    SieveTables tables = build_sieve(20000);
    std::vector<CheckResult> out;
    out.push_back(check_squarefree_identity(tables, 20000));
    out.push_back(check_mobius_divisor_sum(tables, 20000));
    out.push_back(check_segmented_consistency(tables, 20000));
    out.push_back(check_inverse_roundtrip(tables));
    out.push_back(check_mobius_decomposition(tables));
    out.push_back(check_partition_identity(tables));
    out.push_back(check_coprime_pair_remainder(tables));
    out.push_back(check_squarefree_density(tables));
    out.push_back(check_kloosterman_bounds(tables));
    out.push_back(check_parseval(tables));
    out.push_back(check_pair_density_ratio(tables));
    out.push_back(check_csv_roundtrip(tables));
    return out;
}

} // namespace psprod
