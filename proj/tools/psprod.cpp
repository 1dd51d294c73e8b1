// psprod: exact counts of prime * square-free products in residue classes,
// next to their predicted main terms, error envelopes and the prime
// Kloosterman-type sums behind the error analysis.
//
//   psprod count --a 1 --q 3 --P 1e4 --S 1e4
//   psprod sweep --q 2..60 --P 1000:10:2 --S 1e4 --format csv --out rows.csv
//   psprod regimes --q 10:10:5 --P 1e6
//   psprod kloosterman --a 1 --q 101 --x 1e5
//   psprod selftest

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "psprod/asymptotics.hpp"
#include "psprod/counting.hpp"
#include "psprod/errors.hpp"
#include "psprod/exp_sums.hpp"
#include "psprod/modular.hpp"
#include "psprod/selftest.hpp"
#include "psprod/sieve.hpp"
#include "psprod/sweep.hpp"

namespace {

using psprod::Error;

std::string fmt_real(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

// Accepts plain integers and scientific shorthand ("1e6").
std::uint64_t parse_u64(const std::string& s) {
    char* end = nullptr;
    double d = std::strtod(s.c_str(), &end);
    if (end == s.c_str() || *end != '\0' || d < 0 || d > 1.8e19 ||
        std::floor(d) != d)
        throw Error("not a non-negative integer: '" + s + "'");
    return static_cast<std::uint64_t>(d);
}

// Value-set forms: "7" | "3,5,7" | "2..60" (inclusive range) |
// "1000:10:4" (geometric ladder start:ratio:count, ratio > 1).
std::vector<std::uint64_t> parse_values(const std::string& s) {
    std::vector<std::uint64_t> out;
    if (auto dots = s.find(".."); dots != std::string::npos) {
        std::uint64_t lo = parse_u64(s.substr(0, dots));
        std::uint64_t hi = parse_u64(s.substr(dots + 2));
        if (lo > hi || hi - lo > 5000000)
            throw Error("bad range '" + s + "'");
        for (std::uint64_t v = lo; v <= hi; ++v) out.push_back(v);
        return out;
    }
    if (s.find(':') != std::string::npos) {
        std::size_t c1 = s.find(':');
        std::size_t c2 = s.find(':', c1 + 1);
        if (c2 == std::string::npos)
            throw Error("ladder must be start:ratio:count, got '" + s + "'");
        std::uint64_t start = parse_u64(s.substr(0, c1));
        double ratio = std::strtod(s.substr(c1 + 1, c2 - c1 - 1).c_str(), nullptr);
        std::uint64_t count = parse_u64(s.substr(c2 + 1));
        if (start < 1 || !(ratio > 1.0) || count < 1 || count > 64)
            throw Error("ladder needs start >= 1, ratio > 1, 1 <= count <= 64");
        double v = static_cast<double>(start);
        for (std::uint64_t k = 0; k < count; ++k) {
            out.push_back(static_cast<std::uint64_t>(std::llround(v)));
            v *= ratio;
        }
        return out;
    }
    std::size_t start = 0;
    for (;;) {
        std::size_t c = s.find(',', start);
        out.push_back(parse_u64(s.substr(start, c - start)));
        if (c == std::string::npos) break;
        start = c + 1;
    }
    return out;
}

struct CommonOpts {
    std::string A = "2", epsilon = "0.01", o1 = "1";
    std::uint64_t mem_mb = 2048;

    psprod::RegimeConfig cfg() const {
        psprod::RegimeConfig c;
        c.A = std::strtod(A.c_str(), nullptr);
        c.epsilon = std::strtod(epsilon.c_str(), nullptr);
        c.o1_factor = std::strtod(o1.c_str(), nullptr);
        if (!(c.A > 0) || !(c.epsilon > 0) || !(c.o1_factor > 0))
            throw Error("--A, --epsilon and --o1 must be positive");
        return c;
    }
    std::uint64_t budget() const { return mem_mb * (1ull << 20); }
};

void add_common(CLI::App* cmd, CommonOpts& opts) {
    cmd->add_option("--A", opts.A, "exponent in the SmallQ boundary (log P)^A");
    cmd->add_option("--epsilon", opts.epsilon, "epsilon in the LargeQ exponents");
    cmd->add_option("--o1", opts.o1, "stand-in factor for all (PS)^{o(1)} terms");
    cmd->add_option("--mem-mb", opts.mem_mb, "sieve memory budget in MiB");
}

int run_count(const std::string& a_s, const std::string& q_s,
              const std::string& P_s, const std::string& S_s,
              const CommonOpts& opts) {
    std::uint64_t a = parse_u64(a_s), q = parse_u64(q_s);
    std::uint64_t P = parse_u64(P_s), S = parse_u64(S_s);
    auto inst = psprod::make_instance(a, q, P, S);
    auto tables = psprod::build_sieve(std::max(P, S), opts.budget());
    auto rep = psprod::build_report(inst, opts.cfg(), tables);

    std::printf("a=%llu q=%llu P=%llu S=%llu\n",
                (unsigned long long)a, (unsigned long long)q,
                (unsigned long long)P, (unsigned long long)S);
    std::printf("exact             %llu\n", (unsigned long long)rep.exact);
    std::printf("main_term         %s\n", fmt_real(rep.main).c_str());
    std::printf("abs_error         %s\n", fmt_real(rep.abs_error).c_str());
    std::printf("envelope          %s\n", fmt_real(rep.envelope).c_str());
    std::printf("normalized_error  %s\n", fmt_real(rep.normalized_error).c_str());
    std::printf("regime            %s\n", psprod::regime_name(rep.regime));
    std::printf("D                 %s\n", fmt_real(rep.D).c_str());
    auto pos = psprod::positivity_conditions(q, P, S, opts.cfg());
    std::printf("positivity        %s (%s condition)\n",
                pos.satisfied ? "satisfied" : "not satisfied",
                psprod::regime_name(pos.regime));
    if (rep.beyond_uniform_range)
        std::printf("note: q exceeds P^10; the envelope is not claimed "
                    "uniformly this far\n");
    return 0;
}

int run_kloosterman(const std::string& a_s, const std::string& q_s,
                    const std::string& x_s, const CommonOpts& opts) {
    std::uint64_t a = parse_u64(a_s), q = parse_u64(q_s), x = parse_u64(x_s);
    auto tables = psprod::build_sieve(x, opts.budget());
    auto v = psprod::kloosterman_prime_sum(a, q, x, tables, opts.cfg());
    std::printf("S_q(a; x) over primes, a=%llu q=%llu x=%llu\n",
                (unsigned long long)a, (unsigned long long)q,
                (unsigned long long)x);
    std::printf("real            %s\n", fmt_real(v.value.real()).c_str());
    std::printf("imag            %s\n", fmt_real(v.value.imag()).c_str());
    std::printf("abs             %s\n", fmt_real(v.modulus_abs).c_str());
    std::printf("trivial_bound   %s\n", fmt_real(v.trivial_bound).c_str());
    if (v.regime_bound) {
        std::printf("regime_bound    %s\n", fmt_real(*v.regime_bound).c_str());
        std::printf("ratio_regime    %s\n",
                    fmt_real(v.modulus_abs / *v.regime_bound).c_str());
    } else {
        std::printf("regime_bound    n/a (q = 1)\n");
    }
    if (v.trivial_bound > 0)
        std::printf("ratio_trivial   %s\n",
                    fmt_real(v.modulus_abs / v.trivial_bound).c_str());
    return 0;
}

int run_regimes(const std::string& q_s, const std::string& P_s,
                const std::string& S_s, const CommonOpts& opts) {
    auto qs = parse_values(q_s);
    std::uint64_t P = parse_u64(P_s);
    std::uint64_t S = S_s.empty() ? P : parse_u64(S_s);
    auto cfg = opts.cfg();

    if (P >= 3) {
        double lp = std::log(static_cast<double>(P));
        std::printf("boundaries for P=%llu: (log P)^A = %s, P^(3/4) = %s\n",
                    (unsigned long long)P, fmt_real(std::pow(lp, cfg.A)).c_str(),
                    fmt_real(std::pow(static_cast<double>(P), 0.75)).c_str());
    }
    std::printf("%-12s %-8s %-16s %-16s %-16s %-16s\n", "q", "regime", "E",
                "E_medium_alt", "B", "D");
    for (std::uint64_t q : qs) {
        auto regime = psprod::classify_regime(q, P, cfg);
        double E = psprod::envelope_E(q, P, cfg);
        double D = psprod::choose_D(q, P, S, cfg);
        std::string Bs = q >= 2 ? fmt_real(psprod::bound_B(q, P, cfg)) : "n/a";
        std::string alt = regime == psprod::Regime::MediumQ
                              ? fmt_real(psprod::envelope_E_derived(q, P, cfg))
                              : "-";
        std::printf("%-12llu %-8s %-16s %-16s %-16s %-16s\n",
                    (unsigned long long)q, psprod::regime_name(regime),
                    fmt_real(E).c_str(), alt.c_str(), Bs.c_str(),
                    fmt_real(D).c_str());
    }
    return 0;
}

int run_sweep_cmd(const std::string& q_s, const std::string& P_s,
                  const std::string& S_s, const std::string& a_s,
                  std::optional<std::uint64_t> sample_n, std::uint64_t seed,
                  unsigned threads, std::uint64_t max_instances,
                  const std::string& format, const std::string& out_path,
                  const CommonOpts& opts) {
    psprod::SweepSpec spec;
    spec.q_values = parse_values(q_s);
    spec.P_values = parse_values(P_s);
    spec.S_values = parse_values(S_s);
    spec.cfg = opts.cfg();
    spec.seed = seed;
    spec.threads = threads;
    spec.max_instances = max_instances;
    if (sample_n) {
        spec.a_policy = psprod::APolicy::Sample;
        spec.sample_n = *sample_n;
    } else if (!a_s.empty() && a_s != "all") {
        spec.a_policy = psprod::APolicy::Fixed;
        spec.fixed_a = parse_u64(a_s);
    } else {
        spec.a_policy = psprod::APolicy::AllReduced;
    }
    if (format != "csv" && format != "json")
        throw Error("--format must be csv or json");

    std::uint64_t need = 2;
    for (std::uint64_t v : spec.P_values) need = std::max(need, v);
    for (std::uint64_t v : spec.S_values) need = std::max(need, v);
    auto tables = psprod::build_sieve(need, opts.budget());
    auto rows = psprod::run_sweep(spec, tables);
    std::string text =
        format == "csv" ? psprod::render_csv(rows) : psprod::render_json(rows);

    if (out_path.empty()) {
        std::fwrite(text.data(), 1, text.size(), stdout);
    } else {
        std::ofstream f(out_path, std::ios::binary);
        if (!f)
            throw Error("cannot open --out file '" + out_path + "'");
        f.write(text.data(), static_cast<std::streamsize>(text.size()));
    }
    return 0;
}

int run_selftest_cmd() {
    auto results = psprod::run_selftest();
    std::size_t failed = 0;
    for (const auto& r : results) {
        std::printf("%s  %-24s %s\n", r.pass ? "ok  " : "FAIL", r.name.c_str(),
                    r.detail.c_str());
        if (!r.pass) ++failed;
    }
    std::printf("%zu/%zu checks passed\n", results.size() - failed, results.size());
    return failed == 0 ? 0 : 2;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact and predicted counts of prime * square-free products "
                 "in residue classes"};
    app.require_subcommand(1);
    app.set_config("--config", "", "key=value config file; flags override it");

    std::string a_s = "1", q_s = "1", P_s, S_s, x_s;
    std::string sweep_a;  // empty => all reduced residues
    std::string format = "csv", out_path;
    std::optional<std::uint64_t> sample_n;
    std::uint64_t seed = 0, max_instances = 100000;
    unsigned threads = 1;
    CommonOpts common;

    auto* count = app.add_subcommand("count", "one instance: exact vs predicted");
    count->add_option("--a", a_s, "residue a")->required();
    count->add_option("--q", q_s, "modulus q")->required();
    count->add_option("--P", P_s, "prime bound P")->required();
    count->add_option("--S", S_s, "square-free bound S")->required();
    add_common(count, common);

    auto* sweep = app.add_subcommand("sweep", "grid of instances, CSV/JSON rows");
    sweep->add_option("--q", q_s, "moduli: list, lo..hi or start:ratio:count")
        ->required();
    sweep->add_option("--P", P_s, "prime bounds (same forms)")->required();
    sweep->add_option("--S", S_s, "square-free bounds (same forms)")->required();
    sweep->add_option("--a", sweep_a, "fixed residue or 'all' (default all)");
    sweep->add_option("--sample", sample_n, "sample N reduced residues per q");
    sweep->add_option("--seed", seed, "seed for --sample");
    sweep->add_option("--threads", threads, "worker threads");
    sweep->add_option("--max-instances", max_instances, "refuse larger sweeps");
    sweep->add_option("--format", format, "csv or json");
    sweep->add_option("--out", out_path, "output path (default stdout)");
    add_common(sweep, common);

    auto* regimes = app.add_subcommand("regimes", "envelope/bound table over q");
    regimes->add_option("--q", q_s, "moduli: list, lo..hi or start:ratio:count")
        ->required();
    regimes->add_option("--P", P_s, "prime bound P")->required();
    regimes->add_option("--S", S_s, "square-free bound for D (default P)");
    add_common(regimes, common);

    auto* kloos = app.add_subcommand("kloosterman", "one prime Kloosterman-type sum");
    kloos->add_option("--a", a_s, "residue a")->required();
    kloos->add_option("--q", q_s, "modulus q")->required();
    kloos->add_option("--x", x_s, "prime bound x")->required();
    add_common(kloos, common);

    app.add_subcommand("selftest", "fast invariant checks, exit 2 on failure");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        if (app.got_subcommand("count"))
            return run_count(a_s, q_s, P_s, S_s, common);
        if (app.got_subcommand("sweep"))
            return run_sweep_cmd(q_s, P_s, S_s, sweep_a, sample_n, seed, threads,
                                 max_instances, format, out_path, common);
        if (app.got_subcommand("regimes"))
            return run_regimes(q_s, P_s, S_s, common);
        if (app.got_subcommand("kloosterman"))
            return run_kloosterman(a_s, q_s, x_s, common);
        if (app.got_subcommand("selftest"))
            return run_selftest_cmd();
    } catch (const psprod::CapacityError& e) {
        std::fprintf(stderr, "capacity: %s\n", e.what());
        return 3;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
    return 1;
}
