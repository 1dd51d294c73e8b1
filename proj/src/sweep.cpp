#include "psprod/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cinttypes>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <mutex>
#include <numeric>
#include <random>
#include <thread>

#include <json.hpp>

#include "psprod/errors.hpp"

namespace psprod {

namespace {

const char* kCsvHeader =
    "a,q,P,S,regime,exact,main_term,abs_error,envelope,normalized_error,D,elapsed_ms";

std::string fmt_real(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

std::vector<std::uint64_t> sorted_unique(std::vector<std::uint64_t> v) {
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
    return v;
}

// Residues for one modulus under the sweep's a-policy, ascending. Sample
// draws depend only on (seed, q), so the same q keeps the same residues
// across every (P, S) cell of the grid.
std::vector<std::uint64_t> residues_for(const SweepSpec& spec, std::uint64_t q) {
    ModulusContext ctx = build_modulus_context(q);
    switch (spec.a_policy) {
        case APolicy::Fixed: {
            std::uint64_t a = spec.fixed_a;
            if (a < 1 || a > q || std::gcd(a, q) != 1)
                throw InvalidResidueError("sweep: fixed residue " + std::to_string(a) +
                                          " not reduced mod " + std::to_string(q));
            return {a};
        }
        case APolicy::AllReduced:
            return reduced_residues(ctx);
        case APolicy::Sample: {
            if (ctx.phi <= spec.sample_n)
                return reduced_residues(ctx);
            std::seed_seq seq{spec.seed, q};
            std::mt19937_64 eng(seq);
            std::vector<std::uint64_t> out;
            while (out.size() < spec.sample_n) {
                std::uint64_t a = eng() % q + 1;
                if (std::gcd(a, q) != 1) continue;
                if (std::find(out.begin(), out.end(), a) != out.end()) continue;
                out.push_back(a);
            }
            std::sort(out.begin(), out.end());
            return out;
        }
    }
    throw Error("sweep: unknown a-policy");
}

} // namespace

std::vector<ProblemInstance> expand_instances(const SweepSpec& spec) {
    if (spec.q_values.empty() || spec.P_values.empty() || spec.S_values.empty())
        throw Error("sweep: q, P and S value lists must be non-empty");

    auto qs = sorted_unique(spec.q_values);
    auto Ps = sorted_unique(spec.P_values);
    auto Ss = sorted_unique(spec.S_values);

    std::vector<std::vector<std::uint64_t>> residues;
    residues.reserve(qs.size());
    std::uint64_t total = 0;
    for (std::uint64_t q : qs) {
        residues.push_back(residues_for(spec, q));
        total += residues.back().size() * Ps.size() * Ss.size();
    }
    if (total > spec.max_instances)
        throw CapacityError("sweep: " + std::to_string(total) +
                            " instances exceed cap " +
                            std::to_string(spec.max_instances));

    std::vector<ProblemInstance> out;
    out.reserve(total);
    for (std::size_t qi = 0; qi < qs.size(); ++qi)
        for (std::uint64_t P : Ps)
            for (std::uint64_t S : Ss)
                for (std::uint64_t a : residues[qi])
                    out.push_back(make_instance(a, qs[qi], P, S));
    return out;
}

std::vector<SweepRow> run_sweep(const SweepSpec& spec, const SieveTables& tables) {
    auto instances = expand_instances(spec);
    std::vector<SweepRow> rows(instances.size());

    std::atomic<std::size_t> next{0};
    std::mutex err_mutex;
    std::exception_ptr first_error;

    auto worker = [&]() {
        for (;;) {
            std::size_t i = next.fetch_add(1);
            if (i >= instances.size()) return;
            {
                std::lock_guard<std::mutex> lk(err_mutex);
                if (first_error) return;
            }
            try {
                auto t0 = std::chrono::steady_clock::now();
                CountReport rep = build_report(instances[i], spec.cfg, tables);
                auto t1 = std::chrono::steady_clock::now();
                SweepRow& r = rows[i];
                r.a = instances[i].a;
                r.q = instances[i].q;
                r.P = instances[i].P;
                r.S = instances[i].S;
                r.regime = rep.regime;
                r.exact = rep.exact;
                r.main_term = rep.main;
                r.abs_error = rep.abs_error;
                r.envelope = rep.envelope;
                r.normalized_error = rep.normalized_error;
                r.D = rep.D;
                r.elapsed_ms =
                    std::chrono::duration<double, std::milli>(t1 - t0).count();
            } catch (...) {
                std::lock_guard<std::mutex> lk(err_mutex);
                if (!first_error) first_error = std::current_exception();
                return;
            }
        }
    };

    unsigned nthreads = std::max(1u, spec.threads);
    if (nthreads == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (unsigned t = 0; t < nthreads; ++t)
            pool.emplace_back(worker);
        for (auto& th : pool)
            th.join();
    }
    if (first_error)
        std::rethrow_exception(first_error);
    return rows;
}

std::string render_csv(const std::vector<SweepRow>& rows) {
    std::string out = kCsvHeader;
    out += '\n';
    char buf[256];
    for (const SweepRow& r : rows) {
        std::snprintf(buf, sizeof(buf), "%" PRIu64 ",%" PRIu64 ",%" PRIu64 ",%" PRIu64
                      ",%s,%" PRIu64 ",",
                      r.a, r.q, r.P, r.S, regime_name(r.regime), r.exact);
        out += buf;
        out += fmt_real(r.main_term);
        out += ',';
        out += fmt_real(r.abs_error);
        out += ',';
        out += fmt_real(r.envelope);
        out += ',';
        out += fmt_real(r.normalized_error);
        out += ',';
        out += fmt_real(r.D);
        out += ',';
        out += fmt_real(r.elapsed_ms);
        out += '\n';
    }
    return out;
}

std::vector<SweepRow> parse_csv(const std::string& text) {
    std::vector<SweepRow> rows;
    std::size_t pos = 0;
    auto next_line = [&](std::string& line) -> bool {
        if (pos >= text.size()) return false;
        std::size_t nl = text.find('\n', pos);
        if (nl == std::string::npos) {
            line = text.substr(pos);
            pos = text.size();
        } else {
            line = text.substr(pos, nl - pos);
            pos = nl + 1;
        }
        return true;
    };

    std::string line;
    if (!next_line(line) || line != kCsvHeader)
        throw Error("parse_csv: missing or unexpected header");
    while (next_line(line)) {
        if (line.empty()) continue;
        std::vector<std::string> f;
        std::size_t start = 0;
        for (;;) {
            std::size_t c = line.find(',', start);
            if (c == std::string::npos) {
                f.push_back(line.substr(start));
                break;
            }
            f.push_back(line.substr(start, c - start));
            start = c + 1;
        }
        if (f.size() != 12)
            throw Error("parse_csv: expected 12 fields, got " +
                        std::to_string(f.size()));
        SweepRow r;
        r.a = std::strtoull(f[0].c_str(), nullptr, 10);
        r.q = std::strtoull(f[1].c_str(), nullptr, 10);
        r.P = std::strtoull(f[2].c_str(), nullptr, 10);
        r.S = std::strtoull(f[3].c_str(), nullptr, 10);
        auto reg = regime_from_name(f[4]);
        if (!reg)
            throw Error("parse_csv: unknown regime label '" + f[4] + "'");
        r.regime = *reg;
        r.exact = std::strtoull(f[5].c_str(), nullptr, 10);
        r.main_term = std::strtod(f[6].c_str(), nullptr);
        r.abs_error = std::strtod(f[7].c_str(), nullptr);
        r.envelope = std::strtod(f[8].c_str(), nullptr);
        r.normalized_error = std::strtod(f[9].c_str(), nullptr);
        r.D = std::strtod(f[10].c_str(), nullptr);
        r.elapsed_ms = std::strtod(f[11].c_str(), nullptr);
        rows.push_back(r);
    }
    return rows;
}

std::string render_json(const std::vector<SweepRow>& rows) {
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (const SweepRow& r : rows) {
        nlohmann::ordered_json o;
        o["a"] = r.a;
        o["q"] = r.q;
        o["P"] = r.P;
        o["S"] = r.S;
        o["regime"] = regime_name(r.regime);
        o["exact"] = r.exact;
        o["main_term"] = r.main_term;
        o["abs_error"] = r.abs_error;
        o["envelope"] = r.envelope;
        o["normalized_error"] = r.normalized_error;
        o["D"] = r.D;
        o["elapsed_ms"] = r.elapsed_ms;
        arr.push_back(std::move(o));
    }
    return arr.dump(2);
}

} // namespace psprod
