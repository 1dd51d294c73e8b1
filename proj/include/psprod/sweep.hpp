#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "psprod/asymptotics.hpp"
#include "psprod/sieve.hpp"

namespace psprod {

// How residues a are chosen for each modulus in a sweep.
enum class APolicy { AllReduced, Fixed, Sample };

struct SweepSpec {
    std::vector<std::uint64_t> q_values;  // deduplicated, ascending
    std::vector<std::uint64_t> P_values;
    std::vector<std::uint64_t> S_values;
    APolicy a_policy = APolicy::AllReduced;
    std::uint64_t fixed_a = 1;       // APolicy::Fixed
    std::uint64_t sample_n = 5;      // APolicy::Sample
    std::uint64_t seed = 0;          // APolicy::Sample
    RegimeConfig cfg;
    std::uint64_t max_instances = 100000;
    unsigned threads = 1;
};

// One output row; identical to the CSV schema. elapsed_ms is wall time for
// this row only and is excluded from determinism comparisons.
struct SweepRow {
    std::uint64_t a = 1, q = 1, P = 2, S = 1;
    Regime regime = Regime::SmallQ;
    std::uint64_t exact = 0;
    double main_term = 0.0;
    double abs_error = 0.0;
    double envelope = 0.0;
    double normalized_error = 0.0;
    double D = 1.0;
    double elapsed_ms = 0.0;
};

// Expands the spec into concrete (a, q, P, S) instances in lexicographic
// (q, P, S, a) order. Sample policy draws reproducibly from (seed, q), so a
// given q keeps the same residues across the whole P/S grid. Throws
// CapacityError (with the estimated count) when the instance count exceeds
// spec.max_instances.
std::vector<ProblemInstance> expand_instances(const SweepSpec& spec);

// Runs every instance (worker pool of spec.threads, no shared mutable
// state) and returns rows in the same deterministic order.
std::vector<SweepRow> run_sweep(const SweepSpec& spec, const SieveTables& tables);

// CSV with the fixed header
//   a,q,P,S,regime,exact,main_term,abs_error,envelope,normalized_error,D,elapsed_ms
// Integers exact, reals with 12 significant digits. parse_csv() of the
// output re-renders byte-identically.
std::string render_csv(const std::vector<SweepRow>& rows);
std::vector<SweepRow> parse_csv(const std::string& text);

// JSON array of objects with the same field names.
std::string render_json(const std::vector<SweepRow>& rows);

} // namespace psprod
