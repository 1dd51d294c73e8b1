#pragma once

#include <cstdint>
#include <optional>
#include <string_view>

#include "psprod/counting.hpp"
#include "psprod/modular.hpp"
#include "psprod/sieve.hpp"

namespace psprod {

// The three ranges of q relative to P that select the error envelope:
//   SmallQ   q <= (log P)^A
//   MediumQ  (log P)^A < q < P^{3/4}
//   LargeQ   q >= P^{3/4}
// Boundary ties resolve SmallQ first, then LargeQ (so when the bands
// overlap for tiny P, the SmallQ branch wins).
enum class Regime { SmallQ, MediumQ, LargeQ };

const char* regime_name(Regime r);
std::optional<Regime> regime_from_name(std::string_view name);

// Knobs shared by every asymptotic formula. o1_factor stands in for all
// (PS)^{o(1)}-type factors; positivity_c is the constant behind the
// "sufficiently large" positivity conditions.
struct RegimeConfig {
    double A = 2.0;
    double epsilon = 0.01;
    double o1_factor = 1.0;
    double positivity_c = 1.0;
};

// Classifies q against (log P)^A and P^{3/4} (natural log). For P < 3 the
// SmallQ band is empty or ill-posed: q = 1 still classifies SmallQ, any
// q > 1 throws DegenerateRangeError.
Regime classify_regime(std::uint64_t q, std::uint64_t P, const RegimeConfig& cfg);

// Error envelope E(q, P) per regime (the full predicted error for a count
// is sqrt(S) * E):
//   SmallQ   P/q
//   MediumQ  P/q^{3/4} + P^{9/10}/q^{3/8}
//   LargeQ   P^{31/32}/q^{(1-eps)/2} + P^{5/6}/q^{(3/4-eps)/2}
// SmallQ/MediumQ are scaled by o1_factor.
double envelope_E(std::uint64_t q, std::uint64_t P, const RegimeConfig& cfg);

// Pre-majorization form of the MediumQ envelope,
//   P^{1/2} (P q^{1/2} + q^{5/4} P^{4/5})^{1/2} / q,
// kept for cross-checking the displayed MediumQ formula (which majorizes
// it by at most sqrt(2)). Evaluated for any q for comparison tables.
double envelope_E_derived(std::uint64_t q, std::uint64_t P, const RegimeConfig& cfg);

// Bound for the prime Kloosterman-type sum S_q(a; x), requiring q >= 2:
//   SmallQ   x/q * o1_factor
//   MediumQ  (x/q^{1/2} + q^{1/4} x^{4/5}) * o1_factor
//   LargeQ   (x^{15/16} + q^{1/4} x^{2/3}) * q^eps
double bound_B(std::uint64_t q, std::uint64_t x, const RegimeConfig& cfg);

// Truncation point D for the square-free expansion, clamped to [1, sqrt(S)]:
//   SmallQ   sqrt(S) * o1_factor
//   MediumQ  (PS / (P q^{1/2} + q^{5/4} P^{4/5}))^{1/2} * o1_factor
//   LargeQ   (PS / (q^{1+eps} (P^{15/16} + q^{1/4} P^{2/3})))^{1/2}
double choose_D(std::uint64_t q, std::uint64_t P, std::uint64_t S,
                const RegimeConfig& cfg);

// Predicted main term pi_q(P) * s_q(S) / q.
double main_term(std::uint64_t P, std::uint64_t S, const ModulusContext& ctx,
                 const SieveTables& tables);

// Density prediction for s_q(S):
//   (phi(q)/q) * (6/pi^2) * prod_{p | q} (1 - p^{-2})^{-1} * S.
double predicted_s_q(std::uint64_t S, const ModulusContext& ctx);

// Prediction phi(q) * pi_q(P) * S / q for count_N_q(P, S).
double predicted_N_q(std::uint64_t P, std::uint64_t S, const ModulusContext& ctx,
                     const SieveTables& tables);

// Sufficient conditions (per regime) for the predicted main term to
// dominate the error envelope, evaluated in log space with constant
// positivity_c:
//   SmallQ   S >= c P^eps
//   MediumQ  S^2 >= c (PS)^eps q      and  P^4 S^20 >= c (PS)^eps q^25
//   LargeQ   P S^16 >= c (PS)^eps q^16 and P^4 S^12 >= c (PS)^eps q^15
struct PositivityResult {
    bool satisfied = false;
    Regime regime = Regime::SmallQ;
};
PositivityResult positivity_conditions(std::uint64_t q, std::uint64_t P,
                                       std::uint64_t S, const RegimeConfig& cfg);

// Exact count next to its prediction and normalized error for one instance.
struct CountReport {
    ProblemInstance instance;
    Regime regime = Regime::SmallQ;
    std::uint64_t exact = 0;
    double main = 0.0;              // pi_q(P) s_q(S) / q
    double abs_error = 0.0;         // |exact - main|
    double envelope = 0.0;          // sqrt(S) * E(q, P)
    double normalized_error = 0.0;  // abs_error / envelope
    double D = 1.0;                 // chosen truncation point
    // The envelope is only claimed uniformly for q up to a fixed power of
    // P; rows with q > P^10 are flagged rather than rejected.
    bool beyond_uniform_range = false;
};
CountReport build_report(const ProblemInstance& inst, const RegimeConfig& cfg,
                         const SieveTables& tables);

} // namespace psprod
