#include "psprod/asymptotics.hpp"

#include <cmath>
#include <string>

#include "psprod/errors.hpp"

namespace psprod {

const char* regime_name(Regime r) {
    switch (r) {
        case Regime::SmallQ: return "SmallQ";
        case Regime::MediumQ: return "MediumQ";
        case Regime::LargeQ: return "LargeQ";
    }
    return "?";
}

std::optional<Regime> regime_from_name(std::string_view name) {
    if (name == "SmallQ") return Regime::SmallQ;
    if (name == "MediumQ") return Regime::MediumQ;
    if (name == "LargeQ") return Regime::LargeQ;
    return {};
}

namespace {

void validate_cfg(const RegimeConfig& cfg) {
    if (!(cfg.A > 0.0) || !(cfg.epsilon > 0.0) || !(cfg.o1_factor > 0.0) ||
        !(cfg.positivity_c > 0.0))
        throw Error("RegimeConfig: A, epsilon, o1_factor, positivity_c must be > 0");
}

} // namespace

Regime classify_regime(std::uint64_t q, std::uint64_t P, const RegimeConfig& cfg) {
    validate_cfg(cfg);
    if (q == 0)
        throw Error("classify_regime: modulus 0");
    if (P < 3) {
        if (q == 1)
            return Regime::SmallQ;
        throw DegenerateRangeError("classify_regime: P = " + std::to_string(P) +
                                   " has log P <= 1; the SmallQ band is ill-posed");
    }
    double qd = static_cast<double>(q);
    double lp = std::log(static_cast<double>(P));
    if (qd <= std::pow(lp, cfg.A))
        return Regime::SmallQ;
    if (qd >= std::pow(static_cast<double>(P), 0.75))
        return Regime::LargeQ;
    return Regime::MediumQ;
}

double envelope_E(std::uint64_t q, std::uint64_t P, const RegimeConfig& cfg) {
    Regime r = classify_regime(q, P, cfg);
    double qd = static_cast<double>(q), Pd = static_cast<double>(P);
    switch (r) {
        case Regime::SmallQ:
            return cfg.o1_factor * Pd / qd;
        case Regime::MediumQ:
            return cfg.o1_factor *
                   (Pd / std::pow(qd, 0.75) + std::pow(Pd, 0.9) / std::pow(qd, 0.375));
        case Regime::LargeQ:
            return cfg.o1_factor *
                   (std::pow(Pd, 31.0 / 32.0) / std::pow(qd, (1.0 - cfg.epsilon) / 2.0) +
                    std::pow(Pd, 5.0 / 6.0) / std::pow(qd, (0.75 - cfg.epsilon) / 2.0));
    }
    throw Error("envelope_E: unreachable");
}

double envelope_E_derived(std::uint64_t q, std::uint64_t P, const RegimeConfig& cfg) {
    validate_cfg(cfg);
    double qd = static_cast<double>(q), Pd = static_cast<double>(P);
    double inner = Pd * std::sqrt(qd) + std::pow(qd, 1.25) * std::pow(Pd, 0.8);
    return cfg.o1_factor * std::sqrt(Pd) * std::sqrt(inner) / qd;
}

double bound_B(std::uint64_t q, std::uint64_t x, const RegimeConfig& cfg) {
    if (q < 2)
        throw Error("bound_B: requires q >= 2");
    Regime r = classify_regime(q, x, cfg);
    double qd = static_cast<double>(q), xd = static_cast<double>(x);
    switch (r) {
        case Regime::SmallQ:
            return cfg.o1_factor * xd / qd;
        case Regime::MediumQ:
            return cfg.o1_factor *
                   (xd / std::sqrt(qd) + std::pow(qd, 0.25) * std::pow(xd, 0.8));
        case Regime::LargeQ:
            return (std::pow(xd, 15.0 / 16.0) +
                    std::pow(qd, 0.25) * std::pow(xd, 2.0 / 3.0)) *
                   std::pow(qd, cfg.epsilon);
    }
    throw Error("bound_B: unreachable");
}

double choose_D(std::uint64_t q, std::uint64_t P, std::uint64_t S,
                const RegimeConfig& cfg) {
    Regime r = classify_regime(q, P, cfg);
    double qd = static_cast<double>(q), Pd = static_cast<double>(P);
    double Sd = static_cast<double>(S);
    double v = 0.0;
    switch (r) {
        case Regime::SmallQ:
            v = std::sqrt(Sd) * cfg.o1_factor;
            break;
        case Regime::MediumQ:
            v = cfg.o1_factor *
                std::sqrt(Pd * Sd /
                          (Pd * std::sqrt(qd) + std::pow(qd, 1.25) * std::pow(Pd, 0.8)));
            break;
        case Regime::LargeQ:
            v = std::sqrt(Pd * Sd /
                          (std::pow(qd, 1.0 + cfg.epsilon) *
                           (std::pow(Pd, 15.0 / 16.0) +
                            std::pow(qd, 0.25) * std::pow(Pd, 2.0 / 3.0))));
            break;
    }
    return std::min(std::max(v, 1.0), std::sqrt(Sd));
}

double main_term(std::uint64_t P, std::uint64_t S, const ModulusContext& ctx,
                 const SieveTables& tables) {
    return static_cast<double>(pi_q(P, ctx, tables)) *
           static_cast<double>(s_q(S, ctx, tables)) / static_cast<double>(ctx.q);
}

double predicted_s_q(std::uint64_t S, const ModulusContext& ctx) {
    constexpr double six_over_pi2 = 6.0 / (3.14159265358979323846 * 3.14159265358979323846);
    double density = six_over_pi2 * static_cast<double>(ctx.phi) /
                     static_cast<double>(ctx.q);
    for (std::uint64_t p : ctx.prime_divisors) {
        double pd = static_cast<double>(p);
        density /= 1.0 - 1.0 / (pd * pd);
    }
    return density * static_cast<double>(S);
}

double predicted_N_q(std::uint64_t P, std::uint64_t S, const ModulusContext& ctx,
                     const SieveTables& tables) {
    return static_cast<double>(ctx.phi) *
           static_cast<double>(pi_q(P, ctx, tables)) * static_cast<double>(S) /
           static_cast<double>(ctx.q);
}

PositivityResult positivity_conditions(std::uint64_t q, std::uint64_t P,
                                       std::uint64_t S, const RegimeConfig& cfg) {
    Regime r = classify_regime(q, P, cfg);
    double lnP = std::log(static_cast<double>(P));
    double lnS = std::log(static_cast<double>(S));
    double lnq = std::log(static_cast<double>(q));
    double lnc = std::log(cfg.positivity_c);
    double eps_ps = cfg.epsilon * (lnP + lnS);

    PositivityResult out;
    out.regime = r;
    switch (r) {
        case Regime::SmallQ:
            out.satisfied = lnS >= lnc + cfg.epsilon * lnP;
            break;
        case Regime::MediumQ:
            out.satisfied = (2 * lnS >= lnc + eps_ps + lnq) &&
                            (4 * lnP + 20 * lnS >= lnc + eps_ps + 25 * lnq);
            break;
        case Regime::LargeQ:
            out.satisfied = (lnP + 16 * lnS >= lnc + eps_ps + 16 * lnq) &&
                            (4 * lnP + 12 * lnS >= lnc + eps_ps + 15 * lnq);
            break;
    }
    return out;
}

CountReport build_report(const ProblemInstance& inst, const RegimeConfig& cfg,
                         const SieveTables& tables) {
    CountReport rep;
    rep.instance = inst;
    rep.regime = classify_regime(inst.q, inst.P, cfg);

    ModulusContext ctx = build_modulus_context(inst.q);
    rep.exact = count_exact(inst, tables);
    rep.main = main_term(inst.P, inst.S, ctx, tables);
    rep.abs_error = std::abs(static_cast<double>(rep.exact) - rep.main);
    rep.envelope = std::sqrt(static_cast<double>(inst.S)) *
                   envelope_E(inst.q, inst.P, cfg);
    rep.normalized_error = rep.abs_error / rep.envelope;
    rep.D = choose_D(inst.q, inst.P, inst.S, cfg);
    rep.beyond_uniform_range =
        std::log(static_cast<double>(inst.q)) >
        10.0 * std::log(static_cast<double>(inst.P));
    return rep;
}

} // namespace psprod
