#include <doctest.h>

#include <cmath>

#include "psprod/asymptotics.hpp"
#include "psprod/errors.hpp"

using namespace psprod;
using doctest::Approx;

namespace {
const SieveTables& tables() {
    static SieveTables t = build_sieve(1000000);
    return t;
}
const RegimeConfig kDefault{};
} // namespace

TEST_CASE("regime names round-trip") {
    for (Regime r : {Regime::SmallQ, Regime::MediumQ, Regime::LargeQ})
        CHECK(regime_from_name(regime_name(r)) == r);
    CHECK(!regime_from_name("smallq").has_value());
    CHECK(!regime_from_name("").has_value());
}

TEST_CASE("regime classification, P = 1e6, A = 2") {
    // (log 1e6)^2 = 190.868..., 1e6^{3/4} = 31622.776...
    CHECK(classify_regime(1, 1000000, kDefault) == Regime::SmallQ);
    CHECK(classify_regime(190, 1000000, kDefault) == Regime::SmallQ);
    CHECK(classify_regime(191, 1000000, kDefault) == Regime::MediumQ);
    CHECK(classify_regime(10000, 1000000, kDefault) == Regime::MediumQ);
    CHECK(classify_regime(31622, 1000000, kDefault) == Regime::MediumQ);
    CHECK(classify_regime(31623, 1000000, kDefault) == Regime::LargeQ);
    CHECK(classify_regime(1000000000, 1000000, kDefault) == Regime::LargeQ);
}

TEST_CASE("regime classification edge cases") {
    // For P = 10, A = 10 the SmallQ and LargeQ bands overlap; SmallQ wins.
    RegimeConfig wide = kDefault;
    wide.A = 10.0;
    CHECK(classify_regime(100, 10, wide) == Regime::SmallQ);
    CHECK(classify_regime(100000, 10, wide) == Regime::LargeQ);

    CHECK(classify_regime(1, 2, kDefault) == Regime::SmallQ);
    CHECK_THROWS_AS(classify_regime(3, 2, kDefault), DegenerateRangeError);
    CHECK_THROWS_AS(classify_regime(0, 100, kDefault), Error);

    RegimeConfig bad = kDefault;
    bad.epsilon = 0.0;
    CHECK_THROWS_AS(classify_regime(5, 100, bad), Error);
}

TEST_CASE("error envelope values") {
    CHECK(envelope_E(5, 1000000, kDefault) == Approx(200000.0).epsilon(1e-12));
    CHECK(envelope_E(10000, 1000000, kDefault) ==
          Approx(8943.28234724).epsilon(1e-9));
    CHECK(envelope_E(31623, 1000000, kDefault) ==
          Approx(6008.6172424).epsilon(1e-9));

    RegimeConfig doubled = kDefault;
    doubled.o1_factor = 2.0;
    CHECK(envelope_E(10000, 1000000, doubled) ==
          Approx(2 * 8943.28234724).epsilon(1e-9));
}

TEST_CASE("displayed medium envelope majorizes the derived form by <= sqrt(2)") {
    for (std::uint64_t q : {std::uint64_t{191}, std::uint64_t{1000},
                            std::uint64_t{10000}, std::uint64_t{31622}}) {
        REQUIRE(classify_regime(q, 1000000, kDefault) == Regime::MediumQ);
        double shown = envelope_E(q, 1000000, kDefault);
        double derived = envelope_E_derived(q, 1000000, kDefault);
        CAPTURE(q);
        REQUIRE(shown / derived >= 1.0 - 1e-12);
        REQUIRE(shown / derived <= std::sqrt(2.0) + 1e-12);
    }
}

TEST_CASE("exponential sum bound values") {
    CHECK_THROWS_AS(bound_B(1, 1000, kDefault), Error);
    CHECK(bound_B(5, 1000000, kDefault) == Approx(200000.0).epsilon(1e-12));
    CHECK(bound_B(1000, 1000000, kDefault) ==
          Approx(386436.165835).epsilon(1e-9));
    CHECK(bound_B(1000000, 1000000, kDefault) ==
          Approx(847250.422354).epsilon(1e-9));

    // LargeQ carries q^eps, not the o(1) knob.
    RegimeConfig doubled = kDefault;
    doubled.o1_factor = 2.0;
    CHECK(bound_B(1000000, 1000000, doubled) ==
          Approx(bound_B(1000000, 1000000, kDefault)).epsilon(1e-12));
    CHECK(bound_B(1000, 1000000, doubled) ==
          Approx(2 * 386436.165835).epsilon(1e-9));
}

TEST_CASE("truncation point") {
    CHECK(choose_D(5, 1000000, 100, kDefault) == Approx(10.0).epsilon(1e-12));
    CHECK(choose_D(10000, 1000000, 1000000, kDefault) ==
          Approx(12.4906614084).epsilon(1e-9));

    SUBCASE("clamped to [1, sqrt(S)]") {
        RegimeConfig big = kDefault;
        big.o1_factor = 50.0;
        CHECK(choose_D(5, 1000000, 100, big) == Approx(10.0).epsilon(1e-12));
        RegimeConfig tiny = kDefault;
        tiny.o1_factor = 1e-6;
        CHECK(choose_D(5, 1000000, 100, tiny) == Approx(1.0).epsilon(1e-12));
    }
    SUBCASE("LargeQ ignores the o(1) knob") {
        RegimeConfig doubled = kDefault;
        doubled.o1_factor = 2.0;
        CHECK(choose_D(31623, 1000000, 1000000, doubled) ==
              Approx(choose_D(31623, 1000000, 1000000, kDefault)).epsilon(1e-12));
    }
}

TEST_CASE("main term and density predictions") {
    auto c1 = build_modulus_context(1);
    auto c2 = build_modulus_context(2);
    auto c3 = build_modulus_context(3);

    CHECK(main_term(10, 10, c3, tables()) == Approx(5.0).epsilon(1e-12));
    CHECK(main_term(10, 10, c1, tables()) == Approx(28.0).epsilon(1e-12));

    // s_1(1e6) = 607926, s_2(1e6) = 405286.
    CHECK(predicted_s_q(1000000, c1) == Approx(607927.101854).epsilon(1e-9));
    CHECK(std::abs(predicted_s_q(1000000, c1) - 607926.0) < 2.0);
    CHECK(predicted_s_q(1000000, c2) == Approx(405284.734569).epsilon(1e-9));
    CHECK(std::abs(predicted_s_q(1000000, c2) - 405286.0) < 2.0);

    CHECK(predicted_N_q(10, 10, c3, tables()) == Approx(20.0).epsilon(1e-12));
    CHECK(count_N_q(10, 10, c3, tables()) == 21);
    CHECK(predicted_N_q(1000, 1000, c2, tables()) ==
          Approx(167 * 1000 / 2.0).epsilon(1e-12));
}

TEST_CASE("positivity conditions") {
    auto res = positivity_conditions(5, 1000000, 100, kDefault);
    CHECK(res.regime == Regime::SmallQ);
    CHECK(res.satisfied);

    RegimeConfig huge_c = kDefault;
    huge_c.positivity_c = 1e9;
    CHECK(!positivity_conditions(5, 1000000, 100, huge_c).satisfied);

    CHECK(positivity_conditions(10000, 1000000, 1000000, kDefault).satisfied);
    CHECK(!positivity_conditions(10000, 1000000, 10, kDefault).satisfied);

    CHECK(positivity_conditions(31623, 1000000, 1000000, kDefault).satisfied);
    CHECK(!positivity_conditions(1000000, 1000000, 2, kDefault).satisfied);
}

TEST_CASE("count report for small instances") {
    auto rep = build_report(make_instance(1, 3, 10, 10), kDefault, tables());
    CHECK(rep.regime == Regime::SmallQ);
    CHECK(rep.exact == 7);
    CHECK(rep.main == Approx(5.0).epsilon(1e-12));
    CHECK(rep.abs_error == Approx(2.0).epsilon(1e-12));
    CHECK(rep.envelope == Approx(std::sqrt(10.0) * 10.0 / 3.0).epsilon(1e-12));
    CHECK(rep.normalized_error ==
          Approx(2.0 / (std::sqrt(10.0) * 10.0 / 3.0)).epsilon(1e-12));
    CHECK(rep.D == Approx(std::sqrt(10.0)).epsilon(1e-12));
    CHECK(!rep.beyond_uniform_range);

    auto zero = build_report(make_instance(1, 1, 10, 10), kDefault, tables());
    CHECK(zero.exact == 28);
    CHECK(zero.abs_error == Approx(0.0).epsilon(1e-12));
    CHECK(zero.normalized_error == Approx(0.0).epsilon(1e-12));
}

TEST_CASE("reports flag q beyond the uniform range") {
    auto rep = build_report(make_instance(1, 59050, 3, 10), kDefault, tables());
    CHECK(rep.beyond_uniform_range);
    CHECK(rep.regime == Regime::LargeQ);
    auto ok = build_report(make_instance(1, 59050, 7, 10), kDefault, tables());
    CHECK(!ok.beyond_uniform_range);
}
