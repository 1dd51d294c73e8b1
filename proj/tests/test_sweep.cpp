#include <doctest.h>

#include <array>
#include <numeric>
#include <set>

#include <json.hpp>

#include "psprod/errors.hpp"
#include "psprod/sweep.hpp"

using namespace psprod;
using doctest::Approx;

namespace {
const SieveTables& tables() {
    static SieveTables t = build_sieve(5000);
    return t;
}

SweepSpec small_spec() {
    SweepSpec spec;
    spec.q_values = {3, 12};
    spec.P_values = {10, 100};
    spec.S_values = {10, 100};
    return spec;
}

bool rows_equal_ignoring_time(const std::vector<SweepRow>& x,
                              const std::vector<SweepRow>& y) {
    if (x.size() != y.size()) return false;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const SweepRow &a = x[i], &b = y[i];
        if (a.a != b.a || a.q != b.q || a.P != b.P || a.S != b.S ||
            a.regime != b.regime || a.exact != b.exact ||
            a.main_term != b.main_term || a.abs_error != b.abs_error ||
            a.envelope != b.envelope ||
            a.normalized_error != b.normalized_error || a.D != b.D)
            return false;
    }
    return true;
}
} // namespace

TEST_CASE("expansion order is lexicographic in (q, P, S, a)") {
    auto spec = small_spec();
    auto inst = expand_instances(spec);
    // q=3 has phi=2 residues, q=12 has 4; (2+4) * 2 * 2 = 24 instances.
    REQUIRE(inst.size() == 24);
    CHECK(inst[0].q == 3);
    CHECK(inst[0].P == 10);
    CHECK(inst[0].S == 10);
    CHECK(inst[0].a == 1);
    CHECK(inst[1].a == 2);
    CHECK(inst[2].S == 100);
    CHECK(inst[8].q == 12);
    for (std::size_t i = 1; i < inst.size(); ++i) {
        auto key = [](const ProblemInstance& x) {
            return std::array<std::uint64_t, 4>{x.q, x.P, x.S, x.a};
        };
        REQUIRE(key(inst[i - 1]) < key(inst[i]));
    }
    // duplicated inputs collapse
    spec.q_values = {12, 3, 3, 12};
    spec.P_values = {100, 10, 10};
    spec.S_values = {100, 10};
    CHECK(expand_instances(spec).size() == 24);
}

TEST_CASE("fixed residue policy") {
    auto spec = small_spec();
    spec.a_policy = APolicy::Fixed;
    spec.fixed_a = 1;
    auto inst = expand_instances(spec);
    CHECK(inst.size() == 8);
    for (const auto& x : inst) CHECK(x.a == 1);

    spec.fixed_a = 5;  // reduced mod 12, but 5 > 3 fails for q = 3
    CHECK_THROWS_AS(expand_instances(spec), InvalidResidueError);
    spec.q_values = {12};
    CHECK(expand_instances(spec).size() == 4);
    spec.fixed_a = 4;  // gcd(4, 12) != 1
    CHECK_THROWS_AS(expand_instances(spec), InvalidResidueError);
}

TEST_CASE("sampled residues are reproducible and reduced") {
    SweepSpec spec;
    spec.q_values = {101};
    spec.P_values = {50};
    spec.S_values = {50, 60};
    spec.a_policy = APolicy::Sample;
    spec.sample_n = 7;
    spec.seed = 42;

    auto one = expand_instances(spec);
    auto two = expand_instances(spec);
    REQUIRE(one.size() == 14);
    for (std::size_t i = 0; i < one.size(); ++i)
        REQUIRE(one[i].a == two[i].a);
    // same residues in both S-cells
    std::set<std::uint64_t> first, second;
    for (const auto& x : one)
        (x.S == 50 ? first : second).insert(x.a);
    CHECK(first == second);
    CHECK(first.size() == 7);
    for (std::uint64_t a : first)
        CHECK(std::gcd(a, std::uint64_t{101}) == 1);

    auto residues_of = [](const std::vector<ProblemInstance>& v) {
        std::set<std::uint64_t> s;
        for (const auto& x : v) s.insert(x.a);
        return s;
    };
    auto other_seed = spec;
    other_seed.seed = 43;
    CHECK(residues_of(expand_instances(other_seed)) != residues_of(one));

    // phi(q) <= sample_n degenerates to all reduced residues
    SweepSpec tiny;
    tiny.q_values = {12};
    tiny.P_values = {50};
    tiny.S_values = {50};
    tiny.a_policy = APolicy::Sample;
    tiny.sample_n = 10;
    auto all = expand_instances(tiny);
    REQUIRE(all.size() == 4);
    CHECK(all[0].a == 1);
    CHECK(all[3].a == 11);
}

TEST_CASE("instance cap") {
    auto spec = small_spec();
    spec.max_instances = 23;
    CHECK_THROWS_AS(expand_instances(spec), CapacityError);
    spec.max_instances = 24;
    CHECK_NOTHROW(expand_instances(spec));
    try {
        spec.max_instances = 5;
        expand_instances(spec);
        FAIL("expected CapacityError");
    } catch (const CapacityError& e) {
        CHECK(std::string(e.what()).find("24") != std::string::npos);
    }
}

TEST_CASE("rows agree with build_report") {
    auto spec = small_spec();
    auto rows = run_sweep(spec, tables());
    auto inst = expand_instances(spec);
    REQUIRE(rows.size() == inst.size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
        auto rep = build_report(inst[i], spec.cfg, tables());
        CAPTURE(i);
        REQUIRE(rows[i].a == inst[i].a);
        REQUIRE(rows[i].q == inst[i].q);
        REQUIRE(rows[i].exact == rep.exact);
        REQUIRE(rows[i].main_term == rep.main);
        REQUIRE(rows[i].abs_error == rep.abs_error);
        REQUIRE(rows[i].envelope == rep.envelope);
        REQUIRE(rows[i].normalized_error == rep.normalized_error);
        REQUIRE(rows[i].D == rep.D);
        REQUIRE(rows[i].regime == rep.regime);
        REQUIRE(rows[i].elapsed_ms >= 0.0);
    }
}

TEST_CASE("threaded runs match single-threaded runs") {
    auto spec = small_spec();
    auto seq = run_sweep(spec, tables());
    spec.threads = 4;
    auto par = run_sweep(spec, tables());
    CHECK(rows_equal_ignoring_time(seq, par));
}

TEST_CASE("csv round-trip is byte-identical") {
    auto rows = run_sweep(small_spec(), tables());
    std::string text = render_csv(rows);
    auto parsed = parse_csv(text);
    REQUIRE(parsed.size() == rows.size());
    // integers survive exactly; reals to the rendered 12 digits
    for (std::size_t i = 0; i < rows.size(); ++i) {
        REQUIRE(parsed[i].a == rows[i].a);
        REQUIRE(parsed[i].q == rows[i].q);
        REQUIRE(parsed[i].P == rows[i].P);
        REQUIRE(parsed[i].S == rows[i].S);
        REQUIRE(parsed[i].regime == rows[i].regime);
        REQUIRE(parsed[i].exact == rows[i].exact);
        REQUIRE(parsed[i].main_term ==
                Approx(rows[i].main_term).epsilon(1e-10));
        REQUIRE(parsed[i].normalized_error ==
                Approx(rows[i].normalized_error).epsilon(1e-10));
    }
    CHECK(render_csv(parsed) == text);

    std::string head = text.substr(0, text.find('\n'));
    CHECK(head ==
          "a,q,P,S,regime,exact,main_term,abs_error,envelope,normalized_error,"
          "D,elapsed_ms");
}

TEST_CASE("csv parser rejects malformed input") {
    CHECK_THROWS_AS(parse_csv(""), Error);
    CHECK_THROWS_AS(parse_csv("a,q,P,S\n1,3,10,10\n"), Error);
    auto rows = run_sweep(small_spec(), tables());
    std::string text = render_csv(rows);
    CHECK_THROWS_AS(parse_csv(text + "1,2,3\n"), Error);
    CHECK_THROWS_AS(
        parse_csv(text + "1,3,10,10,Bogus,7,5,2,10.5,0.19,3.16,0.1\n"), Error);
}

TEST_CASE("json output") {
    SweepSpec spec;
    spec.q_values = {3};
    spec.P_values = {10};
    spec.S_values = {10};
    auto rows = run_sweep(spec, tables());
    auto doc = nlohmann::json::parse(render_json(rows));
    REQUIRE(doc.is_array());
    REQUIRE(doc.size() == 2);
    CHECK(doc[0]["a"] == 1);
    CHECK(doc[0]["q"] == 3);
    CHECK(doc[0]["exact"] == 7);
    CHECK(doc[0]["regime"] == "SmallQ");
    CHECK(doc[0]["main_term"].get<double>() == Approx(5.0).epsilon(1e-12));
    // key order is fixed
    std::string text = render_json(rows);
    CHECK(text.find("\"a\"") < text.find("\"q\""));
    CHECK(text.find("\"exact\"") < text.find("\"main_term\""));
}

TEST_CASE("sweep surfaces worker errors") {
    SweepSpec spec;
    spec.q_values = {3};
    spec.P_values = {10, 50000};  // beyond tables().limit
    spec.S_values = {10};
    CHECK_THROWS_AS(run_sweep(spec, tables()), Error);
}
