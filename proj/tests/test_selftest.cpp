#include <doctest.h>

#include "psprod/selftest.hpp"

using namespace psprod;

TEST_CASE("full selftest passes on fresh tables") {
    auto results = run_selftest();
    REQUIRE(results.size() == 12);
    for (const auto& r : results) {
        CAPTURE(r.name);
        CAPTURE(r.detail);
        REQUIRE(!r.name.empty());
        REQUIRE(r.pass);
    }
}

TEST_CASE("corrupted tables are detected") {
    SieveTables t = build_sieve(300);
    SUBCASE("bad mobius value, large n") {
        t.mobius[30] = 0;  // mu(30) = -1
        CHECK(!check_mobius_divisor_sum(t, 300).pass);
    }
    SUBCASE("bad mobius value, small d") {
        t.mobius[2] = 1;  // mu(2) = -1
        CHECK(!check_squarefree_identity(t, 300).pass);
        CHECK(!check_mobius_divisor_sum(t, 300).pass);
    }
    SUBCASE("bad squarefree bit") {
        t.squarefree[50] = true;  // 50 = 2 * 5^2
        CHECK(!check_squarefree_identity(t, 300).pass);
    }
    SUBCASE("missing prime") {
        t.primes.erase(t.primes.begin() + 5);  // drop 13
        CHECK(!check_segmented_consistency(t, 300).pass);
    }
}
