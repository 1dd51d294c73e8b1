#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "psprod/sieve.hpp"

namespace psprod {

struct CheckResult {
    std::string name;
    bool pass = false;
    std::string detail;  // counts, worst case, or failure description
};

// Individual fast invariant checks, each runnable against caller-supplied
// tables (so a harness can verify that corrupted tables are detected).
CheckResult check_squarefree_identity(const SieveTables& tables, std::uint64_t limit);
CheckResult check_mobius_divisor_sum(const SieveTables& tables, std::uint64_t limit);
CheckResult check_segmented_consistency(const SieveTables& tables, std::uint64_t limit);
CheckResult check_inverse_roundtrip(const SieveTables& tables);
CheckResult check_mobius_decomposition(const SieveTables& tables);
CheckResult check_partition_identity(const SieveTables& tables);
CheckResult check_coprime_pair_remainder(const SieveTables& tables);
CheckResult check_squarefree_density(const SieveTables& tables);
CheckResult check_kloosterman_bounds(const SieveTables& tables);
CheckResult check_parseval(const SieveTables& tables);
CheckResult check_pair_density_ratio(const SieveTables& tables);
CheckResult check_csv_roundtrip(const SieveTables& tables);

// The full suite at small scales (builds its own tables, a few seconds).
std::vector<CheckResult> run_selftest();

} // namespace psprod
