#pragma once

// Self-verification suites shared by the `verify` CLI subcommand and the
// acceptance tests: randomized commutation identities, the critical-phase
// guarantee, Monte-Carlo vs analytic Haar averages, closed-form asymptotes,
// heatmap reference points, QFI identities, and the Lindblad recovery study.
// The discrepancy report prints oracle values next to formulas that are
// internally inconsistent as printed; those are never asserted.

#include <cstdint>
#include <string>
#include <vector>

namespace nonlin {

struct CheckResult {
  std::string name;
  bool pass = false;
  std::string detail;
};

struct VerifyOptions {
  bool full = false;
  std::uint64_t seed = 20250809;
};

CheckResult check_commutation_identity(std::uint64_t seed, int tuples);
CheckResult check_phi_independence(std::uint64_t seed, int tuples);
CheckResult check_critical_phase_guarantee(std::uint64_t seed, int samples_per_cell);
CheckResult check_haar_average_mc(std::uint64_t seed, int tuples,
                                  std::size_t samples);
CheckResult check_kerr_closed_form();
CheckResult check_fig2_heatmap(bool full);
CheckResult check_qfi_identities(std::uint64_t seed, int tuples);
CheckResult check_qfi_difference_scaling();
std::vector<CheckResult> check_lindblad_recovery(bool full);
std::vector<CheckResult> discrepancy_report(std::uint64_t seed);

// Full list in criterion order; `full` selects acceptance-scale sizes.
std::vector<CheckResult> run_verification(const VerifyOptions& options);

}  // namespace nonlin
