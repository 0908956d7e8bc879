#pragma once

// Declarative experiment grids and their runners: the (z, k) average-fidelity
// heatmap with its level-set contour, critical-phase property sweeps, QFI
// degradation curves, and Lindblad recovery curves.

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "json.hpp"
#include "nonlin/table.hpp"

namespace nonlin {

struct SweepConfig {
  std::string experiment;  // heatmap | critical-phase | qfi | lindblad | verify
  std::map<std::string, std::vector<double>> grids;
  std::uint64_t seed = 1;
  std::string output_path;

  bool operator==(const SweepConfig&) const = default;

  const std::vector<double>& grid(const std::string& name) const;
  double scalar(const std::string& name) const;  // single-valued grid entry
};

// Validated config with experiment defaults filled in. Unknown keys and
// out-of-range values are rejected by name.
SweepConfig parse_config(const nlohmann::json& j);
nlohmann::json emit_config(const SweepConfig& config);

// Metadata line content: config echo + code version + timestamp (+ notes).
std::string make_metadata(const SweepConfig& config,
                          const std::string& notes = "");

// Rows (z, k, avg_fidelity) over the configured grid at fixed dim and phi.
ResultTable run_fidelity_heatmap(const SweepConfig& config);

// F = 1 - epsilon level set of a heatmap table, one linearly interpolated
// k >= 0 crossing per z row that brackets the level. Columns (z, k, level).
ResultTable heatmap_contour(const ResultTable& heatmap, double epsilon);

// Rows (z, k, epsilon, bound_phi, min_fidelity_at_bound, pass) with the
// minimum taken over Haar samples embedded below the support window.
ResultTable run_critical_phase(const SweepConfig& config);

// Rows (z, k, i_phiphi, i_thetatheta, i_phitheta, effective_J_matrix,
// printed_closed_form) for the two-label probe (|M> + |N>)/sqrt(2).
ResultTable run_qfi_curves(const SweepConfig& config);

// Per-z recovered-fidelity curves merged into one table.
ResultTable run_lindblad_curves(const SweepConfig& config);

// Default phi grid for the Lindblad curves at nonlinearity z; spacing tracks
// the z-dependent onset of the fidelity drop.
std::vector<double> lindblad_default_phi_grid(double z);

}  // namespace nonlin
