// Command-line front end: sweep dispatch, the verification suite, and
// single-point fidelity evaluations for desk checks.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "nonlin/lindblad.hpp"
#include "nonlin/metrics.hpp"
#include "nonlin/serialize.hpp"
#include "nonlin/sweeps.hpp"
#include "nonlin/verify.hpp"
#include "nonlin/version.hpp"

namespace {

constexpr double kPi = 3.14159265358979323846;

// Radian values, with pi-rational literals accepted: "pi", "pi/2000",
// "3pi/4", "0.5pi", "-pi/3".
double parse_angle(const std::string& text) {
  auto pos = text.find("pi");
  if (pos == std::string::npos) return std::stod(text);
  std::string coeff = text.substr(0, pos);
  std::string rest = text.substr(pos + 2);
  double value = kPi;
  if (!coeff.empty() && coeff != "+" && coeff != "-")
    value *= std::stod(coeff);
  else if (coeff == "-")
    value = -value;
  if (!rest.empty()) {
    if (rest[0] != '/') throw std::invalid_argument("bad angle '" + text + "'");
    value /= std::stod(rest.substr(1));
  }
  return value;
}

std::vector<int> parse_labels(const std::string& text) {
  std::vector<int> labels;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) labels.push_back(std::stoi(item));
  if (labels.empty()) throw std::invalid_argument("empty state spec");
  return labels;
}

nonlin::SweepConfig config_from(const std::string& experiment,
                                const std::string& config_path,
                                const nlohmann::json& overrides) {
  nlohmann::json j;
  if (!config_path.empty()) {
    std::ifstream in(config_path);
    if (!in) throw std::invalid_argument("cannot read config '" + config_path + "'");
    in >> j;
    if (j.contains("experiment") && j["experiment"] != experiment)
      throw std::invalid_argument("config experiment mismatch: expected '" +
                                  experiment + "'");
  }
  j["experiment"] = experiment;
  for (const auto& [key, value] : overrides.items()) {
    if (key == "grids") {
      for (const auto& [gk, gv] : value.items()) j["grids"][gk] = gv;
    } else {
      j[key] = value;
    }
  }
  return nonlin::parse_config(j);
}

void write_outputs(const nonlin::ResultTable& table, const std::string& path,
                   bool also_json) {
  table.write_csv(path);
  std::printf("wrote %zu rows to %s\n", table.row_count(), path.c_str());
  if (also_json) {
    std::string json_path = path + ".json";
    if (path.size() > 4 && path.substr(path.size() - 4) == ".csv")
      json_path = path.substr(0, path.size() - 4) + ".json";
    table.write_json(json_path);
    std::printf("wrote JSON mirror to %s\n", json_path.c_str());
  }
}

std::string contour_path_for(const std::string& path) {
  if (path.size() > 4 && path.substr(path.size() - 4) == ".csv")
    return path.substr(0, path.size() - 4) + ".contour.csv";
  return path + ".contour.csv";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"noisy nonlinear metrology simulator"};
  app.set_version_flag("--version", nonlin::kVersion);
  app.require_subcommand(1);

  std::string config_path;
  std::string out_path;
  bool also_json = false;
  std::uint64_t seed = 1;

  // heatmap
  auto* heatmap = app.add_subcommand("heatmap", "average-fidelity (z, k) grid");
  heatmap->add_option("--config", config_path, "JSON config file");
  heatmap->add_option("--out", out_path, "output CSV path");
  heatmap->add_flag("--json", also_json, "also write a JSON mirror");
  heatmap->add_option("--seed", seed, "RNG seed");
  std::string hm_phi;
  double hm_zmin = 1.0, hm_zmax = 3.0, hm_zstep = 0.02;
  double hm_kmin = -10.0, hm_kmax = 10.0, hm_kstep = 0.1;
  int hm_dim = 201;
  double hm_eps = 0.1;
  bool hm_grid_flags = false;
  heatmap->add_option("--phi", hm_phi, "encoded phase (accepts pi literals)");
  heatmap->add_option("--dim", hm_dim, "Hilbert-space dimension");
  heatmap->add_option("--epsilon", hm_eps, "contour level 1 - epsilon");
  heatmap->add_option("--z-min", hm_zmin)->group("grid");
  heatmap->add_option("--z-max", hm_zmax)->group("grid");
  heatmap->add_option("--z-step", hm_zstep)->group("grid");
  heatmap->add_option("--k-min", hm_kmin)->group("grid");
  heatmap->add_option("--k-max", hm_kmax)->group("grid");
  heatmap->add_option("--k-step", hm_kstep)->group("grid");

  // critical-phase
  auto* critical = app.add_subcommand("critical-phase",
                                      "critical-phase bound property sweep");
  critical->add_option("--config", config_path);
  critical->add_option("--out", out_path);
  critical->add_flag("--json", also_json);
  critical->add_option("--seed", seed);
  std::vector<double> cp_z, cp_k, cp_eps;
  int cp_dim = 0, cp_samples = 0;
  critical->add_option("--z", cp_z, "nonlinearity exponents");
  critical->add_option("--k", cp_k, "shift magnitudes");
  critical->add_option("--epsilon", cp_eps, "error budgets (each <= 0.25)");
  critical->add_option("--dim", cp_dim, "support window dimension");
  critical->add_option("--samples", cp_samples, "Haar samples per cell");

  // qfi
  auto* qfi_cmd = app.add_subcommand("qfi", "nuisance-parameter QFI curves");
  qfi_cmd->add_option("--config", config_path);
  qfi_cmd->add_option("--out", out_path);
  qfi_cmd->add_flag("--json", also_json);
  qfi_cmd->add_option("--seed", seed);
  std::vector<double> qf_z, qf_k;
  int qf_m = -1, qf_n = -1;
  qfi_cmd->add_option("--z", qf_z);
  qfi_cmd->add_option("--k", qf_k);
  qfi_cmd->add_option("--m", qf_m, "lower probe label");
  qfi_cmd->add_option("--n", qf_n, "upper probe label");

  // lindblad
  auto* lind = app.add_subcommand("lindblad", "loss + recovery fidelity curves");
  lind->add_option("--config", config_path);
  lind->add_option("--out", out_path);
  lind->add_flag("--json", also_json);
  lind->add_option("--seed", seed);
  std::vector<double> lb_z;
  std::vector<std::string> lb_phi;
  double lb_kappa = -1.0, lb_t = -1.0;
  int lb_cutoff = 0;
  lind->add_option("--z", lb_z);
  lind->add_option("--phi", lb_phi, "encoded phases (default: per-z grid)");
  lind->add_option("--kappa", lb_kappa, "loss rate");
  lind->add_option("--t", lb_t, "evolution time");
  lind->add_option("--cutoff", lb_cutoff, "Fock cutoff (>= 24)");

  // fidelity
  auto* fid = app.add_subcommand("fidelity", "single emergent-fidelity value");
  std::string fid_g = "kerr", fid_phi = "0", fid_state = "0,1";
  int fid_k = 1, fid_dim = 0;
  fid->add_option("--g", fid_g, "generator spec, e.g. power:2 or plateau:4:2");
  fid->add_option("--k", fid_k, "shift error");
  fid->add_option("--phi", fid_phi, "encoded phase (accepts pi literals)");
  fid->add_option("--state", fid_state, "labels of an equal superposition");
  fid->add_option("--dim", fid_dim, "space dimension (default: fits the state)");

  // verify
  auto* verify = app.add_subcommand("verify", "run the self-verification suite");
  bool verify_full = false;
  std::uint64_t verify_seed = 20250809;
  verify->add_flag("--full", verify_full, "acceptance-scale suite");
  verify->add_option("--seed", verify_seed, "suite seed");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*heatmap) {
      for (const char* flag : {"--z-min", "--z-max", "--z-step", "--k-min",
                               "--k-max", "--k-step"})
        if (heatmap->count(flag)) hm_grid_flags = true;
      nlohmann::json overrides = {{"seed", seed}};
      if (!out_path.empty()) overrides["output_path"] = out_path;
      nlohmann::json grids = nlohmann::json::object();
      if (hm_grid_flags) {
        std::vector<double> zs, ks;
        for (double z = hm_zmin; z <= hm_zmax + 1e-12; z += hm_zstep) zs.push_back(z);
        for (double k = hm_kmin; k <= hm_kmax + 1e-12; k += hm_kstep) ks.push_back(k);
        grids["z"] = zs;
        grids["k"] = ks;
      }
      if (heatmap->count("--dim")) grids["dim"] = std::vector<double>{double(hm_dim)};
      if (heatmap->count("--phi"))
        grids["phi"] = std::vector<double>{parse_angle(hm_phi)};
      if (heatmap->count("--epsilon")) grids["epsilon"] = std::vector<double>{hm_eps};
      if (!grids.empty()) overrides["grids"] = grids;
      nonlin::SweepConfig config = config_from("heatmap", config_path, overrides);

      nonlin::ResultTable table = nonlin::run_fidelity_heatmap(config);
      nonlin::ResultTable contour =
          nonlin::heatmap_contour(table, config.scalar("epsilon"));
      write_outputs(table, config.output_path, also_json);
      contour.write_csv(contour_path_for(config.output_path));
      std::printf("wrote %zu contour rows to %s\n", contour.row_count(),
                  contour_path_for(config.output_path).c_str());
      return 0;
    }

    if (*critical) {
      nlohmann::json overrides = {{"seed", seed}};
      if (!out_path.empty()) overrides["output_path"] = out_path;
      nlohmann::json grids = nlohmann::json::object();
      if (!cp_z.empty()) grids["z"] = cp_z;
      if (!cp_k.empty()) grids["k"] = cp_k;
      if (!cp_eps.empty()) grids["epsilon"] = cp_eps;
      if (critical->count("--dim")) grids["dim"] = std::vector<double>{double(cp_dim)};
      if (critical->count("--samples"))
        grids["samples"] = std::vector<double>{double(cp_samples)};
      if (!grids.empty()) overrides["grids"] = grids;
      nonlin::SweepConfig config =
          config_from("critical-phase", config_path, overrides);

      nonlin::ResultTable table = nonlin::run_critical_phase(config);
      write_outputs(table, config.output_path, also_json);
      bool all_pass = true;
      for (const auto& row : table.rows())
        all_pass = all_pass && row[table.column_index("pass")] > 0.5;
      std::printf("critical-phase sweep: %s\n", all_pass ? "all cells pass" : "FAIL");
      return all_pass ? 0 : 1;
    }

    if (*qfi_cmd) {
      nlohmann::json overrides = {{"seed", seed}};
      if (!out_path.empty()) overrides["output_path"] = out_path;
      nlohmann::json grids = nlohmann::json::object();
      if (!qf_z.empty()) grids["z"] = qf_z;
      if (!qf_k.empty()) grids["k"] = qf_k;
      if (qf_m >= 0) grids["m"] = std::vector<double>{double(qf_m)};
      if (qf_n >= 0) grids["n"] = std::vector<double>{double(qf_n)};
      if (!grids.empty()) overrides["grids"] = grids;
      nonlin::SweepConfig config = config_from("qfi", config_path, overrides);
      write_outputs(nonlin::run_qfi_curves(config), config.output_path, also_json);
      return 0;
    }

    if (*lind) {
      nlohmann::json overrides = {{"seed", seed}};
      if (!out_path.empty()) overrides["output_path"] = out_path;
      nlohmann::json grids = nlohmann::json::object();
      if (!lb_z.empty()) grids["z"] = lb_z;
      if (!lb_phi.empty()) {
        std::vector<double> phis;
        for (const auto& p : lb_phi) phis.push_back(parse_angle(p));
        grids["phi"] = phis;
      }
      if (lb_kappa >= 0.0) grids["kappa"] = std::vector<double>{lb_kappa};
      if (lb_t > 0.0) grids["t"] = std::vector<double>{lb_t};
      if (lb_cutoff > 0) grids["cutoff"] = std::vector<double>{double(lb_cutoff)};
      if (!grids.empty()) overrides["grids"] = grids;
      nonlin::SweepConfig config = config_from("lindblad", config_path, overrides);
      write_outputs(nonlin::run_lindblad_curves(config), config.output_path,
                    also_json);
      return 0;
    }

    if (*fid) {
      nonlin::GeneratorSpec g = nonlin::GeneratorSpec::parse(fid_g);
      std::vector<int> labels = parse_labels(fid_state);
      int top = 0;
      for (int n : labels) top = std::max(top, n);
      int dim = fid_dim > 0 ? fid_dim : top + std::abs(fid_k) + 5;
      nonlin::SpectrumSet space = nonlin::SpectrumSet::bosonic(dim - 1);
      nonlin::PureState psi =
          nonlin::PureState::uniform_superposition(space, labels);
      double value =
          nonlin::emergent_fidelity(g, fid_k, parse_angle(fid_phi), psi);
      std::printf("%.12g\n", value);
      return 0;
    }

    if (*verify) {
      auto results =
          nonlin::run_verification(nonlin::VerifyOptions{verify_full, verify_seed});
      bool all_pass = true;
      for (const auto& r : results) {
        std::printf("%-34s %s  %s\n", r.name.c_str(),
                    r.pass ? "PASS" : "FAIL", r.detail.c_str());
        all_pass = all_pass && r.pass;
      }
      std::printf("verify: %s (%zu checks)\n", all_pass ? "PASS" : "FAIL",
                  results.size());
      return all_pass ? 0 : 1;
    }
  } catch (const std::invalid_argument& e) {
    std::fprintf(stderr, "usage error: %s\n", e.what());
    return 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 2;
}
