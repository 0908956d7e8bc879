#include "nonlin/sweeps.hpp"

#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <limits>
#include <set>
#include <stdexcept>

#include "nonlin/lindblad.hpp"
#include "nonlin/metrics.hpp"
#include "nonlin/parallel.hpp"
#include "nonlin/qfi.hpp"
#include "nonlin/rng.hpp"
#include "nonlin/version.hpp"

namespace nonlin {

namespace {

constexpr double kPi = 3.14159265358979323846;

std::vector<double> linspace(double lo, double hi, int count) {
  std::vector<double> out(count);
  for (int i = 0; i < count; ++i)
    out[i] = lo + (hi - lo) * i / (count - 1);
  return out;
}

std::vector<double> geomspace(double lo, double hi, int count) {
  std::vector<double> out(count);
  double ratio = std::pow(hi / lo, 1.0 / (count - 1));
  double v = lo;
  for (int i = 0; i < count; ++i, v *= ratio) out[i] = v;
  out.back() = hi;
  return out;
}

std::vector<double> stepped(double lo, double hi, double step) {
  std::vector<double> out;
  int count = static_cast<int>(std::llround((hi - lo) / step)) + 1;
  out.reserve(count);
  for (int i = 0; i < count; ++i) out.push_back(lo + i * step);
  return out;
}

int as_int(double v, const std::string& key) {
  if (std::abs(v - std::round(v)) > 1e-9)
    throw std::invalid_argument("grid '" + key + "' expects integers, got " +
                                std::to_string(v));
  return static_cast<int>(std::llround(v));
}

const std::set<std::string>& allowed_grids(const std::string& experiment) {
  static const std::map<std::string, std::set<std::string>> allowed = {
      {"heatmap", {"z", "k", "dim", "phi", "epsilon"}},
      {"critical-phase", {"z", "k", "epsilon", "dim", "samples"}},
      {"qfi", {"z", "k", "m", "n", "dim"}},
      {"lindblad", {"z", "phi", "kappa", "t", "cutoff", "steps"}},
      {"verify", {}},
  };
  auto it = allowed.find(experiment);
  if (it == allowed.end())
    throw std::invalid_argument("unknown experiment '" + experiment + "'");
  return it->second;
}

void fill_default(SweepConfig& c, const std::string& key,
                  std::vector<double> values) {
  if (!c.grids.count(key)) c.grids[key] = std::move(values);
}

void fill_defaults(SweepConfig& c) {
  if (c.experiment == "heatmap") {
    fill_default(c, "z", stepped(1.0, 3.0, 0.02));
    fill_default(c, "k", stepped(-10.0, 10.0, 0.1));
    fill_default(c, "dim", {201});
    fill_default(c, "phi", {kPi / 2000.0});
    fill_default(c, "epsilon", {0.1});
    if (c.output_path.empty()) c.output_path = "heatmap.csv";
  } else if (c.experiment == "critical-phase") {
    fill_default(c, "z", {1.0, 1.5, 2.0, 3.0});
    fill_default(c, "k", {1, 2, 3});
    fill_default(c, "epsilon", {0.01});
    fill_default(c, "dim", {101});
    fill_default(c, "samples", {112});
    if (c.output_path.empty()) c.output_path = "critical_phase.csv";
  } else if (c.experiment == "qfi") {
    fill_default(c, "z", {1.0, 2.0, 3.0});
    fill_default(c, "k", {0, 1, 2, 3, 4, 5});
    fill_default(c, "m", {10});
    fill_default(c, "n", {50});
    fill_default(c, "dim", {61});
    if (c.output_path.empty()) c.output_path = "qfi_curves.csv";
  } else if (c.experiment == "lindblad") {
    fill_default(c, "z", {1.0, 2.0, 3.0, 4.0});
    fill_default(c, "phi", {});  // empty: per-z default grid
    fill_default(c, "kappa", {0.01});
    fill_default(c, "t", {1.0});
    fill_default(c, "cutoff", {30});
    fill_default(c, "steps", {1000});
    if (c.output_path.empty()) c.output_path = "lindblad_curves.csv";
  }
}

void validate(const SweepConfig& c) {
  const auto& allowed = allowed_grids(c.experiment);
  for (const auto& [key, values] : c.grids) {
    if (!allowed.count(key))
      throw std::invalid_argument("unknown grid key '" + key + "' for experiment '" +
                                  c.experiment + "'");
    if (values.empty() && key != "phi")
      throw std::invalid_argument("grid '" + key + "' must not be empty");
    for (double v : values) {
      if (key == "z" && !(v >= 1.0))
        throw std::invalid_argument("grid 'z' requires z >= 1");
      if (key == "dim" && as_int(v, key) < 2)
        throw std::invalid_argument("grid 'dim' requires dim >= 2");
      if (key == "epsilon") {
        double cap = c.experiment == "critical-phase" ? 0.25 : 1.0;
        if (!(v > 0.0) || v > cap)
          throw std::invalid_argument("grid 'epsilon' outside (0, " +
                                      std::to_string(cap) + "]");
      }
      if (key == "samples" && as_int(v, key) < 1)
        throw std::invalid_argument("grid 'samples' requires >= 1");
      if (key == "kappa" && v < 0.0)
        throw std::invalid_argument("grid 'kappa' requires kappa >= 0");
      if (key == "t" && !(v > 0.0))
        throw std::invalid_argument("grid 't' requires t > 0");
      if (key == "cutoff" && as_int(v, key) < 24)
        throw std::invalid_argument("grid 'cutoff' requires >= 24 (code support)");
      if (key == "steps" && as_int(v, key) < 100)
        throw std::invalid_argument("grid 'steps' requires >= 100");
      if ((key == "m" || key == "n") && as_int(v, key) < 0)
        throw std::invalid_argument("grid '" + key + "' requires >= 0");
    }
  }
}

std::string timestamp_utc() {
  auto now = std::chrono::system_clock::now();
  std::time_t t = std::chrono::system_clock::to_time_t(now);
  char buf[32];
  std::tm tm{};
  gmtime_r(&t, &tm);
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

}  // namespace

const std::vector<double>& SweepConfig::grid(const std::string& name) const {
  auto it = grids.find(name);
  if (it == grids.end())
    throw std::invalid_argument("missing grid '" + name + "'");
  return it->second;
}

double SweepConfig::scalar(const std::string& name) const {
  const auto& g = grid(name);
  if (g.size() != 1)
    throw std::invalid_argument("grid '" + name + "' must hold exactly one value");
  return g[0];
}

SweepConfig parse_config(const nlohmann::json& j) {
  if (!j.is_object()) throw std::invalid_argument("config must be a JSON object");
  for (const auto& [key, value] : j.items()) {
    (void)value;
    if (key != "experiment" && key != "grids" && key != "seed" &&
        key != "output_path")
      throw std::invalid_argument("unknown config key '" + key + "'");
  }
  SweepConfig c;
  c.experiment = j.at("experiment").get<std::string>();
  allowed_grids(c.experiment);  // validates the experiment name
  if (j.contains("grids")) {
    if (!j["grids"].is_object())
      throw std::invalid_argument("'grids' must be an object of lists");
    for (const auto& [key, value] : j["grids"].items()) {
      std::vector<double> list;
      if (value.is_array())
        list = value.get<std::vector<double>>();
      else if (value.is_number())
        list = {value.get<double>()};
      else
        throw std::invalid_argument("grid '" + key + "' must be a number or list");
      c.grids[key] = std::move(list);
    }
  }
  if (j.contains("seed")) c.seed = j["seed"].get<std::uint64_t>();
  if (j.contains("output_path")) c.output_path = j["output_path"].get<std::string>();
  fill_defaults(c);
  validate(c);
  return c;
}

nlohmann::json emit_config(const SweepConfig& config) {
  nlohmann::json grids = nlohmann::json::object();
  for (const auto& [key, values] : config.grids) grids[key] = values;
  return {{"experiment", config.experiment},
          {"grids", std::move(grids)},
          {"seed", config.seed},
          {"output_path", config.output_path}};
}

std::string make_metadata(const SweepConfig& config, const std::string& notes) {
  nlohmann::json meta = {{"config", emit_config(config)},
                         {"version", kVersion},
                         {"timestamp", timestamp_utc()}};
  if (!notes.empty()) meta["notes"] = notes;
  return meta.dump();
}

ResultTable run_fidelity_heatmap(const SweepConfig& config) {
  const auto& zs = config.grid("z");
  const auto& ks = config.grid("k");
  int dim = as_int(config.scalar("dim"), "dim");
  double phi = config.scalar("phi");

  std::size_t cells = zs.size() * ks.size();
  std::fprintf(stderr, "heatmap: %zu cells (dim=%d, phi=%.6g)\n", cells, dim, phi);

  std::vector<double> values(cells);
  parallel_for(cells, [&](std::size_t i) {
    double z = zs[i / ks.size()];
    double k = ks[i % ks.size()];
    values[i] = average_fidelity(GeneratorSpec::power_law(z), k, phi, dim);
  });

  ResultTable table({"z", "k", "avg_fidelity"});
  for (std::size_t i = 0; i < cells; ++i)
    table.add_row({zs[i / ks.size()], ks[i % ks.size()], values[i]});
  table.set_metadata(make_metadata(config));
  return table;
}

ResultTable heatmap_contour(const ResultTable& heatmap, double epsilon) {
  const double level = 1.0 - epsilon;
  ResultTable contour({"z", "k", "level"});

  std::size_t zi = heatmap.column_index("z");
  std::size_t ki = heatmap.column_index("k");
  std::size_t fi = heatmap.column_index("avg_fidelity");

  std::size_t row = 0;
  const auto& rows = heatmap.rows();
  while (row < rows.size()) {
    double z = rows[row][zi];
    std::vector<std::pair<double, double>> half;  // (k, F) for k >= 0
    std::size_t r = row;
    for (; r < rows.size() && rows[r][zi] == z; ++r)
      if (rows[r][ki] >= 0.0) half.emplace_back(rows[r][ki], rows[r][fi]);
    row = r;
    for (std::size_t i = 0; i + 1 < half.size(); ++i) {
      auto [k0, f0] = half[i];
      auto [k1, f1] = half[i + 1];
      if (f0 >= level && f1 < level) {
        double k_cross = k0 + (f0 - level) / (f0 - f1) * (k1 - k0);
        contour.add_row({z, k_cross, level});
        break;
      }
    }
  }
  contour.set_metadata(heatmap.metadata());
  return contour;
}

ResultTable run_critical_phase(const SweepConfig& config) {
  const auto& zs = config.grid("z");
  const auto& ks = config.grid("k");
  const auto& epss = config.grid("epsilon");
  int dim = as_int(config.scalar("dim"), "dim");
  int samples = as_int(config.scalar("samples"), "samples");
  const int window_top = dim - 1;

  struct Cell {
    double z, k, eps;
  };
  std::vector<Cell> cells;
  for (double z : zs)
    for (double k : ks)
      for (double eps : epss) cells.push_back({z, k, eps});
  std::fprintf(stderr, "critical-phase: %zu cells x %d samples\n", cells.size(),
               samples);

  std::vector<std::array<double, 3>> results(cells.size());
  parallel_for(cells.size(), [&](std::size_t i) {
    const Cell& cell = cells[i];
    int k = as_int(cell.k, "k");
    GeneratorSpec g = GeneratorSpec::power_law(cell.z);
    CriticalPhaseReport rep = critical_phase_bound(g, k, cell.eps, window_top);
    // Embed below the window so the shift cannot delete amplitude.
    SpectrumSet space = SpectrumSet::bosonic(window_top + std::max(k, 0));
    int lo = std::max(-k, 0);
    double min_f = 1.0;
    for (int s = 0; s < samples; ++s) {
      PureState psi = haar_sample_window(
          space, lo, window_top, splitmix_combine(config.seed, i * 100003 + s));
      min_f = std::min(min_f,
                       overlap_before_after(g, k, rep.bound_phi, psi));
    }
    double pass = min_f >= 1.0 - cell.eps - 10.0 * cell.eps * cell.eps ? 1.0 : 0.0;
    results[i] = {rep.bound_phi, min_f, pass};
  });

  ResultTable table({"z", "k", "epsilon", "bound_phi", "min_fidelity_at_bound",
                     "pass"});
  for (std::size_t i = 0; i < cells.size(); ++i)
    table.add_row({cells[i].z, cells[i].k, cells[i].eps, results[i][0],
                   results[i][1], results[i][2]});
  table.set_metadata(make_metadata(config));
  return table;
}

ResultTable run_qfi_curves(const SweepConfig& config) {
  const auto& zs = config.grid("z");
  const auto& ks = config.grid("k");
  int m_label = as_int(config.scalar("m"), "m");
  int n_label = as_int(config.scalar("n"), "n");
  int dim = as_int(config.scalar("dim"), "dim");
  if (m_label >= n_label)
    throw std::invalid_argument("qfi curves need m < n");

  int k_max = 0;
  for (double k : ks) k_max = std::max(k_max, as_int(k, "k"));
  if (n_label + k_max > dim - 1)
    throw std::invalid_argument("qfi curves need dim > n + max(k)");

  std::fprintf(stderr, "qfi: %zu cells (m=%d, n=%d)\n", zs.size() * ks.size(),
               m_label, n_label);

  SpectrumSet space = SpectrumSet::bosonic(dim - 1);
  const int labels[] = {m_label, n_label};
  PureState psi = PureState::uniform_superposition(space, labels);

  ResultTable table({"z", "k", "i_phiphi", "i_thetatheta", "i_phitheta",
                     "effective_J_matrix", "printed_closed_form"});
  for (double z : zs) {
    GeneratorSpec g = GeneratorSpec::power_law(z);
    for (double kd : ks) {
      int k = as_int(kd, "k");
      NuisanceQfi nq = qfi_nuisance(g, k, psi);
      table.add_row({z, kd, nq.matrix.i_phiphi, nq.matrix.i_thetatheta,
                     nq.matrix.i_phitheta, nq.effective,
                     nq.printed_closed_form.value_or(
                         std::numeric_limits<double>::quiet_NaN())});
    }
  }
  table.set_metadata(make_metadata(
      config,
      "two-point-support probes force effective_J_matrix = 0 through the "
      "covariance identity; printed_closed_form is reported for comparison only"));
  return table;
}

std::vector<double> lindblad_default_phi_grid(double z) {
  // Spread of the one-step phase increments g(n) - g(n-1) over the codeword
  // support sets where the recovered fidelity starts to drop.
  GeneratorSpec g = GeneratorSpec::power_law(z);
  double mean = 0.0, var = 0.0, binom = 1.0, total = 0.0;
  std::vector<double> w(9), d1(9);
  for (int p = 0; p <= 8; ++p) {
    if (p > 0) binom *= static_cast<double>(8 - p + 1) / p;
    w[p] = binom;
    total += binom;
    d1[p] = g.eval(3 * p) - g.eval(3 * p - 1);
  }
  for (int p = 0; p <= 8; ++p) mean += w[p] / total * d1[p];
  for (int p = 0; p <= 8; ++p)
    var += w[p] / total * (d1[p] - mean) * (d1[p] - mean);
  double spread = std::sqrt(var);
  if (spread < 1e-9) return linspace(0.0, 2.0, 9);
  double phi_star = 1.157 / spread;
  double lo = phi_star / 30.0;
  double hi = std::min(2.0, phi_star * 30.0);
  return geomspace(lo, hi, 13);
}

ResultTable run_lindblad_curves(const SweepConfig& config) {
  const auto& zs = config.grid("z");
  double kappa = config.scalar("kappa");
  double t = config.scalar("t");
  int cutoff = as_int(config.scalar("cutoff"), "cutoff");
  const auto& phi_override = config.grid("phi");

  SpectrumSet space = SpectrumSet::bosonic(cutoff);
  BinomialCode code = build_binomial_code(space);

  ResultTable merged({"phi", "z", "kappa", "fidelity_recovered",
                      "fidelity_unrecovered", "trace_error"});
  std::size_t total_points = 0;
  std::vector<std::vector<double>> grids;
  for (double z : zs) {
    grids.push_back(phi_override.empty() ? lindblad_default_phi_grid(z)
                                         : phi_override);
    total_points += grids.back().size();
  }
  std::fprintf(stderr, "lindblad: %zu curve points (kappa=%g, t=%g)\n",
               total_points, kappa, t);

  for (std::size_t zi = 0; zi < zs.size(); ++zi) {
    std::vector<double> omegas;
    for (double phi : grids[zi]) omegas.push_back(phi / t);
    merged.append_rows(recovered_fidelity_curve(
        GeneratorSpec::power_law(zs[zi]), omegas, kappa, t, code));
  }
  merged.set_metadata(make_metadata(config));
  return merged;
}

}  // namespace nonlin
