#pragma once

// Generator functions g(n) for nonlinear phase encoding, the encoding unitary
// U_g(phi) = exp(-i phi g(n)), the emergent error V_k(phi) produced by pulling
// a shift error through the encoding, and finite differences Delta_k(n).

#include <optional>
#include <string>
#include <vector>

#include "nonlin/hilbert.hpp"

namespace nonlin {

class GeneratorSpec {
 public:
  enum class Kind { Linear, PowerLaw, Plateau, Table };

  static GeneratorSpec linear(double slope);
  static GeneratorSpec power_law(double z);  // z >= 1
  static GeneratorSpec kerr() { return power_law(2.0); }
  static GeneratorSpec plateau(int mu, int z);  // mu >= 1, z >= 1
  static GeneratorSpec table(std::vector<double> values);

  // Config-string forms: "linear:1.0", "power:2.5", "kerr", "plateau:4:2",
  // "table:0,1,4,9".
  static GeneratorSpec parse(const std::string& text);
  std::string str() const;

  Kind kind() const { return kind_; }
  double slope() const { return slope_; }
  double exponent() const { return z_; }
  int plateau_width() const { return mu_; }
  const std::vector<double>& table_values() const { return table_; }

  // PowerLaw exponent when this is a pure power law, else nullopt.
  std::optional<double> power_exponent() const;

  bool evaluable(double n) const;
  double eval(double n) const;           // g(n); throws std::domain_error
  long double eval_ld(long double n) const;
  double delta(double k, double n) const;  // g(n+k) - g(n)

  bool operator==(const GeneratorSpec&) const = default;

 private:
  GeneratorSpec(Kind kind) : kind_(kind) {}
  Kind kind_;
  double slope_ = 1.0;
  double z_ = 1.0;
  bool integer_z_ = true;
  int mu_ = 1;
  std::vector<double> table_;
};

// Phases[n] = -phi * g(n). Throws std::domain_error unless g is evaluable at
// every label of the space.
DiagonalPhaseProfile encoding_unitary(const GeneratorSpec& g, double phi,
                                      const SpectrumSet& space);

// Emergent error V_k(phi): phases[n] = -phi * (g(n) - g(n-k)). Labels where
// n - k leaves g's domain carry phase 0; the preceding shift has already
// deleted any amplitude they could touch.
DiagonalPhaseProfile emergent_error(const GeneratorSpec& g, int k, double phi,
                                    const SpectrumSet& space);

}  // namespace nonlin
