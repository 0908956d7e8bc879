#include "nonlin/generators.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "nonlin/phase.hpp"

namespace nonlin {

namespace {

bool near_integer(double x) { return std::abs(x - std::round(x)) < 1e-9; }

std::vector<double> parse_number_list(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) throw std::invalid_argument("empty entry in number list");
    std::size_t pos = 0;
    double v = std::stod(item, &pos);
    if (pos != item.size())
      throw std::invalid_argument("bad number '" + item + "'");
    out.push_back(v);
  }
  return out;
}

}  // namespace

GeneratorSpec GeneratorSpec::linear(double slope) {
  GeneratorSpec g(Kind::Linear);
  g.slope_ = slope;
  return g;
}

GeneratorSpec GeneratorSpec::power_law(double z) {
  if (!(z >= 1.0))
    throw std::invalid_argument("power-law exponent must satisfy z >= 1");
  GeneratorSpec g(Kind::PowerLaw);
  g.z_ = z;
  g.integer_z_ = near_integer(z);
  return g;
}

GeneratorSpec GeneratorSpec::plateau(int mu, int z) {
  if (mu < 1) throw std::invalid_argument("plateau width mu must be >= 1");
  if (z < 1) throw std::invalid_argument("plateau exponent z must be >= 1");
  GeneratorSpec g(Kind::Plateau);
  g.mu_ = mu;
  g.z_ = z;
  return g;
}

GeneratorSpec GeneratorSpec::table(std::vector<double> values) {
  if (values.empty()) throw std::invalid_argument("table generator needs values");
  GeneratorSpec g(Kind::Table);
  g.table_ = std::move(values);
  return g;
}

GeneratorSpec GeneratorSpec::parse(const std::string& text) {
  std::string head = text;
  std::string args;
  if (auto colon = text.find(':'); colon != std::string::npos) {
    head = text.substr(0, colon);
    args = text.substr(colon + 1);
  }
  if (head == "linear") {
    if (args.empty()) return linear(1.0);
    return linear(std::stod(args));
  }
  if (head == "power") {
    if (args.empty()) throw std::invalid_argument("power generator needs an exponent");
    return power_law(std::stod(args));
  }
  if (head == "kerr") {
    if (!args.empty()) throw std::invalid_argument("kerr takes no arguments");
    return kerr();
  }
  if (head == "plateau") {
    auto sep = args.find(':');
    if (sep == std::string::npos)
      throw std::invalid_argument("plateau generator needs 'plateau:mu:z'");
    return plateau(std::stoi(args.substr(0, sep)),
                   std::stoi(args.substr(sep + 1)));
  }
  if (head == "table") {
    return table(parse_number_list(args));
  }
  throw std::invalid_argument("unknown generator '" + text + "'");
}

std::string GeneratorSpec::str() const {
  std::ostringstream os;
  switch (kind_) {
    case Kind::Linear: os << "linear:" << slope_; break;
    case Kind::PowerLaw: os << "power:" << z_; break;
    case Kind::Plateau: os << "plateau:" << mu_ << ":" << static_cast<int>(z_); break;
    case Kind::Table:
      os << "table:";
      for (std::size_t i = 0; i < table_.size(); ++i) {
        if (i) os << ",";
        os << table_[i];
      }
      break;
  }
  return os.str();
}

std::optional<double> GeneratorSpec::power_exponent() const {
  if (kind_ == Kind::PowerLaw) return z_;
  return std::nullopt;
}

bool GeneratorSpec::evaluable(double n) const {
  switch (kind_) {
    case Kind::Linear:
    case Kind::Plateau:
      return true;
    case Kind::PowerLaw:
      return integer_z_ || n >= 0.0;
    case Kind::Table: {
      if (!near_integer(n)) return false;
      auto idx = static_cast<long long>(std::llround(n));
      return idx >= 0 && idx < static_cast<long long>(table_.size());
    }
  }
  return false;
}

long double GeneratorSpec::eval_ld(long double n) const {
  switch (kind_) {
    case Kind::Linear:
      return static_cast<long double>(slope_) * n;
    case Kind::PowerLaw:
      if (!integer_z_ && n < 0.0L)
        throw std::domain_error("power law with non-integer exponent at negative argument");
      if (n == 0.0L) return 0.0L;
      return std::pow(n, static_cast<long double>(z_));
    case Kind::Plateau: {
      long double base = std::floor(n / mu_) * mu_;
      return std::pow(base, static_cast<long double>(z_));
    }
    case Kind::Table: {
      double nd = static_cast<double>(n);
      if (!evaluable(nd))
        throw std::domain_error("table generator evaluated off the table");
      return static_cast<long double>(table_[static_cast<std::size_t>(std::llround(nd))]);
    }
  }
  throw std::logic_error("unreachable generator kind");
}

double GeneratorSpec::eval(double n) const {
  return static_cast<double>(eval_ld(static_cast<long double>(n)));
}

double GeneratorSpec::delta(double k, double n) const {
  return static_cast<double>(eval_ld(static_cast<long double>(n) + static_cast<long double>(k)) -
                             eval_ld(static_cast<long double>(n)));
}

DiagonalPhaseProfile encoding_unitary(const GeneratorSpec& g, double phi,
                                      const SpectrumSet& space) {
  Eigen::VectorXd phases(space.dim());
  const long double phi_ld = phi;
  for (int idx = 0; idx < space.dim(); ++idx) {
    long double n = space.label(idx);
    if (!g.evaluable(static_cast<double>(n)))
      throw std::domain_error("generator not evaluable at label " +
                              std::to_string(space.label(idx)));
    phases[idx] = reduce_phase(-phi_ld * g.eval_ld(n));
  }
  return DiagonalPhaseProfile{space, std::move(phases), {}};
}

DiagonalPhaseProfile emergent_error(const GeneratorSpec& g, int k, double phi,
                                    const SpectrumSet& space) {
  Eigen::VectorXd phases(space.dim());
  const long double phi_ld = phi;
  for (int idx = 0; idx < space.dim(); ++idx) {
    long double n = space.label(idx);
    long double m = n - k;
    if (g.evaluable(static_cast<double>(n)) && g.evaluable(static_cast<double>(m))) {
      phases[idx] = reduce_phase(-phi_ld * (g.eval_ld(n) - g.eval_ld(m)));
    } else {
      phases[idx] = 0.0;  // sentinel; only reachable by already-deleted amplitude
    }
  }
  return DiagonalPhaseProfile{space, std::move(phases), {}};
}

}  // namespace nonlin
