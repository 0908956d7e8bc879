#include "nonlin/serialize.hpp"

#include <stdexcept>

namespace nonlin {

nlohmann::json state_to_json(const PureState& psi) {
  nlohmann::json amps = nlohmann::json::array();
  for (int i = 0; i < psi.dim(); ++i) {
    const Complex& c = psi.amplitudes()[i];
    amps.push_back({c.real(), c.imag()});
  }
  return {{"kind", psi.space().kind_name()},
          {"parameter", psi.space().parameter()},
          {"amplitudes", std::move(amps)}};
}

PureState state_from_json(const nlohmann::json& j) {
  std::string kind = j.at("kind").get<std::string>();
  int param = j.at("parameter").get<int>();
  SpectrumSet space = kind == "bosonic" ? SpectrumSet::bosonic(param)
                      : kind == "rotor" ? SpectrumSet::rotor(param)
                      : kind == "spin"  ? SpectrumSet::spin(param)
                                        : throw std::invalid_argument(
                                              "unknown space kind '" + kind + "'");
  const auto& amps = j.at("amplitudes");
  if (static_cast<int>(amps.size()) != space.dim())
    throw std::invalid_argument("amplitude count does not match space dim");
  Eigen::VectorXcd v(space.dim());
  for (int i = 0; i < space.dim(); ++i)
    v[i] = Complex{amps[i].at(0).get<double>(), amps[i].at(1).get<double>()};
  return PureState(space, std::move(v));
}

}  // namespace nonlin
