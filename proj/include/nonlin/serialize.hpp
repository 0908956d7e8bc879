#pragma once

// JSON forms: states as {kind, parameter, amplitudes: [[re, im], ...]}.

#include "json.hpp"
#include "nonlin/hilbert.hpp"

namespace nonlin {

nlohmann::json state_to_json(const PureState& psi);
PureState state_from_json(const nlohmann::json& j);

}  // namespace nonlin
