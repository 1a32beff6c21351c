#pragma once

#include <cstdint>

#include "json.hpp"
#include "rwre/env.hpp"

namespace rwre {

/// {"family": "two_point", "params": {"w": .., "M": ..}} or
/// {"family": "symmetric_uniform", "params": {"delta": ..}}.
nlohmann::json family_to_json(const EnvFamily& family);
EnvFamily family_from_json(const nlohmann::json& j);

/// Family fields plus "seed".
nlohmann::json environment_to_json(const Environment& env);
Environment environment_from_json(const nlohmann::json& j);

/// Rounds every floating-point value in j to `digits` significant digits.
void round_significant(nlohmann::json& j, int digits = 12);

}  // namespace rwre
