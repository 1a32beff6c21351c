#include "rwre/serialize.hpp"

#include <cstdio>
#include <cstdlib>
#include <stdexcept>
#include <string>

namespace rwre {

nlohmann::json family_to_json(const EnvFamily& family) {
  nlohmann::json j;
  j["family"] = family.name();
  if (const auto* p = std::get_if<TwoPoint>(&family.variant())) {
    j["params"] = {{"w", p->w}, {"M", p->M}};
  } else {
    j["params"] = {{"delta", std::get<SymmetricUniform>(family.variant()).delta}};
  }
  return j;
}

EnvFamily family_from_json(const nlohmann::json& j) {
  const auto name = j.at("family").get<std::string>();
  const auto& params = j.at("params");
  if (name == "two_point") return EnvFamily::two_point(params.at("w").get<double>(), params.at("M").get<double>());
  if (name == "symmetric_uniform") return EnvFamily::symmetric_uniform(params.at("delta").get<double>());
  throw std::invalid_argument("unknown environment family '" + name + "'");
}

nlohmann::json environment_to_json(const Environment& env) {
  auto j = family_to_json(env.family());
  j["seed"] = env.seed();
  return j;
}

Environment environment_from_json(const nlohmann::json& j) {
  return Environment(family_from_json(j), j.at("seed").get<std::uint64_t>());
}

void round_significant(nlohmann::json& j, int digits) {
  if (j.is_number_float()) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*g", digits, j.get<double>());
    j = std::strtod(buf, nullptr);
  } else if (j.is_structured()) {
    for (auto& v : j) round_significant(v, digits);
  }
}

}  // namespace rwre
