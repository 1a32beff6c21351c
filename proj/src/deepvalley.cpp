#include "rwre/deepvalley.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "rwre/errors.hpp"
#include "rwre/rng.hpp"

namespace rwre {

namespace {

bool admissible(double v, bool strict) { return strict ? v > 0.0 : v >= 0.0; }

bool strict_right(Flavor f) { return f == Flavor::Left; }
bool strict_left(Flavor f) { return f == Flavor::Right; }

}  // namespace

bool satisfies_conditioning(const ConditionedPotential& p) {
  if (p.values.size() != static_cast<std::size_t>(2 * p.radius + 1) || p[0] != 0.0) return false;
  for (std::int64_t x = 1; x <= p.radius; ++x) {
    if (!admissible(p[x], strict_right(p.flavor))) return false;
    if (!admissible(p[-x], strict_left(p.flavor))) return false;
  }
  return true;
}

ConditionedPotential sample_conditioned_potential(const EnvFamily& family, std::int64_t N, Flavor flavor,
                                                  std::uint64_t seed, std::uint64_t max_attempts) {
  if (N < 0) throw std::invalid_argument("window radius must be non-negative");
  if (max_attempts < 1) throw std::invalid_argument("max_attempts must be at least 1");
  auto rng = make_engine(seed);
  auto draw = [&] { return family.omega_from_unit(unit_from_word(rng())); };

  ConditionedPotential out;
  out.radius = N;
  out.flavor = flavor;
  out.values.assign(static_cast<std::size_t>(2 * N + 1), 0.0);
  for (std::uint64_t attempt = 1; attempt <= max_attempts; ++attempt) {
    bool ok = true;
    LogRhoSum right(family);
    for (std::int64_t x = 1; x <= N && ok; ++x) {
      right.add(draw(), +1);
      const double v = right.value();
      ok = admissible(v, strict_right(flavor));
      out.values[static_cast<std::size_t>(N + x)] = v;
    }
    // Ṽ(x) = Ṽ(x+1) - log ρ_{x+1} going left.
    LogRhoSum left(family);
    for (std::int64_t x = -1; x >= -N && ok; --x) {
      left.add(draw(), -1);
      const double v = left.value();
      ok = admissible(v, strict_left(flavor));
      out.values[static_cast<std::size_t>(N + x)] = v;
    }
    if (ok) {
      out.attempts = attempt;
      return out;
    }
  }
  throw AttemptsExhausted("conditioned potential on radius " + std::to_string(N) + " not accepted within " +
                              std::to_string(max_attempts) + " attempts",
                          max_attempts);
}

Measure nu_from_values(std::int64_t lo, std::span<const double> values) {
  if (values.empty()) throw std::invalid_argument("nu needs a nonempty window");
  const double floor = *std::min_element(values.begin(), values.end());
  std::vector<double> conductance(values.size());
  for (std::size_t k = 0; k < values.size(); ++k) conductance[k] = std::exp(floor - values[k]);
  std::vector<double> w(values.size());
  w[0] = 2.0 * conductance[0];
  for (std::size_t k = 1; k < values.size(); ++k) w[k] = conductance[k - 1] + conductance[k];
  return Measure::normalized(lo, std::move(w));
}

Measure nu_from_potential(const ConditionedPotential& p) { return nu_from_values(p.lo(), p.values); }

std::uint64_t nu_hat_potential_seed(std::uint64_t seed) noexcept { return derive_seed(seed, 0x6e75, 1); }

NuHatDraw sample_nu_hat(const EnvFamily& family, std::int64_t N, std::uint64_t seed, std::uint64_t max_attempts) {
  NuHatDraw out;
  out.flavor = (derive_seed(seed, 0x6e75, 0) >> 63) ? Flavor::Left : Flavor::Right;
  out.nu = nu_from_potential(
      sample_conditioned_potential(family, N, out.flavor, nu_hat_potential_seed(seed), max_attempts));
  return out;
}

}  // namespace rwre
