#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "rwre/env.hpp"
#include "rwre/measure.hpp"

namespace rwre {

/// Right: Ṽ >= 0 on (0, N], Ṽ > 0 on [-N, 0).
/// Left:  Ṽ > 0 on (0, N], Ṽ >= 0 on [-N, 0).
enum class Flavor { Right, Left };

inline constexpr std::int64_t kDefaultValleyRadius = 200;
inline constexpr std::uint64_t kDefaultMaxAttempts = 1'000'000;

struct ConditionedPotential {
  std::int64_t radius = 0;
  std::vector<double> values;  // values[k] = Ṽ(k - radius)
  Flavor flavor = Flavor::Right;
  std::uint64_t attempts = 0;  // draws consumed, including the accepted one

  std::int64_t lo() const noexcept { return -radius; }
  std::int64_t hi() const noexcept { return radius; }
  double operator[](std::int64_t x) const noexcept { return values[static_cast<std::size_t>(x + radius)]; }
};

/// Sign constraints of the flavor, checked on the whole window.
bool satisfies_conditioning(const ConditionedPotential& p);

/// Rejection sampler on [-N, N]: both one-sided paths are drawn from the
/// unconditioned law and the pair is kept once both sides satisfy the
/// flavor's constraints. Throws AttemptsExhausted after max_attempts
/// rejections.
ConditionedPotential sample_conditioned_potential(const EnvFamily& family, std::int64_t N, Flavor flavor,
                                                  std::uint64_t seed,
                                                  std::uint64_t max_attempts = kDefaultMaxAttempts);

/// ν(x) ∝ e^{-Ṽ(x-1)} + e^{-Ṽ(x)} on [lo, lo + size), with Ṽ(lo - 1) taken as
/// Ṽ(lo), renormalized to mass 1 on the window.
Measure nu_from_values(std::int64_t lo, std::span<const double> values);
Measure nu_from_potential(const ConditionedPotential& p);

struct NuHatDraw {
  Flavor flavor = Flavor::Right;
  Measure nu;
};

/// Fair coin between the two flavors, then ν of the sampled potential. The
/// potential is drawn with the seed derived for the chosen flavor, so a Right
/// draw equals nu_from_potential(sample_conditioned_potential(..., Right,
/// nu_hat_potential_seed(seed), ...)).
NuHatDraw sample_nu_hat(const EnvFamily& family, std::int64_t N, std::uint64_t seed,
                        std::uint64_t max_attempts = kDefaultMaxAttempts);
std::uint64_t nu_hat_potential_seed(std::uint64_t seed) noexcept;

}  // namespace rwre
