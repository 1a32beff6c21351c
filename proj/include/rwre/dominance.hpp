#pragma once

#include <cstdint>
#include <vector>

#include "rwre/env.hpp"

namespace rwre {

inline constexpr double kDominanceSlack = 1e-12;

struct DominanceViolation {
  std::uint64_t instance = 0;
  std::uint64_t n = 0;
  std::int64_t site = 0;
  std::uint64_t k = 0;    // CDF argument
  double excess = 0.0;    // F_bar(k) - F(k) > slack
};

struct DominanceReport {
  double w = 0.0;
  double M = 0.0;
  std::uint64_t max_n = 0;
  std::uint64_t instances = 0;
  std::int64_t radius = 0;
  std::uint64_t origin_checks = 0;
  std::uint64_t other_checks = 0;
  std::vector<DominanceViolation> origin_violations;  // hard requirement: empty
  std::vector<DominanceViolation> other_violations;   // reported only
};

/// Test environment on [w, M]^ℤ: each site is w or M with probability 1/4
/// each and uniform on [w, M] otherwise, keyed by (seed, x).
OmegaFn random_bounded_environment(double w, double M, std::uint64_t seed);

/// For every n in 1..max_n and every instance, compares the exact CDF of
/// ξ(n, x) under Q_ω (x = 0, and 0 < |x| <= radius when radius > 0) with the
/// CDF of ξ(n, 0) under Q_ω̄. Domination means F_ω(k) >= F_ω̄(k) for all k.
/// Requires 0 <= w < 1/2 < M <= 1, M <= 1 - w and max_n <= kMaxExactSteps.
DominanceReport check_dominance(double w, double M, std::uint64_t max_n, std::uint64_t instances, std::uint64_t seed,
                                std::int64_t radius = 0);

}  // namespace rwre
