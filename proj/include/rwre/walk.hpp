#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "rwre/env.hpp"
#include "rwre/rng.hpp"

namespace rwre {

/// HalfLine: P_ω on ℤ₊, forced step 0 -> 1.
/// FullLine: Q_ω on ℤ.
/// ReflectedBox: HalfLine plus forced step box -> box - 1.
enum class Chain { HalfLine, FullLine, ReflectedBox };

struct WalkConfig {
  Chain chain = Chain::HalfLine;
  std::int64_t box = 0;  // ReflectedBox only
  std::int64_t start = 0;
  std::uint64_t steps = 0;
  std::uint64_t seed = 0;
};

/// Throws std::invalid_argument if the start site is outside the state space.
void validate(const WalkConfig& cfg);

/// Right-step probability seen by the chain, with the boundary rules applied.
double chain_omega(const OmegaFn& omega, const WalkConfig& cfg, std::int64_t x);

/// ξ(n, x) = #{0 <= j <= n : X_j = x}, stored densely over the visited window.
class LocalTimeField {
 public:
  std::int64_t lo() const noexcept { return lo_; }
  std::int64_t hi() const noexcept { return lo_ + static_cast<std::int64_t>(counts_.size()) - 1; }
  std::uint64_t steps() const noexcept { return steps_; }
  std::int64_t position() const noexcept { return position_; }

  std::uint64_t count(std::int64_t x) const noexcept;
  std::span<const std::uint64_t> counts() const noexcept { return counts_; }

  /// Sparse view: (site, count) for every site with a positive count.
  std::vector<std::pair<std::int64_t, std::uint64_t>> entries() const;

  std::uint64_t total() const noexcept;
  std::uint64_t max_count() const noexcept;
  /// Exact; fits in 64 bits for n < 4e9.
  std::uint64_t sum_of_squares() const noexcept;

 private:
  friend class Walker;

  std::int64_t lo_ = 0;
  std::vector<std::uint64_t> counts_;
  std::uint64_t steps_ = 0;
  std::int64_t position_ = 0;
};

/// CSV "x,count" over the sites with a positive count.
void write_field_csv(std::ostream& os, const LocalTimeField& field);

/// Incremental simulator. Memory is O(visited range), never O(n).
class Walker {
 public:
  Walker(OmegaFn omega, WalkConfig cfg);
  Walker(const Environment& env, WalkConfig cfg) : Walker(env.omega_fn(), cfg) {}

  void advance(std::uint64_t steps);
  /// Advances until the field's elapsed time equals `time` (no-op if past).
  void advance_to(std::uint64_t time);

  const LocalTimeField& field() const noexcept { return field_; }
  const WalkConfig& config() const noexcept { return cfg_; }

 private:
  void grow(bool left);

  OmegaFn omega_;
  WalkConfig cfg_;
  Engine rng_;
  LocalTimeField field_;
  std::vector<std::uint64_t> thresholds_;
  bool hard_lo_ = false;
  bool hard_hi_ = false;
};

LocalTimeField run_walk(const OmegaFn& omega, const WalkConfig& cfg);
inline LocalTimeField run_walk(const Environment& env, const WalkConfig& cfg) { return run_walk(env.omega_fn(), cfg); }

/// T(y) = inf{n >= 1 : X_n = y}; std::nullopt when not reached within cap steps.
std::optional<std::uint64_t> hitting_time(const OmegaFn& omega, const WalkConfig& cfg, std::int64_t target,
                                          std::uint64_t cap);
inline std::optional<std::uint64_t> hitting_time(const Environment& env, const WalkConfig& cfg, std::int64_t target,
                                                 std::uint64_t cap) {
  return hitting_time(env.omega_fn(), cfg, target, cap);
}

/// Which of two sites is hit first at a time n >= 1; nullopt if neither within cap.
std::optional<std::int64_t> first_hit(const OmegaFn& omega, const WalkConfig& cfg, std::int64_t a, std::int64_t b,
                                      std::uint64_t cap);

/// Visit counts of one excursion of the reflected chain from `base` back to
/// `base`. counts[k] is the number of visits to site lo + k; the base itself
/// is counted exactly once.
struct ExcursionRecord {
  std::int64_t base = 0;
  std::int64_t lo = 0;
  std::vector<std::uint64_t> counts;
  std::uint64_t length = 0;

  /// Y_{base, offset}.
  std::uint64_t visits(std::int64_t offset) const noexcept;
};

/// Streams `count` consecutive excursions of ReflectedBox(box) started at base.
void for_each_excursion(const OmegaFn& omega, std::int64_t base, std::int64_t box, std::uint64_t count,
                        std::uint64_t seed, const std::function<void(const ExcursionRecord&)>& visit);

std::vector<ExcursionRecord> collect_excursions(const OmegaFn& omega, std::int64_t base, std::int64_t box,
                                                std::uint64_t count, std::uint64_t seed);
inline std::vector<ExcursionRecord> collect_excursions(const Environment& env, std::int64_t base, std::int64_t box,
                                                       std::uint64_t count, std::uint64_t seed) {
  return collect_excursions(env.omega_fn(), base, box, count, seed);
}

inline constexpr std::uint64_t kMaxExactSteps = 24;

/// Exact law of ξ(n, x) by forward dynamic programming on (X_k, ξ(k, x)).
/// Entry k is P[ξ(n, x) = k], k = 0..n+1. Throws for n > kMaxExactSteps.
std::vector<double> exact_localtime_distribution(const OmegaFn& omega, const WalkConfig& cfg, std::int64_t x,
                                                 std::uint64_t n);

}  // namespace rwre
