#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

namespace rwre {

/// Site law ω_x -> probability of stepping right from x.
using OmegaFn = std::function<double(std::int64_t)>;

/// ω₀ takes value M with probability p and w otherwise, p chosen so that
/// E[log ρ₀] = 0. Requires 0 < w < 1/2 < M < 1.
struct TwoPoint {
  double w;
  double M;
};

/// ω₀ uniform on [delta, 1 - delta], 0 < delta < 1/2.
struct SymmetricUniform {
  double delta;
};

class EnvFamily {
 public:
  using Variant = std::variant<TwoPoint, SymmetricUniform>;

  /// Throws std::invalid_argument when the parameters leave the admissible
  /// (recurrent, bounded, non-degenerate) region.
  explicit EnvFamily(Variant v);

  static EnvFamily two_point(double w, double M) { return EnvFamily{TwoPoint{w, M}}; }
  static EnvFamily symmetric_uniform(double delta) { return EnvFamily{SymmetricUniform{delta}}; }

  const Variant& variant() const noexcept { return v_; }
  bool is_two_point() const noexcept { return std::holds_alternative<TwoPoint>(v_); }

  double support_min() const noexcept;
  double support_max() const noexcept;

  /// Probability of the upper atom M (TwoPoint only; throws otherwise).
  double mixing_probability() const;

  /// Maps a uniform variate u in [0,1) to a draw of ω₀.
  double omega_from_unit(double u) const noexcept;

  std::string name() const;

 private:
  Variant v_;
  double upper_probability_ = 0.0;
};

bool operator==(const EnvFamily& a, const EnvFamily& b);

/// i.i.d. environment on ℤ, generated lazily by counter-mode hashing so that
/// ω_x depends only on (seed, x). Immutable and cheap to copy; safe to share
/// across threads.
class Environment {
 public:
  Environment(EnvFamily family, std::uint64_t seed) : family_(std::move(family)), seed_(seed) {}

  double omega(std::int64_t x) const noexcept;
  double rho(std::int64_t i) const noexcept;
  double log_rho(std::int64_t i) const noexcept;

  const EnvFamily& family() const noexcept { return family_; }
  std::uint64_t seed() const noexcept { return seed_; }

  OmegaFn omega_fn() const;

 private:
  EnvFamily family_;
  std::uint64_t seed_;
};

inline double sample_omega(const Environment& env, std::int64_t x) { return env.omega(x); }

/// ρ = (1 - ω) / ω.
inline double rho_of(double omega) { return (1.0 - omega) / omega; }

/// Running sum of ±log ρ. For the two-point family the sum is kept as integer
/// counts of each atom, so equal lattice heights compare equal exactly.
class LogRhoSum {
 public:
  explicit LogRhoSum(const EnvFamily& family);

  /// Adds sign * log ρ(omega), sign = ±1.
  void add(double omega, int sign) noexcept;
  double value() const noexcept;

 private:
  bool lattice_ = false;
  double upper_ = 0.0;  // M
  double step_w_ = 0.0;  // log((1-w)/w)
  double step_M_ = 0.0;  // log(M/(1-M))
  std::int64_t count_w_ = 0;
  std::int64_t count_M_ = 0;
  double sum_ = 0.0;
};

/// Potential V on a window [lo, hi] containing 0, V(0) = 0. When built from
/// an Environment it can be widened; widening never alters existing values
/// because sums always run outward from the origin in the same order.
class Potential {
 public:
  Potential(const Environment& env, std::int64_t lo, std::int64_t hi);

  /// Fixed potential from explicit values (values[k] = V(lo + k)). Not
  /// extendable.
  static Potential from_values(std::int64_t lo, std::vector<double> values);

  std::int64_t lo() const noexcept { return lo_; }
  std::int64_t hi() const noexcept { return lo_ + static_cast<std::int64_t>(values_.size()) - 1; }
  bool contains(std::int64_t x) const noexcept { return x >= lo() && x <= hi(); }
  std::size_t size() const noexcept { return values_.size(); }

  /// Unchecked.
  double operator[](std::int64_t x) const noexcept { return values_[static_cast<std::size_t>(x - lo_)]; }
  /// Throws std::out_of_range outside the window.
  double at(std::int64_t x) const;

  std::span<const double> values() const noexcept { return values_; }

  bool extendable() const noexcept { return env_.has_value(); }
  const std::optional<Environment>& environment() const noexcept { return env_; }

  /// Widens the window to cover [lo, hi]. Throws std::logic_error on a fixed
  /// potential whose window does not already cover the request.
  void extend(std::int64_t lo, std::int64_t hi);

 private:
  Potential(std::int64_t lo, std::vector<double> values) : lo_(lo), values_(std::move(values)) {}

  std::optional<Environment> env_;
  std::int64_t lo_ = 0;
  std::vector<double> values_;
  std::optional<LogRhoSum> left_edge_;
  std::optional<LogRhoSum> right_edge_;
};

inline Potential potential(const Environment& env, std::int64_t lo, std::int64_t hi) {
  return Potential(env, lo, hi);
}

/// Deterministic extremal environments used to bound local times.
///   Bar(w, M):     ω_x = w for x > 0, M for x <= 0.
///   BarK(w, M, K): ω_0 = 1, ω_x = M for 0 < x <= K, w for x > K.
struct ExtremalEnv {
  enum class Kind { Bar, BarK };
  Kind kind = Kind::Bar;
  double w = 0.25;
  double M = 0.75;
  std::int64_t K = 1;

  static ExtremalEnv bar(double w, double M);
  static ExtremalEnv bar_k(double w, double M, std::int64_t K);

  double omega(std::int64_t x) const;
  OmegaFn omega_fn() const;
};

/// exp(-V̄(x)) for the extremal potential. BarK rejects x < 0.
double extremal_potential(const ExtremalEnv& e, std::int64_t x);

}  // namespace rwre
