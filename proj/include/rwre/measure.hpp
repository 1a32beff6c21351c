#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <vector>

namespace rwre {

/// Finitely supported probability vector on the window [lo, lo + size).
class Measure {
 public:
  Measure() = default;

  /// Normalizes the given non-negative weights to total mass 1. Throws
  /// std::invalid_argument for negative entries or zero total mass.
  static Measure normalized(std::int64_t lo, std::vector<double> weights);

  /// Takes the weights verbatim (they must already sum to 1 within 1e-12).
  static Measure exact(std::int64_t lo, std::vector<double> weights);

  std::int64_t lo() const noexcept { return lo_; }
  std::int64_t hi() const noexcept { return lo_ + static_cast<std::int64_t>(weights_.size()) - 1; }
  bool empty() const noexcept { return weights_.empty(); }
  std::size_t size() const noexcept { return weights_.size(); }

  /// Zero outside the window.
  double operator()(std::int64_t x) const noexcept;
  std::span<const double> weights() const noexcept { return weights_; }

  double total() const noexcept;

 private:
  Measure(std::int64_t lo, std::vector<double> weights) : lo_(lo), weights_(std::move(weights)) {}

  std::int64_t lo_ = 0;
  std::vector<double> weights_;
};

struct MeasureFunctionals {
  double sup = 0.0;
  double sumsq = 0.0;
};

MeasureFunctionals measure_functionals(const Measure& m) noexcept;

/// CSV "x,weight", 12 significant digits.
void write_measure_csv(std::ostream& os, const Measure& m);

}  // namespace rwre
