#include "rwre/measure.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <ostream>
#include <stdexcept>

namespace rwre {

Measure Measure::normalized(std::int64_t lo, std::vector<double> weights) {
  double total = 0.0;
  for (double w : weights) {
    if (!(w >= 0.0) || !std::isfinite(w)) throw std::invalid_argument("measure weights must be finite and non-negative");
    total += w;
  }
  if (!(total > 0.0)) throw std::invalid_argument("measure has zero total mass");
  for (double& w : weights) w /= total;
  return Measure(lo, std::move(weights));
}

Measure Measure::exact(std::int64_t lo, std::vector<double> weights) {
  double total = 0.0;
  for (double w : weights) {
    if (!(w >= 0.0)) throw std::invalid_argument("measure weights must be non-negative");
    total += w;
  }
  if (std::abs(total - 1.0) > 1e-12) throw std::invalid_argument("measure weights do not sum to 1");
  return Measure(lo, std::move(weights));
}

double Measure::operator()(std::int64_t x) const noexcept {
  if (x < lo_ || x > hi()) return 0.0;
  return weights_[static_cast<std::size_t>(x - lo_)];
}

double Measure::total() const noexcept { return std::accumulate(weights_.begin(), weights_.end(), 0.0); }

MeasureFunctionals measure_functionals(const Measure& m) noexcept {
  MeasureFunctionals f;
  for (double w : m.weights()) {
    f.sup = std::max(f.sup, w);
    f.sumsq += w * w;
  }
  return f;
}

void write_measure_csv(std::ostream& os, const Measure& m) {
  const auto old = os.precision(12);
  os << "x,weight\n";
  for (std::size_t k = 0; k < m.size(); ++k) os << m.lo() + static_cast<std::int64_t>(k) << ',' << m.weights()[k] << '\n';
  os.precision(old);
}

}  // namespace rwre
