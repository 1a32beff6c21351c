#include "rwre/dominance.hpp"

#include <stdexcept>

#include "rwre/rng.hpp"
#include "rwre/walk.hpp"

namespace rwre {

OmegaFn random_bounded_environment(double w, double M, std::uint64_t seed) {
  return [w, M, seed](std::int64_t x) {
    const double u = unit_from_word(site_word(seed, x));
    if (u < 0.25) return w;
    if (u < 0.5) return M;
    return w + (M - w) * (u - 0.5) * 2.0;
  };
}

namespace {

std::vector<double> cdf(const std::vector<double>& p) {
  std::vector<double> f(p.size());
  double s = 0.0;
  for (std::size_t k = 0; k < p.size(); ++k) f[k] = s += p[k];
  return f;
}

}  // namespace

DominanceReport check_dominance(double w, double M, std::uint64_t max_n, std::uint64_t instances, std::uint64_t seed,
                                std::int64_t radius) {
  const auto bar = ExtremalEnv::bar(w, M);
  if (M > 1.0 - w) throw std::invalid_argument("dominance by the extremal valley at 0 requires M <= 1 - w");
  if (max_n < 1 || max_n > kMaxExactSteps) throw std::invalid_argument("dominance check needs 1 <= n <= 24");
  if (radius < 0) throw std::invalid_argument("radius must be non-negative");

  DominanceReport report;
  report.w = w;
  report.M = M;
  report.max_n = max_n;
  report.instances = instances;
  report.radius = radius;

  WalkConfig cfg;
  cfg.chain = Chain::FullLine;
  cfg.start = 0;
  std::vector<std::vector<double>> bar_cdf(max_n + 1);
  for (std::uint64_t n = 1; n <= max_n; ++n) bar_cdf[n] = cdf(exact_localtime_distribution(bar.omega_fn(), cfg, 0, n));

  for (std::uint64_t i = 0; i < instances; ++i) {
    const auto omega = random_bounded_environment(w, M, derive_seed(seed, 0x646f6d, i));
    for (std::uint64_t n = 1; n <= max_n; ++n) {
      for (std::int64_t x = -radius; x <= radius; ++x) {
        const auto f = cdf(exact_localtime_distribution(omega, cfg, x, n));
        auto& sink = x == 0 ? report.origin_violations : report.other_violations;
        ++(x == 0 ? report.origin_checks : report.other_checks);
        for (std::size_t k = 0; k < f.size(); ++k) {
          const double excess = bar_cdf[n][k] - f[k];
          if (excess > kDominanceSlack) {
            sink.push_back(DominanceViolation{i, n, x, k, excess});
            break;
          }
        }
      }
    }
  }
  return report;
}

}  // namespace rwre
