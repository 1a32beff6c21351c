#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "rwre/env.hpp"
#include "rwre/measure.hpp"
#include "rwre/theory.hpp"
#include "rwre/valley.hpp"

namespace rwre {

inline constexpr int kSchemaVersion = 1;

/// Σ |a(x) - b(x)| over the union of the windows.
double l1_distance(const Measure& a, const Measure& b);

struct KsResult {
  double statistic = 0.0;
  double threshold = 0.0;  // 1.358 sqrt((m + n) / (m n))
  bool reject = false;     // at the 5% level
};

/// Two-sample Kolmogorov-Smirnov test with the asymptotic 5% threshold.
KsResult ks_two_sample(std::span<const double> a, std::span<const double> b);

struct ChiSquareResult {
  double statistic = 0.0;
  int dof = 0;
  double p_value = 1.0;
  bool reject = false;  // at the 5% level
};

/// Pearson goodness of fit of observed bin counts against bin probabilities
/// (no fitted parameters). Any count in a zero-probability bin gives an
/// infinite statistic and p-value 0.
ChiSquareResult chi_square_gof(std::span<const std::uint64_t> observed, std::span<const double> probs);

/// Bin layout for the law P[Y = 0] = 1 - α, P[Y = m] = α (1-β)^{m-1} β:
/// singletons 0, 1, ..., last - 1 followed by a tail bin {Y >= last}. The
/// singletons stop before any bin (tail included) drops below `min_expected`
/// expected counts out of `samples`. Fixed before looking at the data.
struct GeometricBins {
  std::uint64_t last = 1;
  std::vector<double> probs;  // size last + 1
};
GeometricBins geometric_atom_bins(const ExcursionParams& p, std::uint64_t samples, double min_expected = 5.0);

/// Chi-square fit of excursion visit counts to the law above.
ChiSquareResult excursion_law_test(const ExcursionParams& p, std::span<const std::uint64_t> visits);

/// Profile functionals of one walk at one time n.
struct FunctionalSample {
  std::uint64_t replicate = 0;
  std::uint64_t n = 0;
  double sup = 0.0;    // max_x ξ(n, x) / n
  double sumsq = 0.0;  // Σ_x ξ(n, x)² / n²
  double l1 = 0.0;     // ‖ξ(n, ·)/n - μ_ω‖ with μ_ω reflected on [0, c_n]
  std::int64_t b = 0;
  std::int64_t c = 0;
};

class LocalTimeField;

/// Functionals of a half-line field at its current time against the
/// landmarks (b_n, c_n) for n = field.steps().
FunctionalSample profile_functionals(const Environment& env, const LocalTimeField& field,
                                     std::uint64_t budget = kDefaultSiteBudget);

/// Half-line walk from 0 run to time n with the given walk seed. Requires n >= 3.
FunctionalSample quenched_profile_check(const Environment& env, std::uint64_t n, std::uint64_t walk_seed,
                                        std::uint64_t budget = kDefaultSiteBudget);

/// One trajectory observed at every time of an increasing grid.
std::vector<FunctionalSample> profile_along_grid(const Environment& env, std::span<const std::uint64_t> grid,
                                                 std::uint64_t walk_seed, std::uint64_t budget = kDefaultSiteBudget);

/// Runs body(i) for i in [0, count) on `threads` workers (0 = hardware
/// concurrency). The first exception thrown by any task is rethrown after
/// all workers stop.
void parallel_for(std::size_t count, unsigned threads, const std::function<void(std::size_t)>& body);

unsigned resolve_threads(unsigned threads) noexcept;

/// Seed streams used by the experiments.
enum SeedStream : std::uint64_t { kEnvStream = 1, kWalkStream = 2, kValleyStream = 3 };

struct LimsupReplica {
  std::uint64_t env_seed = 0;
  std::uint64_t walk_seed = 0;
  double running_max = 0.0;       // max_k ξ*(n_k) / n_k
  std::uint64_t argmax_time = 0;  // n_k attaining it
};

struct LimsupReport {
  std::uint64_t horizon = 0;
  std::vector<std::uint64_t> checkpoints;  // n_k = floor(n_0 2^k)
  std::vector<LimsupReplica> replicas;
  double estimate = 0.0;  // max over replicas
};

/// Geometric grid n_k = floor(n_0 2^k), k < count, n_0 = horizon / 2^{count-1}.
std::vector<std::uint64_t> geometric_checkpoints(std::uint64_t horizon, unsigned count);

/// Half-line walks, one environment each. Requires horizon >= 1e5.
LimsupReport limsup_estimate(const EnvFamily& family, std::uint64_t horizon, unsigned checkpoints,
                             std::uint64_t replicas, std::uint64_t seed, unsigned threads = 0);

struct ExperimentPlan {
  EnvFamily family = EnvFamily::two_point(0.25, 0.75);
  std::vector<std::uint64_t> n_grid;
  std::uint64_t replicas = 1;
  std::uint64_t seed = 0;
  std::int64_t radius = 200;  // window for the infinite-valley draws
  std::uint64_t max_attempts = 1'000'000;
  std::uint64_t site_budget = kDefaultSiteBudget;
  unsigned threads = 0;
  std::string output_prefix;  // writes <prefix>.samples.csv, <prefix>.nu.csv, <prefix>.json when set
};

/// Throws std::invalid_argument when replicas < 1 or the grid is empty or
/// not strictly increasing (or starts below 3).
void validate(const ExperimentPlan& plan);

struct GridSummary {
  std::uint64_t n = 0;
  double median_l1 = 0.0;
  double median_sup = 0.0;
  double median_sumsq = 0.0;
  KsResult ks_sup;
  KsResult ks_sumsq;
};

struct ConvergenceReport {
  std::vector<FunctionalSample> samples;  // replicate-major, grid order inside
  std::vector<MeasureFunctionals> nu;     // one per infinite-valley draw
  std::vector<GridSummary> grid;
};

/// Annealed experiment: one environment and one walk per replicate, observed
/// along the grid, against the same number of infinite-valley draws. When an
/// output prefix is set, completed rows are written even if a replicate
/// aborts, and the exception is rethrown afterwards.
ConvergenceReport convergence_experiment(const ExperimentPlan& plan);

void write_samples_csv(std::ostream& os, std::span<const FunctionalSample> samples);
void write_nu_csv(std::ostream& os, std::span<const MeasureFunctionals> nu);
std::string report_json(const ExperimentPlan& plan, const ConvergenceReport& report);

double median(std::vector<double> v);

}  // namespace rwre
