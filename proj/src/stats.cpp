#include "rwre/stats.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <fstream>
#include <iomanip>
#include <mutex>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <thread>

#include <boost/math/distributions/chi_squared.hpp>

#include "json.hpp"
#include "rwre/deepvalley.hpp"
#include "rwre/rng.hpp"
#include "rwre/serialize.hpp"
#include "rwre/walk.hpp"

namespace rwre {

double l1_distance(const Measure& a, const Measure& b) {
  if (a.empty() && b.empty()) return 0.0;
  if (a.empty()) return b.total();
  if (b.empty()) return a.total();
  const auto lo = std::min(a.lo(), b.lo());
  const auto hi = std::max(a.hi(), b.hi());
  double d = 0.0;
  for (auto x = lo; x <= hi; ++x) d += std::abs(a(x) - b(x));
  return d;
}

KsResult ks_two_sample(std::span<const double> a, std::span<const double> b) {
  if (a.empty() || b.empty()) throw std::invalid_argument("KS test needs two nonempty samples");
  std::vector<double> x(a.begin(), a.end());
  std::vector<double> y(b.begin(), b.end());
  std::sort(x.begin(), x.end());
  std::sort(y.begin(), y.end());
  const double m = static_cast<double>(x.size());
  const double n = static_cast<double>(y.size());
  std::size_t i = 0;
  std::size_t j = 0;
  double d = 0.0;
  while (i < x.size() && j < y.size()) {
    const double t = std::min(x[i], y[j]);
    while (i < x.size() && x[i] == t) ++i;
    while (j < y.size() && y[j] == t) ++j;
    d = std::max(d, std::abs(static_cast<double>(i) / m - static_cast<double>(j) / n));
  }
  KsResult r;
  r.statistic = d;
  r.threshold = 1.358 * std::sqrt((m + n) / (m * n));
  r.reject = d > r.threshold;
  return r;
}

ChiSquareResult chi_square_gof(std::span<const std::uint64_t> observed, std::span<const double> probs) {
  if (observed.size() != probs.size() || observed.empty())
    throw std::invalid_argument("chi-square needs matching, nonempty bins");
  std::uint64_t total = 0;
  for (auto o : observed) total += o;
  ChiSquareResult r;
  int used = 0;
  for (std::size_t k = 0; k < observed.size(); ++k) {
    if (probs[k] <= 0.0) {
      if (observed[k] != 0) {
        r.statistic = std::numeric_limits<double>::infinity();
        r.p_value = 0.0;
        r.reject = true;
        return r;
      }
      continue;
    }
    const double e = probs[k] * static_cast<double>(total);
    const double diff = static_cast<double>(observed[k]) - e;
    r.statistic += diff * diff / e;
    ++used;
  }
  r.dof = used - 1;
  if (r.dof >= 1) {
    const boost::math::chi_squared dist(r.dof);
    r.p_value = boost::math::cdf(boost::math::complement(dist, r.statistic));
  }
  r.reject = r.p_value < 0.05;
  return r;
}

GeometricBins geometric_atom_bins(const ExcursionParams& p, std::uint64_t samples, double min_expected) {
  const double s = static_cast<double>(samples);
  auto point = [&](std::uint64_t m) {
    if (m == 0) return 1.0 - p.alpha;
    return p.alpha * std::pow(1.0 - p.beta, static_cast<double>(m - 1)) * p.beta;
  };
  auto tail = [&](std::uint64_t m) {  // P[Y >= m], m >= 1
    return p.alpha * std::pow(1.0 - p.beta, static_cast<double>(m - 1));
  };
  GeometricBins bins;
  bins.last = 1;
  while (point(bins.last) * s >= min_expected && tail(bins.last + 1) * s >= min_expected) ++bins.last;
  for (std::uint64_t m = 0; m < bins.last; ++m) bins.probs.push_back(point(m));
  bins.probs.push_back(tail(bins.last));
  return bins;
}

ChiSquareResult excursion_law_test(const ExcursionParams& p, std::span<const std::uint64_t> visits) {
  const auto bins = geometric_atom_bins(p, visits.size());
  std::vector<std::uint64_t> observed(bins.probs.size(), 0);
  for (auto y : visits) ++observed[std::min<std::uint64_t>(y, bins.last)];
  return chi_square_gof(observed, bins.probs);
}

FunctionalSample profile_functionals(const Environment& env, const LocalTimeField& field, std::uint64_t budget) {
  const auto n = field.steps();
  if (n < 3) throw std::invalid_argument("profile functionals need n >= 3");
  const auto landmarks = find_cn_bn(env, static_cast<double>(n), budget);
  const double dn = static_cast<double>(n);

  FunctionalSample s;
  s.n = n;
  s.b = landmarks.b;
  s.c = landmarks.c;
  s.sup = static_cast<double>(field.max_count()) / dn;
  s.sumsq = static_cast<double>(field.sum_of_squares()) / (dn * dn);

  const auto mu = invariant_measure(env, std::max<std::int64_t>(landmarks.c, 2)).mu;
  const auto lo = std::min(field.lo(), mu.lo());
  const auto hi = std::max(field.hi(), mu.hi());
  double l1 = 0.0;
  for (auto x = lo; x <= hi; ++x) l1 += std::abs(static_cast<double>(field.count(x)) / dn - mu(x));
  s.l1 = l1;
  return s;
}

FunctionalSample quenched_profile_check(const Environment& env, std::uint64_t n, std::uint64_t walk_seed,
                                        std::uint64_t budget) {
  const std::uint64_t grid[] = {n};
  return profile_along_grid(env, grid, walk_seed, budget).front();
}

std::vector<FunctionalSample> profile_along_grid(const Environment& env, std::span<const std::uint64_t> grid,
                                                 std::uint64_t walk_seed, std::uint64_t budget) {
  for (std::size_t k = 0; k < grid.size(); ++k) {
    if (grid[k] < 3) throw std::invalid_argument("profile times must be >= 3");
    if (k > 0 && grid[k] <= grid[k - 1]) throw std::invalid_argument("profile times must be strictly increasing");
  }
  WalkConfig cfg;
  cfg.chain = Chain::HalfLine;
  cfg.seed = walk_seed;
  Walker walker(env, cfg);
  std::vector<FunctionalSample> out;
  out.reserve(grid.size());
  for (auto n : grid) {
    walker.advance_to(n);
    out.push_back(profile_functionals(env, walker.field(), budget));
  }
  return out;
}

unsigned resolve_threads(unsigned threads) noexcept {
  if (threads > 0) return threads;
  return std::max(1u, std::thread::hardware_concurrency());
}

void parallel_for(std::size_t count, unsigned threads, const std::function<void(std::size_t)>& body) {
  const auto workers = static_cast<std::size_t>(std::min<std::size_t>(resolve_threads(threads), count));
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) body(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::atomic<bool> failed{false};
  std::exception_ptr error;
  std::mutex error_mutex;
  auto run = [&] {
    for (;;) {
      if (failed.load()) return;
      const auto i = next.fetch_add(1);
      if (i >= count) return;
      try {
        body(i);
      } catch (...) {
        std::lock_guard lock(error_mutex);
        if (!error) error = std::current_exception();
        failed.store(true);
      }
    }
  };
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (std::size_t t = 0; t < workers; ++t) pool.emplace_back(run);
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);
}

std::vector<std::uint64_t> geometric_checkpoints(std::uint64_t horizon, unsigned count) {
  if (count < 1) throw std::invalid_argument("need at least one checkpoint");
  const double n0 = static_cast<double>(horizon) / std::ldexp(1.0, static_cast<int>(count) - 1);
  if (n0 < 1.0) throw std::invalid_argument("too many checkpoints for the horizon");
  std::vector<std::uint64_t> out;
  for (unsigned k = 0; k < count; ++k) {
    const auto n = static_cast<std::uint64_t>(std::floor(n0 * std::ldexp(1.0, static_cast<int>(k))));
    if (out.empty() || n > out.back()) out.push_back(n);
  }
  out.back() = horizon;
  return out;
}

LimsupReport limsup_estimate(const EnvFamily& family, std::uint64_t horizon, unsigned checkpoints,
                             std::uint64_t replicas, std::uint64_t seed, unsigned threads) {
  if (horizon < 100'000) throw std::invalid_argument("limsup horizon must be at least 1e5");
  if (replicas < 1) throw std::invalid_argument("limsup needs at least one replica");
  LimsupReport report;
  report.horizon = horizon;
  report.checkpoints = geometric_checkpoints(horizon, checkpoints);
  report.replicas.resize(replicas);
  parallel_for(replicas, threads, [&](std::size_t r) {
    auto& rep = report.replicas[r];
    rep.env_seed = derive_seed(seed, kEnvStream, r);
    rep.walk_seed = derive_seed(seed, kWalkStream, r);
    WalkConfig cfg;
    cfg.chain = Chain::HalfLine;
    cfg.seed = rep.walk_seed;
    Walker walker(Environment(family, rep.env_seed), cfg);
    for (auto n : report.checkpoints) {
      walker.advance_to(n);
      const double ratio = static_cast<double>(walker.field().max_count()) / static_cast<double>(n);
      if (ratio > rep.running_max) {
        rep.running_max = ratio;
        rep.argmax_time = n;
      }
    }
  });
  for (const auto& rep : report.replicas) report.estimate = std::max(report.estimate, rep.running_max);
  return report;
}

void validate(const ExperimentPlan& plan) {
  if (plan.replicas < 1) throw std::invalid_argument("experiment needs at least one replica");
  if (plan.n_grid.empty()) throw std::invalid_argument("experiment needs a nonempty n grid");
  if (plan.n_grid.front() < 3) throw std::invalid_argument("experiment times must be >= 3");
  for (std::size_t k = 1; k < plan.n_grid.size(); ++k)
    if (plan.n_grid[k] <= plan.n_grid[k - 1]) throw std::invalid_argument("n grid must be strictly increasing");
  if (plan.radius < 0) throw std::invalid_argument("valley radius must be non-negative");
}

double median(std::vector<double> v) {
  if (v.empty()) return std::numeric_limits<double>::quiet_NaN();
  std::sort(v.begin(), v.end());
  const auto h = v.size() / 2;
  return v.size() % 2 ? v[h] : 0.5 * (v[h - 1] + v[h]);
}

namespace {

void write_outputs(const ExperimentPlan& plan, const ConvergenceReport& report, const std::string& status,
                   const std::vector<std::string>& errors) {
  if (plan.output_prefix.empty()) return;
  {
    std::ofstream f(plan.output_prefix + ".samples.csv");
    write_samples_csv(f, report.samples);
  }
  {
    std::ofstream f(plan.output_prefix + ".nu.csv");
    write_nu_csv(f, report.nu);
  }
  auto j = nlohmann::json::parse(report_json(plan, report));
  j["status"] = status;
  j["errors"] = errors;
  std::ofstream f(plan.output_prefix + ".json");
  f << j.dump(2) << '\n';
}

}  // namespace

ConvergenceReport convergence_experiment(const ExperimentPlan& plan) {
  validate(plan);
  const auto R = static_cast<std::size_t>(plan.replicas);
  std::vector<std::vector<FunctionalSample>> walks(R);
  std::vector<std::optional<MeasureFunctionals>> valleys(R);
  std::vector<std::exception_ptr> failures(R);

  parallel_for(R, plan.threads, [&](std::size_t r) {
    try {
      const Environment env(plan.family, derive_seed(plan.seed, kEnvStream, r));
      walks[r] = profile_along_grid(env, plan.n_grid, derive_seed(plan.seed, kWalkStream, r), plan.site_budget);
      for (auto& s : walks[r]) s.replicate = r;
      const auto p = sample_conditioned_potential(plan.family, plan.radius, Flavor::Right,
                                                  derive_seed(plan.seed, kValleyStream, r), plan.max_attempts);
      valleys[r] = measure_functionals(nu_from_potential(p));
    } catch (...) {
      failures[r] = std::current_exception();
    }
  });

  ConvergenceReport report;
  for (std::size_t r = 0; r < R; ++r) {
    report.samples.insert(report.samples.end(), walks[r].begin(), walks[r].end());
    if (valleys[r]) report.nu.push_back(*valleys[r]);
  }

  std::vector<double> nu_sup;
  std::vector<double> nu_sumsq;
  for (const auto& f : report.nu) {
    nu_sup.push_back(f.sup);
    nu_sumsq.push_back(f.sumsq);
  }
  for (auto n : plan.n_grid) {
    GridSummary g;
    g.n = n;
    std::vector<double> l1;
    std::vector<double> sup;
    std::vector<double> sumsq;
    for (const auto& s : report.samples) {
      if (s.n != n) continue;
      l1.push_back(s.l1);
      sup.push_back(s.sup);
      sumsq.push_back(s.sumsq);
    }
    g.median_l1 = median(l1);
    g.median_sup = median(sup);
    g.median_sumsq = median(sumsq);
    if (!sup.empty() && !nu_sup.empty()) {
      g.ks_sup = ks_two_sample(sup, nu_sup);
      g.ks_sumsq = ks_two_sample(sumsq, nu_sumsq);
    }
    report.grid.push_back(g);
  }

  std::vector<std::string> errors;
  std::exception_ptr first;
  for (std::size_t r = 0; r < R; ++r) {
    if (!failures[r]) continue;
    if (!first) first = failures[r];
    try {
      std::rethrow_exception(failures[r]);
    } catch (const std::exception& e) {
      errors.push_back("replicate " + std::to_string(r) + ": " + e.what());
    } catch (...) {
      errors.push_back("replicate " + std::to_string(r) + ": unknown error");
    }
  }
  write_outputs(plan, report, first ? "aborted" : "complete", errors);
  if (first) std::rethrow_exception(first);
  return report;
}

void write_samples_csv(std::ostream& os, std::span<const FunctionalSample> samples) {
  os << "# functional samples schema_version=" << kSchemaVersion << '\n';
  os << "replicate,n,sup,sumsq,l1,b_n,c_n\n";
  os << std::setprecision(12);
  for (const auto& s : samples)
    os << s.replicate << ',' << s.n << ',' << s.sup << ',' << s.sumsq << ',' << s.l1 << ',' << s.b << ',' << s.c
       << '\n';
}

void write_nu_csv(std::ostream& os, std::span<const MeasureFunctionals> nu) {
  os << "# infinite-valley functionals schema_version=" << kSchemaVersion << '\n';
  os << "replicate,sup,sumsq\n";
  os << std::setprecision(12);
  for (std::size_t r = 0; r < nu.size(); ++r) os << r << ',' << nu[r].sup << ',' << nu[r].sumsq << '\n';
}

namespace {

nlohmann::json ks_json(const char* functional, const KsResult& k) {
  return {{"functional", functional},
          {"statistic", k.statistic},
          {"threshold_5pct", k.threshold},
          {"reject_5pct", k.reject}};
}

}  // namespace

std::string report_json(const ExperimentPlan& plan, const ConvergenceReport& report) {
  nlohmann::json j;
  j["schema_version"] = kSchemaVersion;
  j["note"] =
      "Convergence in n is logarithmic and no rate is known; KS rows are diagnostics and acceptance uses "
      "trends across the n grid. The grid and trend tolerances are calibration choices.";
  j["environment"] = family_to_json(plan.family);
  j["plan"] = {{"n_grid", plan.n_grid},
               {"replicas", plan.replicas},
               {"seed", plan.seed},
               {"radius", plan.radius},
               {"max_attempts", plan.max_attempts},
               {"site_budget", plan.site_budget}};
  j["grid"] = nlohmann::json::array();
  for (const auto& g : report.grid) {
    j["grid"].push_back({{"n", g.n},
                         {"median_l1", g.median_l1},
                         {"median_sup", g.median_sup},
                         {"median_sumsq", g.median_sumsq},
                         {"ks", {ks_json("sup", g.ks_sup), ks_json("sumsq", g.ks_sumsq)}}});
  }
  if (!report.grid.empty()) {
    const auto& last = report.grid.back();
    j["largest_n"] = last.n;
    j["ks"] = {ks_json("sup", last.ks_sup), ks_json("sumsq", last.ks_sumsq)};
  }
  j["status"] = "complete";
  round_significant(j);
  return j.dump(2);
}

}  // namespace rwre
