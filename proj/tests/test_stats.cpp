#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <atomic>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "json.hpp"
#include "rwre/errors.hpp"
#include "rwre/rng.hpp"
#include "rwre/stats.hpp"
#include "rwre/walk.hpp"

using namespace rwre;
namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& p) {
  std::ifstream f(p);
  std::ostringstream os;
  os << f.rdbuf();
  return os.str();
}

fs::path scratch_dir(const std::string& name) {
  auto dir = fs::temp_directory_path() / ("rwre_stats_" + name + "_" + std::to_string(::getpid()));
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

ExperimentPlan small_plan() {
  ExperimentPlan plan;
  plan.family = EnvFamily::two_point(0.25, 0.75);
  plan.n_grid = {1000, 20000};
  plan.replicas = 12;
  plan.seed = 5;
  plan.radius = 60;
  plan.threads = 2;
  return plan;
}

}  // namespace

TEST_CASE("l1 distance") {
  const auto a = Measure::normalized(0, {1, 2, 1});
  const auto b = Measure::normalized(5, {1, 1});
  CHECK(l1_distance(a, a) == 0.0);
  CHECK(l1_distance(a, b) == doctest::Approx(2.0).epsilon(1e-15));
  const auto c = Measure::normalized(1, {3, 1});
  CHECK(l1_distance(a, c) == l1_distance(c, a));
  // |0.25 - 0| + |0.5 - 0.75| + |0.25 - 0.25|
  CHECK(l1_distance(a, c) == doctest::Approx(0.5).epsilon(1e-15));
}

TEST_CASE("two-sample KS examples") {
  std::mt19937_64 rng(1);
  std::normal_distribution<double> g;
  std::vector<double> x(1000);
  for (auto& v : x) v = g(rng);
  const auto same = ks_two_sample(x, x);
  CHECK(same.statistic == 0.0);
  CHECK_FALSE(same.reject);
  CHECK(same.threshold == doctest::Approx(1.358 * std::sqrt(2000.0 / 1e6)).epsilon(1e-15));

  std::vector<double> shifted(1000);
  for (auto& v : shifted) v = g(rng) + 1.0;
  CHECK(ks_two_sample(x, shifted).reject);
  std::vector<double> far(1000);
  for (auto& v : far) v = g(rng) + 100.0;
  CHECK(ks_two_sample(x, far).statistic == 1.0);

  const std::vector<double> a{1, 2, 3};
  const std::vector<double> b{2, 3, 4, 5};
  // CDF gap is largest just after 1 (1/3 vs 0) and after 3 (1 vs 1/2).
  CHECK(ks_two_sample(a, b).statistic == doctest::Approx(0.5).epsilon(1e-15));
  CHECK_THROWS_AS(ks_two_sample(a, std::vector<double>{}), std::invalid_argument);
}

TEST_CASE("two-sample KS is calibrated under the null") {
  std::mt19937_64 rng(2);
  std::normal_distribution<double> g;
  int rejections = 0;
  for (int rep = 0; rep < 1000; ++rep) {
    std::vector<double> x(1000);
    std::vector<double> y(1000);
    for (auto& v : x) v = g(rng);
    for (auto& v : y) v = g(rng);
    rejections += ks_two_sample(x, y).reject;
  }
  MESSAGE("null rejections: " << rejections << " of 1000");
  CHECK(rejections >= 32);
  CHECK(rejections <= 68);
}

TEST_CASE("chi-square goodness of fit") {
  const std::vector<std::uint64_t> even{50, 50};
  const std::vector<double> half{0.5, 0.5};
  const auto r0 = chi_square_gof(even, half);
  CHECK(r0.statistic == 0.0);
  CHECK(r0.dof == 1);
  CHECK(r0.p_value == doctest::Approx(1.0));
  const std::vector<std::uint64_t> skew{60, 40};
  const auto r1 = chi_square_gof(skew, half);
  CHECK(r1.statistic == doctest::Approx(4.0).epsilon(1e-15));
  CHECK(r1.p_value == doctest::Approx(std::erfc(std::sqrt(2.0))).epsilon(1e-12));
  CHECK(r1.reject);
  const std::vector<double> bad{1.0, 0.0};
  const auto impossible = chi_square_gof(skew, bad);
  CHECK(impossible.reject);
  CHECK(impossible.p_value == 0.0);
  CHECK(std::isinf(impossible.statistic));
  CHECK_THROWS_AS(chi_square_gof(skew, std::vector<double>{1.0}), std::invalid_argument);
}

TEST_CASE("geometric bins") {
  ExcursionParams p;
  p.alpha = 0.6;
  p.beta = 0.3;
  p.mean = 2.0;
  const auto bins = geometric_atom_bins(p, 10'000);
  REQUIRE(bins.probs.size() == bins.last + 1);
  double total = 0.0;
  for (double q : bins.probs) {
    total += q;
    CHECK(q * 10'000 >= 5.0);
  }
  CHECK(total == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(bins.probs[0] == doctest::Approx(0.4).epsilon(1e-15));
  CHECK(bins.probs[1] == doctest::Approx(0.6 * 0.3).epsilon(1e-15));
  CHECK(bins.probs[2] == doctest::Approx(0.6 * 0.7 * 0.3).epsilon(1e-15));
  CHECK(bins.probs.back() == doctest::Approx(0.6 * std::pow(0.7, bins.last - 1)).epsilon(1e-12));

  std::mt19937_64 rng(3);
  std::bernoulli_distribution leave(p.alpha);
  std::geometric_distribution<std::uint64_t> extra(p.beta);
  int accepted = 0;
  for (int rep = 0; rep < 200; ++rep) {
    std::vector<std::uint64_t> visits(5000);
    for (auto& v : visits) v = leave(rng) ? 1 + extra(rng) : 0;
    accepted += !excursion_law_test(p, visits).reject;
  }
  MESSAGE(accepted << " of 200 exact draws accepted");
  CHECK(accepted >= 180);
}

TEST_CASE("profile functionals") {
  for (std::uint64_t s = 0; s < 20; ++s) {
    const Environment env(EnvFamily::two_point(0.25, 0.75), s);
    const std::uint64_t n = 50'000;
    WalkConfig cfg;
    cfg.chain = Chain::HalfLine;
    cfg.steps = n;
    cfg.seed = derive_seed(7, 0, s);
    const auto field = run_walk(env, cfg);
    const auto f = quenched_profile_check(env, n, cfg.seed);
    const double dn = static_cast<double>(n);
    CHECK(static_cast<double>(field.total()) / dn == (n + 1.0) / dn);
    CHECK(f.n == n);
    CHECK(f.sup <= 0.5 + 1.0 / dn);
    CHECK(f.sup > 0.0);
    CHECK(f.sumsq <= f.sup * (dn + 1) / dn);

    double sq = 0.0;
    std::uint64_t top = 0;
    for (auto [x, k] : field.entries()) {
      sq += static_cast<double>(k) * static_cast<double>(k);
      top = std::max(top, k);
    }
    CHECK(f.sumsq == doctest::Approx(sq / (dn * dn)).epsilon(1e-15));
    CHECK(f.sup == static_cast<double>(top) / dn);

    const auto land = find_cn_bn(env, dn);
    CHECK(f.b == land.b);
    CHECK(f.c == land.c);
    const std::int64_t c = std::max<std::int64_t>(land.c, 2);
    const auto V = potential(env, 0, c);
    double z = 0.0;
    for (std::int64_t x = 0; x < c; ++x) z += 2.0 * std::exp(-V[x]);
    double l1 = 0.0;
    for (std::int64_t x = 0; x <= std::max(c, field.hi()); ++x) {
      double m = 0.0;
      if (x <= c) m = ((x < c ? std::exp(-V[x]) : 0.0) + (x > 0 ? std::exp(-V[x - 1]) : 0.0)) / z;
      l1 += std::abs(static_cast<double>(field.count(x)) / dn - m);
    }
    CHECK(f.l1 == doctest::Approx(l1).epsilon(1e-10));
  }
  CHECK_THROWS_AS(quenched_profile_check(Environment(EnvFamily::two_point(0.25, 0.75), 1), 2, 1), std::invalid_argument);
  CHECK_THROWS_AS(quenched_profile_check(Environment(EnvFamily::two_point(0.25, 0.75), 1), 1'000'000, 1, 5),
                  SiteBudgetExceeded);
}

TEST_CASE("one trajectory along a grid equals separate runs") {
  const Environment env(EnvFamily::symmetric_uniform(0.2), 4);
  const std::vector<std::uint64_t> grid{100, 1000, 10000};
  const auto along = profile_along_grid(env, grid, 9);
  REQUIRE(along.size() == 3);
  for (std::size_t k = 0; k < grid.size(); ++k) {
    const auto single = quenched_profile_check(env, grid[k], 9);
    CHECK(along[k].sup == single.sup);
    CHECK(along[k].sumsq == single.sumsq);
    CHECK(along[k].l1 == single.l1);
  }
  const std::vector<std::uint64_t> bad{100, 100};
  CHECK_THROWS_AS(profile_along_grid(env, bad, 9), std::invalid_argument);
}

TEST_CASE("median profile distance shrinks with n") {
  std::vector<double> early;
  std::vector<double> late;
  const std::vector<std::uint64_t> grid{1000, 1'000'000};
  for (std::uint64_t s = 0; s < 100; ++s) {
    const auto f = profile_along_grid(Environment(EnvFamily::two_point(0.25, 0.75), derive_seed(11, 1, s)), grid,
                                      derive_seed(11, 2, s));
    early.push_back(f[0].l1);
    late.push_back(f[1].l1);
  }
  MESSAGE("median l1 at 1e3: " << median(early) << ", at 1e6: " << median(late));
  CHECK(median(late) < median(early));
}

TEST_CASE("median") {
  CHECK(median({3, 1, 2}) == 2.0);
  CHECK(median({4, 1, 2, 3}) == 2.5);
  CHECK(std::isnan(median({})));
}

TEST_CASE("geometric checkpoints") {
  const auto k = geometric_checkpoints(10'000'000, 11);
  REQUIRE(k.size() == 11);
  CHECK(k.front() == 9765);
  CHECK(k.back() == 10'000'000);
  for (std::size_t i = 1; i < k.size(); ++i) {
    CHECK(k[i] > k[i - 1]);
    CHECK(std::abs(static_cast<double>(k[i]) / static_cast<double>(k[i - 1]) - 2.0) < 1e-3);
  }
  CHECK(geometric_checkpoints(100, 1) == std::vector<std::uint64_t>{100});
  CHECK_THROWS_AS(geometric_checkpoints(4, 4), std::invalid_argument);
}

TEST_CASE("limsup estimate") {
  const auto fam = EnvFamily::two_point(0.25, 0.75);
  const double c = limsup_constant(0.75, 0.25);
  double prev = 0.0;
  for (std::uint64_t r : {1, 2, 4, 8}) {
    const auto rep = limsup_estimate(fam, 1'000'000, 8, r, 13, 2);
    CHECK(rep.replicas.size() == r);
    CHECK(rep.estimate > 0.0);
    CHECK(rep.estimate >= prev);
    // A site is revisited at most every second step.
    CHECK(rep.estimate <= 0.5 + 1.0 / static_cast<double>(rep.checkpoints.front()));
    MESSAGE(r << " replicas: estimate " << rep.estimate << " (constant " << c << ")");
    prev = rep.estimate;
    for (const auto& x : rep.replicas) {
      CHECK(x.running_max <= rep.estimate);
      CHECK(std::find(rep.checkpoints.begin(), rep.checkpoints.end(), x.argmax_time) != rep.checkpoints.end());
    }
  }
  CHECK(limsup_estimate(EnvFamily::symmetric_uniform(0.2), 100'000, 4, 2, 1, 1).estimate > 0.0);
  CHECK_THROWS_AS(limsup_estimate(fam, 99'999, 4, 1, 1), std::invalid_argument);
  CHECK_THROWS_AS(limsup_estimate(fam, 100'000, 4, 0, 1), std::invalid_argument);
}

TEST_CASE("parallel map is deterministic and propagates failures") {
  std::vector<std::uint64_t> a(1000);
  std::vector<std::uint64_t> b(1000);
  parallel_for(a.size(), 1, [&](std::size_t i) { a[i] = derive_seed(1, 2, i); });
  parallel_for(b.size(), 4, [&](std::size_t i) { b[i] = derive_seed(1, 2, i); });
  CHECK(a == b);
  std::atomic<int> ran{0};
  CHECK_THROWS_AS(parallel_for(100, 3,
                               [&](std::size_t i) {
                                 ++ran;
                                 if (i == 10) throw std::runtime_error("boom");
                               }),
                  std::runtime_error);
  CHECK(ran.load() <= 100);
  CHECK(resolve_threads(3) == 3);
  CHECK(resolve_threads(0) >= 1);
}

TEST_CASE("experiment plan validation") {
  auto plan = small_plan();
  CHECK_NOTHROW(validate(plan));
  plan.replicas = 0;
  CHECK_THROWS_AS(validate(plan), std::invalid_argument);
  plan = small_plan();
  plan.n_grid = {100, 50};
  CHECK_THROWS_AS(validate(plan), std::invalid_argument);
  plan.n_grid = {};
  CHECK_THROWS_AS(validate(plan), std::invalid_argument);
  plan.n_grid = {2};
  CHECK_THROWS_AS(validate(plan), std::invalid_argument);
}

TEST_CASE("convergence experiment report and outputs") {
  const auto dir = scratch_dir("conv");
  auto plan = small_plan();
  plan.output_prefix = (dir / "run").string();
  const auto report = convergence_experiment(plan);
  CHECK(report.samples.size() == plan.replicas * plan.n_grid.size());
  CHECK(report.nu.size() == plan.replicas);
  REQUIRE(report.grid.size() == 2);

  const auto j = nlohmann::json::parse(slurp(dir / "run.json"));
  CHECK(j["schema_version"] == kSchemaVersion);
  CHECK(j["status"] == "complete");
  CHECK(j["largest_n"] == 20000);
  REQUIRE(j["ks"].size() == 2);
  CHECK(j["ks"][0]["functional"] == "sup");
  CHECK(j["ks"][1]["functional"] == "sumsq");
  for (const auto& row : j["ks"]) {
    CHECK(row.contains("statistic"));
    CHECK(row.contains("threshold_5pct"));
    CHECK(row.contains("reject_5pct"));
  }
  REQUIRE(j["grid"].size() == 2);
  for (const auto& g : j["grid"]) CHECK(g["ks"].size() == 2);
  CHECK(j.contains("note"));

  const auto samples = slurp(dir / "run.samples.csv");
  CHECK(samples.rfind("# functional samples schema_version=1\nreplicate,n,sup,sumsq,l1,b_n,c_n\n", 0) == 0);
  CHECK(std::count(samples.begin(), samples.end(), '\n') == 2 + 24);
  const auto nu = slurp(dir / "run.nu.csv");
  CHECK(std::count(nu.begin(), nu.end(), '\n') == 2 + 12);

  // Same plan, different thread count: byte-identical outputs.
  auto again = plan;
  again.threads = 1;
  again.output_prefix = (dir / "again").string();
  convergence_experiment(again);
  CHECK(slurp(dir / "again.samples.csv") == samples);
  CHECK(slurp(dir / "again.nu.csv") == nu);
  CHECK(slurp(dir / "again.json") == slurp(dir / "run.json"));

  // The grid row at the largest n compares against the same ν sample.
  std::vector<double> sup;
  std::vector<double> nu_sup;
  for (const auto& s : report.samples)
    if (s.n == 20000) sup.push_back(s.sup);
  for (const auto& f : report.nu) nu_sup.push_back(f.sup);
  CHECK(report.grid[1].ks_sup.statistic == ks_two_sample(sup, nu_sup).statistic);
  fs::remove_all(dir);
}

TEST_CASE("aborted experiments flush completed rows") {
  const auto dir = scratch_dir("abort");
  auto plan = small_plan();
  plan.replicas = 40;
  plan.n_grid = {1000};
  plan.site_budget = 40;
  plan.output_prefix = (dir / "run").string();
  CHECK_THROWS_AS(convergence_experiment(plan), SiteBudgetExceeded);
  const auto j = nlohmann::json::parse(slurp(dir / "run.json"));
  CHECK(j["status"] == "aborted");
  const auto errors = j["errors"].size();
  const auto samples = slurp(dir / "run.samples.csv");
  const auto rows = static_cast<std::size_t>(std::count(samples.begin(), samples.end(), '\n')) - 2;
  MESSAGE(rows << " completed rows, " << errors << " aborted replicates");
  CHECK(errors > 0);
  CHECK(rows > 0);
  CHECK(rows + errors == 40);
  fs::remove_all(dir);
}
