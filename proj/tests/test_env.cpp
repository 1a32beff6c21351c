#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <cstdint>
#include <vector>

#include "rwre/env.hpp"
#include "rwre/serialize.hpp"

using namespace rwre;

namespace {

// Root of p log((1-M)/M) + (1-p) log((1-w)/w) = 0 by bisection.
double mixing_by_bisection(double w, double M) {
  auto f = [&](double p) { return p * std::log((1 - M) / M) + (1 - p) * std::log((1 - w) / w); };
  double lo = 0.0;
  double hi = 1.0;
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    (f(mid) > 0 ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

std::uint64_t seed_where(const EnvFamily& fam, const std::vector<std::pair<std::int64_t, double>>& sites) {
  for (std::uint64_t s = 0;; ++s) {
    const Environment env(fam, s);
    bool ok = true;
    for (auto [x, v] : sites) ok = ok && env.omega(x) == v;
    if (ok) return s;
  }
}

}  // namespace

TEST_CASE("two-point mixing probability is 1/2 in the symmetric case") {
  const auto fam = EnvFamily::two_point(0.25, 0.75);
  CHECK(fam.mixing_probability() == doctest::Approx(0.5).epsilon(1e-15));
  const Environment env(fam, 11);
  const int n = 1'000'000;
  int upper = 0;
  for (int x = 0; x < n; ++x) upper += env.omega(x) == 0.75;
  const double se = std::sqrt(0.25 / n);
  CHECK(std::abs(upper / double(n) - 0.5) < 4 * se);
}

TEST_CASE("two-point mixing probability solves the zero-drift equation") {
  const auto fam = EnvFamily::two_point(0.3, 0.8);
  CHECK(fam.mixing_probability() == doctest::Approx(mixing_by_bisection(0.3, 0.8)).epsilon(1e-12));
  CHECK(fam.mixing_probability() == doctest::Approx(0.3793).epsilon(1e-4));
}

TEST_CASE("site values are pure functions of (seed, x)") {
  const Environment env(EnvFamily::symmetric_uniform(0.1), 99);
  std::vector<double> forward;
  for (int x = -50; x <= 50; ++x) forward.push_back(env.omega(x));
  for (int x = 50; x >= -50; --x) CHECK(env.omega(x) == forward[static_cast<std::size_t>(x + 50)]);
  const Environment copy(EnvFamily::symmetric_uniform(0.1), 99);
  CHECK(copy.omega(7) == env.omega(7));
  CHECK(Environment(EnvFamily::symmetric_uniform(0.1), 100).omega(7) != env.omega(7));
}

TEST_CASE("rho") {
  CHECK(rho_of(0.5) == 1.0);
  CHECK(rho_of(0.75) == doctest::Approx(1.0 / 3.0).epsilon(1e-15));
  CHECK(rho_of(0.25) == doctest::Approx(3.0).epsilon(1e-15));
  const Environment env(EnvFamily::two_point(0.25, 0.75), 3);
  for (int i = -5; i <= 5; ++i) CHECK(env.rho(i) == rho_of(env.omega(i)));
}

TEST_CASE("potential hand sums") {
  const auto fam = EnvFamily::two_point(0.25, 0.75);
  SUBCASE("omega_1 = 0.75, omega_2 = 0.25") {
    const Environment env(fam, seed_where(fam, {{1, 0.75}, {2, 0.25}}));
    const auto V = potential(env, 0, 2);
    CHECK(V[0] == 0.0);
    CHECK(V[1] == doctest::Approx(std::log(1.0 / 3.0)).epsilon(1e-14));
    CHECK(V[2] == 0.0);
  }
  SUBCASE("negative axis uses -log rho_0") {
    const Environment env(fam, seed_where(fam, {{0, 0.75}}));
    const auto V = potential(env, -1, 0);
    CHECK(V[-1] == doctest::Approx(std::log(3.0)).epsilon(1e-14));
  }
  SUBCASE("omega = 1/2 contributes nothing") {
    LogRhoSum s(EnvFamily::symmetric_uniform(0.1));
    for (int k = 0; k < 10; ++k) s.add(0.5, k % 2 ? 1 : -1);
    CHECK(s.value() == 0.0);
  }
}

TEST_CASE("potential increments reproduce log rho and extension preserves values") {
  for (auto fam : {EnvFamily::two_point(0.3, 0.8), EnvFamily::symmetric_uniform(0.2)}) {
    const Environment env(fam, 5);
    auto V = potential(env, -20, 20);
    for (int x = 1; x <= 20; ++x) CHECK(V[x] - V[x - 1] == doctest::Approx(env.log_rho(x)).epsilon(1e-12));
    for (int x = -20; x <= -1; ++x) CHECK(V[x] - V[x + 1] == doctest::Approx(-env.log_rho(x + 1)).epsilon(1e-12));
    const std::vector<double> before(V.values().begin(), V.values().end());
    V.extend(-300, 400);
    for (int x = -20; x <= 20; ++x) CHECK(V[x] == before[static_cast<std::size_t>(x + 20)]);
    const auto W = potential(env, -300, 400);
    for (int x = -300; x <= 400; ++x) CHECK(V[x] == W[x]);
  }
  CHECK_THROWS_AS(potential(Environment(EnvFamily::two_point(0.25, 0.75), 1), 1, 5), std::invalid_argument);
}

TEST_CASE("lattice potentials compare equal at equal heights") {
  const Environment env(EnvFamily::two_point(0.25, 0.75), 21);
  const auto V = potential(env, -500, 500);
  const double step = std::log(3.0);
  for (int x = -500; x <= 500; ++x) {
    const double k = std::round(V[x] / step);
    CHECK(V[x] == k * step);
  }
}

TEST_CASE("sampled environments respect the zero-drift, boundedness and non-degeneracy assumptions") {
  for (auto fam : {EnvFamily::two_point(0.25, 0.75), EnvFamily::two_point(0.3, 0.8),
                   EnvFamily::symmetric_uniform(0.1), EnvFamily::symmetric_uniform(0.35)}) {
    const Environment env(fam, 2024);
    const int n = 1'000'000;
    double sum = 0.0;
    double sumsq = 0.0;
    bool in_support = true;
    for (int x = 0; x < n; ++x) {
      const double om = env.omega(x);
      in_support = in_support && om >= fam.support_min() && om <= fam.support_max();
      const double l = std::log(rho_of(om));
      sum += l;
      sumsq += l * l;
    }
    const double mean = sum / n;
    const double var = sumsq / n - mean * mean;
    CHECK(in_support);
    CHECK(var > 0.0);
    CHECK(std::abs(mean) < 4.0 * std::sqrt(var / n));
  }
}

TEST_CASE("family validation") {
  CHECK_THROWS_AS(EnvFamily::two_point(0.5, 0.75), std::invalid_argument);
  CHECK_THROWS_AS(EnvFamily::two_point(0.25, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(EnvFamily::two_point(0.0, 0.75), std::invalid_argument);
  CHECK_THROWS_AS(EnvFamily::symmetric_uniform(0.5), std::invalid_argument);
  CHECK_THROWS_AS(EnvFamily::symmetric_uniform(0.0), std::invalid_argument);
  CHECK_THROWS_AS(EnvFamily::symmetric_uniform(0.1).mixing_probability(), std::invalid_argument);
}

TEST_CASE("extremal potentials") {
  const auto bar = ExtremalEnv::bar(0.25, 0.75);
  CHECK(extremal_potential(bar, 1) == doctest::Approx(1.0 / 3.0).epsilon(1e-15));
  CHECK(extremal_potential(bar, -1) == doctest::Approx(1.0 / 3.0).epsilon(1e-15));
  CHECK(extremal_potential(bar, 0) == 1.0);
  const auto bark = ExtremalEnv::bar_k(0.25, 0.75, 1);
  CHECK(extremal_potential(bark, 2) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(extremal_potential(bark, 1) == doctest::Approx(3.0).epsilon(1e-15));
  CHECK_THROWS_AS(extremal_potential(bark, -1), std::invalid_argument);
  CHECK(bar.omega(1) == 0.25);
  CHECK(bar.omega(0) == 0.75);
  CHECK(bar.omega(-4) == 0.75);
  CHECK(bark.omega(0) == 1.0);
  CHECK(bark.omega(1) == 0.75);
  CHECK(bark.omega(2) == 0.25);
  CHECK_THROWS_AS(ExtremalEnv::bar_k(0.25, 0.75, 0), std::invalid_argument);

  // exp(-V̄) agrees with the product of ρ̄ along the path.
  const auto barK = ExtremalEnv::bar_k(0.3, 0.8, 4);
  double prod = 1.0;
  for (int x = 1; x <= 10; ++x) {
    prod /= rho_of(barK.omega(x));
    CHECK(extremal_potential(barK, x) == doctest::Approx(prod).epsilon(1e-12));
  }
}

TEST_CASE("environment JSON round trip") {
  const Environment env(EnvFamily::two_point(0.3, 0.8), 77);
  const auto j = environment_to_json(env);
  CHECK(j["family"] == "two_point");
  CHECK(j["params"]["w"] == 0.3);
  CHECK(j["seed"] == 77);
  const auto back = environment_from_json(j);
  CHECK(back.family() == env.family());
  CHECK(back.seed() == 77);
  CHECK(back.omega(123) == env.omega(123));
  const Environment u(EnvFamily::symmetric_uniform(0.2), 1);
  CHECK(environment_from_json(environment_to_json(u)).omega(3) == u.omega(3));
  CHECK_THROWS(family_from_json(nlohmann::json{{"family", "nope"}, {"params", nlohmann::json::object()}}));
}
