#include "rwre/theory.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace rwre {

namespace {

void check_extremal_range(double M, double w) {
  if (!(w >= 0.0 && w < 0.5 && M > 0.5 && M <= 1.0))
    throw std::invalid_argument("extremal formulas require 0 <= w < 1/2 < M <= 1");
}

// log Σ_{j=from}^{to} e^{sign * V(j)}.
double log_sum_exp_range(const Potential& V, std::int64_t from, std::int64_t to, double sign) {
  double peak = -std::numeric_limits<double>::infinity();
  for (auto j = from; j <= to; ++j) peak = std::max(peak, sign * V[j]);
  double s = 0.0;
  for (auto j = from; j <= to; ++j) s += std::exp(sign * V[j] - peak);
  return peak + std::log(s);
}

// ω of the doubly reflected chain on [0, c], recovered from V.
double reflected_omega(const Potential& V, std::int64_t y, std::int64_t c) {
  if (y <= 0) return 1.0;
  if (y >= c) return 0.0;
  return 1.0 / (1.0 + std::exp(V[y] - V[y - 1]));
}

// log μ̃(y) with μ̃ the unnormalized reflected measure on [0, c].
double log_mu_tilde(const Potential& V, std::int64_t y, std::int64_t c) {
  if (y == 0) return -V[0];
  if (y == c) return -V[c - 1];
  const double a = -V[y - 1];
  const double b = -V[y];
  const double m = std::max(a, b);
  return m + std::log(std::exp(a - m) + std::exp(b - m));
}

Potential covering(Potential V, std::int64_t lo, std::int64_t hi) {
  if (!V.contains(lo) || !V.contains(hi)) {
    if (!V.extendable()) throw std::invalid_argument("potential window does not cover the requested sites");
    V.extend(std::min(lo, V.lo()), std::max(hi, V.hi()));
  }
  return V;
}

}  // namespace

double log_sum_exp(std::span<const double> v) {
  if (v.empty()) return -std::numeric_limits<double>::infinity();
  const double peak = *std::max_element(v.begin(), v.end());
  if (!std::isfinite(peak)) return peak;
  double s = 0.0;
  for (double x : v) s += std::exp(x - peak);
  return peak + std::log(s);
}

double hitting_prob(const Potential& V, std::int64_t b, std::int64_t y, std::int64_t i) {
  if (!(0 <= b && b < y && y < i)) throw std::invalid_argument("hitting_prob requires 0 <= b < y < i");
  if (!V.contains(b) || !V.contains(i - 1)) throw std::invalid_argument("potential must cover [b, i-1]");
  return std::exp(log_sum_exp_range(V, y, i - 1, 1.0) - log_sum_exp_range(V, b, i - 1, 1.0));
}

double hitting_prob(const Environment& env, std::int64_t b, std::int64_t y, std::int64_t i) {
  return hitting_prob(Potential(env, 0, std::max<std::int64_t>(i, 0)), b, y, i);
}

InvariantMeasure invariant_measure(Potential V, std::int64_t c) {
  if (c < 2) throw std::invalid_argument("invariant measure needs c >= 2");
  V = covering(std::move(V), 0, c);
  const double log_half_z = log_sum_exp_range(V, 0, c - 1, -1.0);
  std::vector<double> w(static_cast<std::size_t>(c + 1));
  for (std::int64_t y = 0; y <= c; ++y) w[static_cast<std::size_t>(y)] = std::exp(log_mu_tilde(V, y, c) - log_half_z);
  InvariantMeasure out;
  out.c = c;
  out.mu = Measure::normalized(0, std::move(w));
  out.log_normalizer = std::log(2.0) + log_half_z;
  return out;
}

InvariantMeasure invariant_measure(const Environment& env, std::int64_t c) {
  return invariant_measure(Potential(env, 0, std::max<std::int64_t>(c, 0)), c);
}

ExcursionParams excursion_params(const Potential& Vin, std::int64_t b, std::int64_t x, std::int64_t c) {
  if (x == 0) throw std::invalid_argument("excursion parameters are degenerate at x = 0 (Y is identically 1)");
  if (c < 1 || b < 0 || b > c) throw std::invalid_argument("excursion base must lie in [0, c]");
  const auto t = b + x;
  if (t < 0 || t > c) throw std::invalid_argument("excursion target must lie in [0, c]");
  const Potential V = covering(Vin, 0, c);

  ExcursionParams p;
  if (x > 0) {
    // Leave t to the left, then reach b before t.
    const double log_s = log_sum_exp_range(V, b, t - 1, 1.0);
    p.beta = (1.0 - reflected_omega(V, t, c)) * std::exp(V[t - 1] - log_s);
    p.alpha = reflected_omega(V, b, c) * std::exp(V[b] - log_s);
  } else {
    // Mirror image: leave t to the right, then reach b before t.
    const double log_s = log_sum_exp_range(V, t, b - 1, 1.0);
    p.beta = reflected_omega(V, t, c) * std::exp(V[t] - log_s);
    p.alpha = (1.0 - reflected_omega(V, b, c)) * std::exp(V[b - 1] - log_s);
  }
  p.mean = p.alpha / p.beta;

  const double ratio = std::exp(log_mu_tilde(V, t, c) - log_mu_tilde(V, b, c));
  if (!(std::abs(p.mean - ratio) <= 1e-10 * std::max(1.0, ratio)))
    throw std::logic_error("excursion mean disagrees with the reversible-measure ratio");
  return p;
}

ExcursionParams excursion_params(const Environment& env, std::int64_t b, std::int64_t x, std::int64_t c) {
  return excursion_params(Potential(env, 0, std::max<std::int64_t>(c, 0)), b, x, c);
}

double gamma_n(const Potential& Vin, std::int64_t b, std::int64_t c) {
  if (c < 1 || b < 0 || b > c) throw std::invalid_argument("gamma_n requires 0 <= b <= c");
  const Potential V = covering(Vin, 0, c);
  const double log_base = log_mu_tilde(V, b, c);
  double total = 0.0;
  for (std::int64_t y = 0; y <= c; ++y) total += std::exp(log_mu_tilde(V, y, c) - log_base);
  return total;
}

double gamma_n(const Environment& env, std::int64_t b, std::int64_t c) {
  return gamma_n(Potential(env, 0, std::max<std::int64_t>(c, 0)), b, c);
}

double limsup_constant(double M, double w) {
  check_extremal_range(M, w);
  return (2.0 * M - 1.0) * (1.0 - 2.0 * w) / (2.0 * (M - w) * std::min(M, 1.0 - w));
}

double nu_bar_at(double M, double w, std::int64_t x) {
  check_extremal_range(M, w);
  // Σ_x exp(-V̄(x)) = 1 + Σ_{k>=1} r^k + Σ_{k>=1} q^k with r = w/(1-w), q = (1-M)/M.
  const double total = (M - w) / ((2.0 * M - 1.0) * (1.0 - 2.0 * w));
  const double r = w / (1.0 - w);
  const double q = (1.0 - M) / M;
  auto weight = [&](std::int64_t y) {
    if (y == 0) return 1.0;
    return y > 0 ? std::pow(r, static_cast<double>(y)) : std::pow(q, static_cast<double>(-y));
  };
  return (weight(x - 1) + weight(x)) / (2.0 * total);
}

double nu_bar(double M, double w, int site) {
  if (site != 0 && site != 1) throw std::invalid_argument("nu_bar is evaluated at site 0 or 1");
  check_extremal_range(M, w);
  const double total = (M - w) / ((2.0 * M - 1.0) * (1.0 - 2.0 * w));
  return site == 0 ? (1.0 / M) / (2.0 * total) : (1.0 / (1.0 - w)) / (2.0 * total);
}

namespace {

// Denominator of ν̄^(K) divided by (M/(1-M))^K.
double scaled_denominator(double M, double w, std::int64_t K) {
  const double q = (1.0 - M) / M;
  const double r = w / (1.0 - w);
  double head = 0.0;  // Σ_{j=0}^{K-1} q^j
  double qj = 1.0;
  for (std::int64_t j = 0; j < K; ++j) {
    head += qj;
    qj *= q;
  }
  return 2.0 * (qj + head + r / (1.0 - r));
}

void check_k(double M, double w, std::int64_t K) {
  check_extremal_range(M, w);
  if (K < 1) throw std::invalid_argument("nu_bar_K requires K >= 1");
}

}  // namespace

double nu_bar_K(double M, double w, std::int64_t K) {
  check_k(M, w, K);
  const double q = (1.0 - M) / M;
  return (q + 1.0) / scaled_denominator(M, w, K);
}

std::vector<double> nu_bar_K_weights(double M, double w, std::int64_t K, std::int64_t hi) {
  check_k(M, w, K);
  if (hi < K) throw std::invalid_argument("nu_bar_K_weights requires hi >= K");
  const double q = (1.0 - M) / M;
  const double r = w / (1.0 - w);
  const double d = scaled_denominator(M, w, K);
  // exp(-V̄^(K)(y)) / (M/(1-M))^K
  auto scaled = [&](std::int64_t y) {
    if (y <= K) return std::pow(q, static_cast<double>(K - y));
    return std::pow(r, static_cast<double>(y - K));
  };
  std::vector<double> out(static_cast<std::size_t>(hi + 1));
  out[0] = scaled(0) / d;
  for (std::int64_t y = 1; y <= hi; ++y) out[static_cast<std::size_t>(y)] = (scaled(y - 1) + scaled(y)) / d;
  return out;
}

double nu_bar_K_tail(double M, double w, std::int64_t K, std::int64_t hi) {
  check_k(M, w, K);
  if (hi < K) throw std::invalid_argument("nu_bar_K_tail requires hi >= K");
  const double r = w / (1.0 - w);
  return (1.0 + r) * std::pow(r, static_cast<double>(hi - K)) / ((1.0 - r) * scaled_denominator(M, w, K));
}

}  // namespace rwre
