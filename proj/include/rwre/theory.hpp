#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "rwre/env.hpp"
#include "rwre/measure.hpp"

namespace rwre {

/// log Σ exp(v_k), shifted by the maximum so that deep valleys (|V| > 700)
/// neither overflow nor underflow.
double log_sum_exp(std::span<const double> v);

/// P_ω[T(b) < T(i) | X_0 = y] for 0 <= b < y < i, from the ratio of
/// exponential-potential sums over [y, i-1] and [b, i-1].
double hitting_prob(const Potential& V, std::int64_t b, std::int64_t y, std::int64_t i);
double hitting_prob(const Environment& env, std::int64_t b, std::int64_t y, std::int64_t i);

/// Stationary law of the chain on [0, c] reflected at both ends.
struct InvariantMeasure {
  std::int64_t c = 0;
  Measure mu;
  double log_normalizer = 0.0;  // log Z, Z = 2 Σ_{x=0}^{c-1} e^{-V(x)}
};

/// V must cover [0, c] (it is extended when possible). Requires c >= 2.
InvariantMeasure invariant_measure(Potential V, std::int64_t c);
InvariantMeasure invariant_measure(const Environment& env, std::int64_t c);

/// Excursion from b in the reflected chain on [0, c]:
///   alpha = P[T(b+x) < T(b) | X_0 = b], beta = P[T(b) < T(b+x) | X_0 = b+x],
///   P[Y = 0] = 1 - alpha, P[Y = m] = alpha (1-beta)^{m-1} beta.
struct ExcursionParams {
  double alpha = 0.0;
  double beta = 1.0;
  double mean = 0.0;  // alpha / beta
};

/// Rejects x = 0 and b + x outside [0, c]. alpha and beta come from hitting
/// probabilities; mean is cross-checked against μ(b+x)/μ(b) (relative 1e-10)
/// and std::logic_error is thrown on disagreement.
ExcursionParams excursion_params(const Potential& V, std::int64_t b, std::int64_t x, std::int64_t c);
ExcursionParams excursion_params(const Environment& env, std::int64_t b, std::int64_t x, std::int64_t c);

/// E[Y_{b,0}]: the base is visited exactly once per excursion.
inline constexpr double excursion_mean_at_base() noexcept { return 1.0; }

/// Mean excursion length Σ_{y=0}^{c} μ(y)/μ(b) (= 1/μ(b) >= 2).
double gamma_n(const Potential& V, std::int64_t b, std::int64_t c);
double gamma_n(const Environment& env, std::int64_t b, std::int64_t c);

/// (2M-1)(1-2w) / (2(M-w) min{M, 1-w}) for 0 <= w < 1/2 < M <= 1.
double limsup_constant(double M, double w);

/// Stationary law of the chain in the extremal infinite valley at an
/// arbitrary site, by closed-form geometric sums.
double nu_bar_at(double M, double w, std::int64_t x);

/// nu_bar_at restricted to the two sites that carry the maximum.
double nu_bar(double M, double w, int site);

/// Stationary mass of site K for the extremal chain on ℤ₊ (ω_0 = 1, M on
/// (0, K], w beyond), normalized by 2 Σ_{x>=0} exp(-V̄^(K)(x)). Evaluated in
/// a form scaled by (M/(1-M))^K.
double nu_bar_K(double M, double w, std::int64_t K);

/// ν̄^(K)(x) for x = 0..hi (hi >= K).
std::vector<double> nu_bar_K_weights(double M, double w, std::int64_t K, std::int64_t hi);

/// Σ_{x > hi} ν̄^(K)(x), analytic geometric tail (hi >= K).
double nu_bar_K_tail(double M, double w, std::int64_t K, std::int64_t hi);

}  // namespace rwre
