#include "rwre/env.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "rwre/rng.hpp"

namespace rwre {

namespace {

void validate(const TwoPoint& p) {
  if (!(p.w > 0.0 && p.w < 0.5 && p.M > 0.5 && p.M < 1.0)) {
    std::ostringstream msg;
    msg << "two-point family requires 0 < w < 1/2 < M < 1, got w=" << p.w << " M=" << p.M;
    throw std::invalid_argument(msg.str());
  }
}

void validate(const SymmetricUniform& p) {
  if (!(p.delta > 0.0 && p.delta < 0.5)) {
    std::ostringstream msg;
    msg << "symmetric-uniform family requires 0 < delta < 1/2, got delta=" << p.delta;
    throw std::invalid_argument(msg.str());
  }
}

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

}  // namespace

EnvFamily::EnvFamily(Variant v) : v_(v) {
  std::visit([](const auto& p) { validate(p); }, v_);
  if (const auto* p = std::get_if<TwoPoint>(&v_)) {
    const double lw = std::log((1.0 - p->w) / p->w);
    const double lm = std::log(p->M / (1.0 - p->M));
    upper_probability_ = lw / (lw + lm);
  }
}

double EnvFamily::support_min() const noexcept {
  return std::visit(overloaded{[](const TwoPoint& p) { return p.w; },
                               [](const SymmetricUniform& p) { return p.delta; }},
                    v_);
}

double EnvFamily::support_max() const noexcept {
  return std::visit(overloaded{[](const TwoPoint& p) { return p.M; },
                               [](const SymmetricUniform& p) { return 1.0 - p.delta; }},
                    v_);
}

double EnvFamily::mixing_probability() const {
  if (!is_two_point()) throw std::invalid_argument("mixing probability is defined for the two-point family only");
  return upper_probability_;
}

double EnvFamily::omega_from_unit(double u) const noexcept {
  return std::visit(overloaded{[this, u](const TwoPoint& p) { return u < upper_probability_ ? p.M : p.w; },
                               [u](const SymmetricUniform& p) { return p.delta + (1.0 - 2.0 * p.delta) * u; }},
                    v_);
}

std::string EnvFamily::name() const {
  return is_two_point() ? "two_point" : "symmetric_uniform";
}

bool operator==(const EnvFamily& a, const EnvFamily& b) {
  if (a.variant().index() != b.variant().index()) return false;
  if (const auto* p = std::get_if<TwoPoint>(&a.variant())) {
    const auto& q = std::get<TwoPoint>(b.variant());
    return p->w == q.w && p->M == q.M;
  }
  return std::get<SymmetricUniform>(a.variant()).delta == std::get<SymmetricUniform>(b.variant()).delta;
}

double Environment::omega(std::int64_t x) const noexcept {
  return family_.omega_from_unit(unit_from_word(site_word(seed_, x)));
}

double Environment::rho(std::int64_t i) const noexcept { return rho_of(omega(i)); }

double Environment::log_rho(std::int64_t i) const noexcept { return std::log(rho(i)); }

OmegaFn Environment::omega_fn() const {
  return [env = *this](std::int64_t x) { return env.omega(x); };
}

LogRhoSum::LogRhoSum(const EnvFamily& family) {
  if (const auto* p = std::get_if<TwoPoint>(&family.variant())) {
    lattice_ = true;
    upper_ = p->M;
    step_w_ = std::log((1.0 - p->w) / p->w);
    step_M_ = std::log(p->M / (1.0 - p->M));
  }
}

void LogRhoSum::add(double omega, int sign) noexcept {
  if (!lattice_) {
    sum_ += sign * std::log(rho_of(omega));
  } else if (omega == upper_) {
    count_M_ += sign;
  } else {
    count_w_ += sign;
  }
}

double LogRhoSum::value() const noexcept {
  if (!lattice_) return sum_;
  if (step_w_ == step_M_) return static_cast<double>(count_w_ - count_M_) * step_w_;
  return static_cast<double>(count_w_) * step_w_ - static_cast<double>(count_M_) * step_M_;
}

Potential::Potential(const Environment& env, std::int64_t lo, std::int64_t hi)
    : env_(env), lo_(0), values_{0.0}, left_edge_(LogRhoSum(env.family())), right_edge_(LogRhoSum(env.family())) {
  if (lo > 0 || hi < 0) throw std::invalid_argument("potential window must contain 0");
  extend(lo, hi);
}

Potential Potential::from_values(std::int64_t lo, std::vector<double> values) {
  if (values.empty()) throw std::invalid_argument("potential needs at least one value");
  return Potential(lo, std::move(values));
}

double Potential::at(std::int64_t x) const {
  if (!contains(x)) throw std::out_of_range("site " + std::to_string(x) + " outside potential window");
  return (*this)[x];
}

void Potential::extend(std::int64_t lo, std::int64_t hi) {
  if (lo >= lo_ && hi <= this->hi()) return;
  if (!env_) throw std::logic_error("fixed potential cannot be extended");
  const Environment& env = *env_;
  if (hi > this->hi()) {
    const auto old_hi = this->hi();
    values_.reserve(static_cast<std::size_t>(hi - lo_ + 1));
    for (auto x = old_hi + 1; x <= hi; ++x) {
      right_edge_->add(env.omega(x), +1);
      values_.push_back(right_edge_->value());
    }
  }
  if (lo < lo_) {
    std::vector<double> left(static_cast<std::size_t>(lo_ - lo));
    for (auto x = lo_ - 1; x >= lo; --x) {
      left_edge_->add(env.omega(x + 1), -1);
      left[static_cast<std::size_t>(x - lo)] = left_edge_->value();
    }
    values_.insert(values_.begin(), left.begin(), left.end());
    lo_ = lo;
  }
}

ExtremalEnv ExtremalEnv::bar(double w, double M) {
  if (!(w >= 0.0 && w < 0.5 && M > 0.5 && M <= 1.0))
    throw std::invalid_argument("extremal environment requires 0 <= w < 1/2 < M <= 1");
  return ExtremalEnv{Kind::Bar, w, M, 0};
}

ExtremalEnv ExtremalEnv::bar_k(double w, double M, std::int64_t K) {
  auto e = bar(w, M);
  if (K < 1) throw std::invalid_argument("reflected extremal environment requires K >= 1");
  e.kind = Kind::BarK;
  e.K = K;
  return e;
}

double ExtremalEnv::omega(std::int64_t x) const {
  if (kind == Kind::Bar) return x > 0 ? w : M;
  if (x < 0) throw std::invalid_argument("reflected extremal environment lives on the non-negative integers");
  if (x == 0) return 1.0;
  return x <= K ? M : w;
}

OmegaFn ExtremalEnv::omega_fn() const {
  return [e = *this](std::int64_t x) { return e.omega(x); };
}

double extremal_potential(const ExtremalEnv& e, std::int64_t x) {
  if (x == 0) {
    return 1.0;
  }
  const double down = e.w / (1.0 - e.w);  // w/(1-w) < 1
  if (e.kind == ExtremalEnv::Kind::Bar) {
    if (x > 0) return std::pow(down, static_cast<double>(x));
    return std::pow((1.0 - e.M) / e.M, static_cast<double>(-x));
  }
  if (x < 0) throw std::invalid_argument("reflected extremal potential is defined for x >= 0");
  const double up = e.M / (1.0 - e.M);
  if (x <= e.K) return std::pow(up, static_cast<double>(x));
  return std::pow(up, static_cast<double>(e.K)) * std::pow(down, static_cast<double>(x - e.K));
}

}  // namespace rwre
