#include "rwre/valley.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>
#include <tuple>

#include "rwre/errors.hpp"

namespace rwre {

double valley_threshold(double n) {
  if (!(n > 1.0)) throw std::invalid_argument("valley threshold needs n > 1");
  const double l = std::log(n);
  return l + std::sqrt(l);
}

HalfLineValley find_cn_bn_threshold(Potential& V, double threshold, std::uint64_t budget) {
  if (!(threshold > 0.0)) throw std::invalid_argument("valley threshold must be positive");
  double run_min = std::numeric_limits<double>::infinity();
  std::int64_t arg_min = 0;
  for (std::int64_t x = 0;; ++x) {
    if (static_cast<std::uint64_t>(x) >= budget)
      throw SiteBudgetExceeded("c_n scan exceeded the site budget of " + std::to_string(budget), budget);
    if (!V.contains(x)) {
      if (!V.extendable()) throw SiteBudgetExceeded("c_n scan ran past the end of a fixed potential", budget);
      const auto hi = std::min<std::int64_t>(std::max<std::int64_t>(2 * V.hi(), 64), static_cast<std::int64_t>(budget));
      V.extend(V.lo(), std::max(hi, x));
    }
    const double v = V[x];
    if (v < run_min) {
      run_min = v;
      arg_min = x;
    }
    if (v - run_min >= threshold) return HalfLineValley{0.0, threshold, arg_min, x};
  }
}

HalfLineValley find_cn_bn(const Environment& env, double n, std::uint64_t budget) {
  if (!(n >= 3.0)) throw std::invalid_argument("find_cn_bn requires n >= 3");
  Potential V(env, 0, 64);
  auto out = find_cn_bn_threshold(V, valley_threshold(n), budget);
  out.n = n;
  return out;
}

bool is_valley(const Potential& V, std::int64_t a, std::int64_t b, std::int64_t c) {
  if (!(a < b && b < c) || !V.contains(a) || !V.contains(c)) return false;
  for (auto x = a; x <= c; ++x) {
    if (V[x] < V[b]) return false;
    if (x <= b && V[x] > V[a]) return false;
    if (x >= b && V[x] > V[c]) return false;
  }
  return true;
}

double valley_depth(const Potential& V, std::int64_t a, std::int64_t b, std::int64_t c) {
  return std::min(V[a] - V[b], V[c] - V[b]);
}

double max_inner_depth(const Potential& V, std::int64_t a, std::int64_t c) {
  const double none = -std::numeric_limits<double>::infinity();
  if (c - a < 4) return none;
  const auto n = static_cast<std::size_t>(c - a + 1);
  std::vector<double> left(n, none);   // max V over (a, y)
  std::vector<double> right(n, none);  // max V over (y, c)
  for (auto y = a + 2; y <= c; ++y) {
    const auto k = static_cast<std::size_t>(y - a);
    left[k] = std::max(left[k - 1], V[y - 1]);
  }
  for (auto y = c - 2; y >= a; --y) {
    const auto k = static_cast<std::size_t>(y - a);
    right[k] = std::max(right[k + 1], V[y + 1]);
  }
  double best = none;
  for (auto y = a + 2; y <= c - 2; ++y) {
    const auto k = static_cast<std::size_t>(y - a);
    best = std::max(best, std::min(left[k] - V[y], right[k] - V[y]));
  }
  return best;
}

namespace {

// Walls usable with bottom b on one side: sites beyond 0 (strictly on the
// far side of the origin from the other wall) that are running maxima seen
// from b, before V dips below V(b). Ordered from nearest to farthest.
std::vector<std::int64_t> walls(const Potential& V, std::int64_t b, double threshold, int dir) {
  std::vector<std::int64_t> out;
  double run_max = V[b];
  const double floor = V[b];
  for (auto x = b + dir; V.contains(x); x += dir) {
    const double v = V[x];
    if (v < floor) break;
    const bool beyond_origin = dir < 0 ? x < 0 : x > 0;
    if (v >= run_max) {
      run_max = v;
      if (beyond_origin && v - floor >= threshold) out.push_back(x);
    }
  }
  return out;
}

}  // namespace

bool find_minimal_valley_in_window(const Potential& V, double threshold, Valley& out) {
  std::vector<Valley> found;
  for (auto b = V.lo() + 1; b < V.hi(); ++b) {
    const auto left = walls(V, b, threshold, -1);
    if (left.empty()) continue;
    const auto right = walls(V, b, threshold, +1);
    if (right.empty()) continue;
    // For each left wall (nearest first) take the nearest right wall giving a
    // minimal valley; farther pairs would contain one already found.
    std::int64_t c_limit = std::numeric_limits<std::int64_t>::max();
    for (auto a : left) {
      for (auto c : right) {
        if (c >= c_limit) break;
        const double d = valley_depth(V, a, b, c);
        if (max_inner_depth(V, a, c) < d) {
          found.push_back(Valley{0.0, threshold, a, b, c, d, 1});
          c_limit = c;
          break;
        }
      }
    }
  }
  if (found.empty()) return false;

  // Keep valleys whose interval does not strictly contain another's.
  std::vector<Valley> smallest;
  for (const auto& v : found) {
    const bool contains_other = std::any_of(found.begin(), found.end(), [&](const Valley& o) {
      return o.a >= v.a && o.c <= v.c && (o.a != v.a || o.c != v.c);
    });
    if (!contains_other) smallest.push_back(v);
  }
  std::sort(smallest.begin(), smallest.end(), [](const Valley& x, const Valley& y) {
    const auto kx = std::make_tuple(std::abs(x.b), x.b < 0, x.c - x.a, -x.a);
    const auto ky = std::make_tuple(std::abs(y.b), y.b < 0, y.c - y.a, -y.a);
    return kx < ky;
  });
  const auto& best = smallest.front();
  out = best;
  out.candidates = static_cast<std::size_t>(std::count_if(
      smallest.begin(), smallest.end(), [&](const Valley& v) { return v.b == best.b; }));
  return true;
}

Valley find_minimal_valley_threshold(Potential& V, double threshold, std::uint64_t budget) {
  if (!(threshold > 0.0)) throw std::invalid_argument("valley threshold must be positive");
  if (!V.extendable()) {
    Valley v;
    if (!find_minimal_valley_in_window(V, threshold, v))
      throw SiteBudgetExceeded("no qualifying valley inside the fixed potential window", budget);
    return v;
  }
  std::int64_t half = 64;
  bool have_previous = false;
  Valley previous;
  for (;;) {
    if (static_cast<std::uint64_t>(2 * half + 1) > budget)
      throw SiteBudgetExceeded("minimal-valley search exceeded the site budget of " + std::to_string(budget), budget);
    V.extend(-half, half);
    Valley current;
    const bool ok = find_minimal_valley_in_window(V, threshold, current);
    if (ok && have_previous && current.a == previous.a && current.b == previous.b && current.c == previous.c)
      return current;
    have_previous = ok;
    previous = current;
    half *= 2;
  }
}

Valley find_minimal_valley(const Environment& env, double n, std::uint64_t budget) {
  if (!(n >= 3.0)) throw std::invalid_argument("find_minimal_valley requires n >= 3");
  Potential V(env, -64, 64);
  auto out = find_minimal_valley_threshold(V, valley_threshold(n), budget);
  out.n = n;
  return out;
}

}  // namespace rwre
