#pragma once

#include <cstdint>
#include <vector>

#include "rwre/env.hpp"

namespace rwre {

inline constexpr std::uint64_t kDefaultSiteBudget = 10'000'000;

/// log n + (log n)^{1/2}. Requires n > 1.
double valley_threshold(double n);

/// Half-line landmarks: c_n is the first x >= 0 where V rises `threshold`
/// above its running minimum, b_n the first argmin of V on [0, c_n].
struct HalfLineValley {
  double n = 0.0;
  double threshold = 0.0;
  std::int64_t b = 0;
  std::int64_t c = 0;
};

/// Scans a potential rightwards from 0 (extending it on demand). Throws
/// SiteBudgetExceeded once more than `budget` sites have been examined, or
/// once a fixed potential runs out of sites.
HalfLineValley find_cn_bn_threshold(Potential& V, double threshold, std::uint64_t budget = kDefaultSiteBudget);

/// Requires n >= 3.
HalfLineValley find_cn_bn(const Environment& env, double n, std::uint64_t budget = kDefaultSiteBudget);

/// (a, b, c) with a < b < c, V(b) = min over [a, c], V(a) = max over [a, b],
/// V(c) = max over [b, c]; depth = min(V(a) - V(b), V(c) - V(b)).
struct Valley {
  double n = 0.0;
  double threshold = 0.0;
  std::int64_t a = 0;
  std::int64_t b = 0;
  std::int64_t c = 0;
  double depth = 0.0;
  /// Candidates left after the |b| and b > 0 tie-breaks (1 when unique).
  std::size_t candidates = 1;
};

bool is_valley(const Potential& V, std::int64_t a, std::int64_t b, std::int64_t c);
double valley_depth(const Potential& V, std::int64_t a, std::int64_t b, std::int64_t c);

/// Largest depth among valleys strictly inside (a, c):
/// max over a < x < y < z < c of min(V(x) - V(y), V(z) - V(y)); -inf if none.
double max_inner_depth(const Potential& V, std::int64_t a, std::int64_t c);

/// Smallest minimal valley of depth >= threshold with a < 0 < c, searched
/// within the potential's current window. Returns false when no such valley
/// lies inside the window.
bool find_minimal_valley_in_window(const Potential& V, double threshold, Valley& out);

/// Integer-axis search; the window grows geometrically around 0 until the
/// answer is found and stays the same after one further doubling.
Valley find_minimal_valley_threshold(Potential& V, double threshold, std::uint64_t budget = kDefaultSiteBudget);

/// Requires n >= 3.
Valley find_minimal_valley(const Environment& env, double n, std::uint64_t budget = kDefaultSiteBudget);

}  // namespace rwre
