#include "rwre/walk.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>
#include <stdexcept>
#include <string>

namespace rwre {

namespace {

constexpr std::size_t kNoEdge = std::numeric_limits<std::size_t>::max();
constexpr std::int64_t kInitialHalfWidth = 64;

// A step goes right iff (u >> 1) < threshold, with threshold = floor(ω 2^63).
// ω = 1 maps to 2^63 and is always taken; ω = 0 is never taken.
std::uint64_t threshold_of(double omega) {
  if (!(omega >= 0.0 && omega <= 1.0)) throw std::invalid_argument("site probability outside [0, 1]");
  return static_cast<std::uint64_t>(std::ldexp(omega, 63));
}

// Dense threshold table over a window of sites with optional hard walls.
struct SiteTable {
  const OmegaFn* omega;
  const WalkConfig* cfg;
  std::int64_t lo = 0;
  std::vector<std::uint64_t> thr;
  bool hard_lo = false;
  bool hard_hi = false;

  SiteTable(const OmegaFn& om, const WalkConfig& c) : omega(&om), cfg(&c) {
    std::int64_t a = c.start - kInitialHalfWidth;
    std::int64_t b = c.start + kInitialHalfWidth;
    if (c.chain != Chain::FullLine) {
      a = 0;
      hard_lo = true;
    }
    if (c.chain == Chain::ReflectedBox) {
      b = c.box;
      hard_hi = true;
    }
    lo = a;
    thr.resize(static_cast<std::size_t>(b - a + 1));
    for (auto x = a; x <= b; ++x) thr[static_cast<std::size_t>(x - a)] = threshold_of(chain_omega(om, c, x));
  }

  SiteTable(const OmegaFn& om, const WalkConfig& c, std::int64_t lo_site, std::vector<std::uint64_t> table,
            bool wall_lo, bool wall_hi)
      : omega(&om), cfg(&c), lo(lo_site), thr(std::move(table)), hard_lo(wall_lo), hard_hi(wall_hi) {}

  std::int64_t hi() const { return lo + static_cast<std::int64_t>(thr.size()) - 1; }
  std::size_t edge_lo() const { return hard_lo ? kNoEdge : 0; }
  std::size_t edge_hi() const { return hard_hi ? kNoEdge : thr.size() - 1; }

  // Returns the number of sites prepended (0 when growing right).
  std::size_t grow(bool left) {
    const auto extra = static_cast<std::int64_t>(std::max<std::size_t>(thr.size(), 64));
    if (left) {
      std::vector<std::uint64_t> front(static_cast<std::size_t>(extra));
      for (std::int64_t k = 0; k < extra; ++k)
        front[static_cast<std::size_t>(k)] = threshold_of(chain_omega(*omega, *cfg, lo - extra + k));
      thr.insert(thr.begin(), front.begin(), front.end());
      lo -= extra;
      return static_cast<std::size_t>(extra);
    }
    const auto old_hi = hi();
    for (std::int64_t x = old_hi + 1; x <= old_hi + extra; ++x) thr.push_back(threshold_of(chain_omega(*omega, *cfg, x)));
    return 0;
  }
};

}  // namespace

void validate(const WalkConfig& cfg) {
  switch (cfg.chain) {
    case Chain::HalfLine:
      if (cfg.start < 0) throw std::invalid_argument("half-line walk must start at a site >= 0");
      break;
    case Chain::ReflectedBox:
      if (cfg.box < 1) throw std::invalid_argument("reflected box needs box >= 1");
      if (cfg.start < 0 || cfg.start > cfg.box) throw std::invalid_argument("reflected-box walk must start in [0, box]");
      break;
    case Chain::FullLine:
      break;
  }
}

double chain_omega(const OmegaFn& omega, const WalkConfig& cfg, std::int64_t x) {
  switch (cfg.chain) {
    case Chain::HalfLine:
      return x <= 0 ? 1.0 : omega(x);
    case Chain::ReflectedBox:
      if (x <= 0) return 1.0;
      if (x >= cfg.box) return 0.0;
      return omega(x);
    case Chain::FullLine:
      break;
  }
  return omega(x);
}

std::uint64_t LocalTimeField::count(std::int64_t x) const noexcept {
  if (x < lo() || x > hi()) return 0;
  return counts_[static_cast<std::size_t>(x - lo_)];
}

std::vector<std::pair<std::int64_t, std::uint64_t>> LocalTimeField::entries() const {
  std::vector<std::pair<std::int64_t, std::uint64_t>> out;
  for (std::size_t k = 0; k < counts_.size(); ++k)
    if (counts_[k] > 0) out.emplace_back(lo_ + static_cast<std::int64_t>(k), counts_[k]);
  return out;
}

std::uint64_t LocalTimeField::total() const noexcept {
  std::uint64_t t = 0;
  for (auto c : counts_) t += c;
  return t;
}

std::uint64_t LocalTimeField::max_count() const noexcept {
  return counts_.empty() ? 0 : *std::max_element(counts_.begin(), counts_.end());
}

std::uint64_t LocalTimeField::sum_of_squares() const noexcept {
  std::uint64_t s = 0;
  for (auto c : counts_) s += c * c;
  return s;
}

void write_field_csv(std::ostream& os, const LocalTimeField& field) {
  os << "x,count\n";
  for (const auto& [x, c] : field.entries()) os << x << ',' << c << '\n';
}

Walker::Walker(OmegaFn omega, WalkConfig cfg) : omega_(std::move(omega)), cfg_(cfg), rng_(make_engine(cfg.seed)) {
  validate(cfg_);
  SiteTable table(omega_, cfg_);
  thresholds_ = std::move(table.thr);
  hard_lo_ = table.hard_lo;
  hard_hi_ = table.hard_hi;
  field_.lo_ = table.lo;
  field_.counts_.assign(thresholds_.size(), 0);
  field_.position_ = cfg_.start;
  field_.counts_[static_cast<std::size_t>(cfg_.start - field_.lo_)] = 1;
  advance(cfg_.steps);
}

void Walker::grow(bool left) {
  SiteTable table(omega_, cfg_, field_.lo_, std::move(thresholds_), hard_lo_, hard_hi_);
  const std::size_t prepended = table.grow(left);
  thresholds_ = std::move(table.thr);
  if (prepended > 0) {
    field_.counts_.insert(field_.counts_.begin(), prepended, 0);
    field_.lo_ = table.lo;
  } else {
    field_.counts_.resize(thresholds_.size(), 0);
  }
}

void Walker::advance(std::uint64_t steps) {
  std::size_t i = static_cast<std::size_t>(field_.position_ - field_.lo_);
  const std::uint64_t* thr = thresholds_.data();
  std::uint64_t* cnt = field_.counts_.data();
  std::size_t edge_lo = hard_lo_ ? kNoEdge : 0;
  std::size_t edge_hi = hard_hi_ ? kNoEdge : thresholds_.size() - 1;
  for (std::uint64_t k = 0; k < steps; ++k) {
    const std::uint64_t u = rng_() >> 1;
    i = u < thr[i] ? i + 1 : i - 1;
    ++cnt[i];
    if (i == edge_lo || i == edge_hi) [[unlikely]] {
      const bool left = i == edge_lo;
      const auto old_lo = field_.lo_;
      grow(left);
      i += static_cast<std::size_t>(old_lo - field_.lo_);
      thr = thresholds_.data();
      cnt = field_.counts_.data();
      edge_lo = hard_lo_ ? kNoEdge : 0;
      edge_hi = hard_hi_ ? kNoEdge : thresholds_.size() - 1;
    }
  }
  field_.steps_ += steps;
  field_.position_ = field_.lo_ + static_cast<std::int64_t>(i);
}

void Walker::advance_to(std::uint64_t time) {
  if (time > field_.steps_) advance(time - field_.steps_);
}

LocalTimeField run_walk(const OmegaFn& omega, const WalkConfig& cfg) { return Walker(omega, cfg).field(); }

namespace {

// Runs the chain until stop(site) is true at some time n >= 1 or cap steps
// elapse. Returns the stopping time.
template <class Stop>
std::optional<std::uint64_t> run_until(const OmegaFn& omega, const WalkConfig& cfg, std::uint64_t cap, Stop stop) {
  validate(cfg);
  SiteTable table(omega, cfg);
  Engine rng = make_engine(cfg.seed);
  std::size_t i = static_cast<std::size_t>(cfg.start - table.lo);
  std::size_t edge_lo = table.edge_lo();
  std::size_t edge_hi = table.edge_hi();
  for (std::uint64_t n = 1; n <= cap; ++n) {
    const std::uint64_t u = rng() >> 1;
    i = u < table.thr[i] ? i + 1 : i - 1;
    if (stop(table.lo + static_cast<std::int64_t>(i))) return n;
    if (i == edge_lo || i == edge_hi) [[unlikely]] {
      i += table.grow(i == edge_lo);
      edge_lo = table.edge_lo();
      edge_hi = table.edge_hi();
    }
  }
  return std::nullopt;
}

}  // namespace

std::optional<std::uint64_t> hitting_time(const OmegaFn& omega, const WalkConfig& cfg, std::int64_t target,
                                          std::uint64_t cap) {
  if (cap == 0) throw std::invalid_argument("hitting-time cap must be positive");
  return run_until(omega, cfg, cap, [target](std::int64_t x) { return x == target; });
}

std::optional<std::int64_t> first_hit(const OmegaFn& omega, const WalkConfig& cfg, std::int64_t a, std::int64_t b,
                                      std::uint64_t cap) {
  if (cap == 0) throw std::invalid_argument("hitting-time cap must be positive");
  std::int64_t which = 0;
  const auto t = run_until(omega, cfg, cap, [&](std::int64_t x) {
    if (x == a || x == b) {
      which = x;
      return true;
    }
    return false;
  });
  if (!t) return std::nullopt;
  return which;
}

std::uint64_t ExcursionRecord::visits(std::int64_t offset) const noexcept {
  const auto x = base + offset;
  if (x < lo || x >= lo + static_cast<std::int64_t>(counts.size())) return 0;
  return counts[static_cast<std::size_t>(x - lo)];
}

void for_each_excursion(const OmegaFn& omega, std::int64_t base, std::int64_t box, std::uint64_t count,
                        std::uint64_t seed, const std::function<void(const ExcursionRecord&)>& visit) {
  WalkConfig cfg{Chain::ReflectedBox, box, base, 0, seed};
  validate(cfg);
  SiteTable table(omega, cfg);
  Engine rng = make_engine(seed);
  std::vector<std::uint64_t> counts(table.thr.size(), 0);
  const auto b = static_cast<std::size_t>(base);
  ExcursionRecord rec;
  rec.base = base;
  for (std::uint64_t e = 0; e < count; ++e) {
    std::size_t i = b;
    std::size_t lo = b;
    std::size_t hi = b;
    std::uint64_t length = 0;
    counts[b] = 1;
    do {
      const std::uint64_t u = rng() >> 1;
      i = u < table.thr[i] ? i + 1 : i - 1;
      ++length;
      if (i != b) ++counts[i];
      lo = std::min(lo, i);
      hi = std::max(hi, i);
    } while (i != b);
    rec.lo = static_cast<std::int64_t>(lo);
    rec.counts.assign(counts.begin() + static_cast<std::ptrdiff_t>(lo), counts.begin() + static_cast<std::ptrdiff_t>(hi) + 1);
    rec.length = length;
    std::fill(counts.begin() + static_cast<std::ptrdiff_t>(lo), counts.begin() + static_cast<std::ptrdiff_t>(hi) + 1, 0);
    visit(rec);
  }
}

std::vector<ExcursionRecord> collect_excursions(const OmegaFn& omega, std::int64_t base, std::int64_t box,
                                                std::uint64_t count, std::uint64_t seed) {
  std::vector<ExcursionRecord> out;
  out.reserve(count);
  for_each_excursion(omega, base, box, count, seed, [&](const ExcursionRecord& r) { out.push_back(r); });
  return out;
}

std::vector<double> exact_localtime_distribution(const OmegaFn& omega, const WalkConfig& cfg, std::int64_t x,
                                                 std::uint64_t n) {
  if (n > kMaxExactSteps)
    throw std::invalid_argument("exact local-time distribution supports n <= " + std::to_string(kMaxExactSteps));
  validate(cfg);
  const auto steps = static_cast<std::int64_t>(n);
  const std::int64_t lo = cfg.start - steps;
  const std::int64_t width = 2 * steps + 1;
  const std::int64_t levels = steps + 2;
  std::vector<double> right(static_cast<std::size_t>(width));
  for (std::int64_t k = 0; k < width; ++k) {
    const auto site = lo + k;
    const bool reachable = cfg.chain == Chain::FullLine || (site >= 0 && (cfg.chain != Chain::ReflectedBox || site <= cfg.box));
    right[static_cast<std::size_t>(k)] = reachable ? chain_omega(omega, cfg, site) : 0.0;
  }
  auto idx = [&](std::int64_t pos, std::int64_t v) { return static_cast<std::size_t>(pos * levels + v); };
  std::vector<double> cur(static_cast<std::size_t>(width * levels), 0.0);
  std::vector<double> next(cur.size(), 0.0);
  const std::int64_t start = cfg.start - lo;
  cur[idx(start, cfg.start == x ? 1 : 0)] = 1.0;
  for (std::int64_t t = 0; t < steps; ++t) {
    std::fill(next.begin(), next.end(), 0.0);
    for (std::int64_t p = 0; p < width; ++p) {
      const double pr = right[static_cast<std::size_t>(p)];
      for (std::int64_t v = 0; v <= t + 1; ++v) {
        const double mass = cur[idx(p, v)];
        if (mass == 0.0) continue;
        if (pr > 0.0) {
          const auto q = p + 1;
          const auto nv = v + (lo + q == x ? 1 : 0);
          next[idx(q, nv)] += mass * pr;
        }
        if (pr < 1.0) {
          const auto q = p - 1;
          const auto nv = v + (lo + q == x ? 1 : 0);
          next[idx(q, nv)] += mass * (1.0 - pr);
        }
      }
    }
    std::swap(cur, next);
  }
  std::vector<double> dist(static_cast<std::size_t>(levels), 0.0);
  for (std::int64_t p = 0; p < width; ++p)
    for (std::int64_t v = 0; v < levels; ++v) dist[static_cast<std::size_t>(v)] += cur[idx(p, v)];
  return dist;
}

}  // namespace rwre
