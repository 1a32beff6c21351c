#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <map>
#include <memory>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "rwre/rwre.h"

using nlohmann::json;

namespace {

constexpr int kSchemaVersion = 1;

struct ApiError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct CheckFailed : std::runtime_error {
  using std::runtime_error::runtime_error;
};

void check(rwre_status s) {
  if (s != RWRE_OK) throw ApiError(std::string(rwre_status_name(s)) + ": " + rwre_last_error());
}

struct EnvDeleter {
  void operator()(rwre_env* e) const { rwre_env_free(e); }
};
struct FieldDeleter {
  void operator()(rwre_field* f) const { rwre_field_free(f); }
};
struct StringDeleter {
  void operator()(char* s) const { rwre_string_free(s); }
};
using EnvPtr = std::unique_ptr<rwre_env, EnvDeleter>;
using FieldPtr = std::unique_ptr<rwre_field, FieldDeleter>;
using StringPtr = std::unique_ptr<char, StringDeleter>;

void round_significant(json& j) {
  if (j.is_number_float()) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", j.get<double>());
    j = std::strtod(buf, nullptr);
  } else if (j.is_structured()) {
    for (auto& v : j) round_significant(v);
  }
}

struct Common {
  std::uint64_t seed = 0;
  std::string out = "-";
  std::string format = "csv";
  unsigned threads = 0;
  std::string config;
  bool check = false;
};

struct Family {
  std::string name = "two_point";
  double w = 0.25;
  double M = 0.75;
  double delta = 0.1;

  json to_json() const {
    if (name == "two_point") return {{"family", name}, {"params", {{"w", w}, {"M", M}}}};
    return {{"family", name}, {"params", {{"delta", delta}}}};
  }

  EnvPtr make(std::uint64_t seed) const {
    auto j = to_json();
    j["seed"] = seed;
    rwre_env* e = nullptr;
    check(rwre_env_from_json(j.dump().c_str(), &e));
    return EnvPtr(e);
  }
};

void add_common(CLI::App* cmd, Common& c) {
  cmd->add_option("--seed", c.seed, "Base seed (environment seed; walk seeds are derived from it)");
  cmd->add_option("--out", c.out, "Output file, '-' for stdout");
  cmd->add_option("--format", c.format, "Output format")->check(CLI::IsMember({"csv", "json"}));
  cmd->add_option("--threads", c.threads, "Worker threads, 0 = all cores");
  cmd->add_option("--config", c.config, "Config file: JSON object or key=value lines; flags take precedence");
  cmd->add_flag("--check", c.check, "Assert the command's acceptance conditions; exit 1 on failure");
}

void add_family(CLI::App* cmd, Family& f) {
  cmd->add_option("--family", f.name, "Environment family")->check(CLI::IsMember({"two_point", "symmetric_uniform"}));
  cmd->add_option("--w", f.w, "Lower atom w of the two-point family");
  cmd->add_option("--M", f.M, "Upper atom M of the two-point family");
  cmd->add_option("--delta", f.delta, "Half-width offset of the symmetric-uniform family");
}

class Output {
 public:
  explicit Output(const std::string& path) {
    if (path != "-") {
      file_.open(path);
      if (!file_) throw std::runtime_error("cannot open output file '" + path + "'");
    }
    os_ = path == "-" ? &std::cout : &file_;
    *os_ << std::setprecision(12);
  }
  std::ostream& operator*() { return *os_; }

 private:
  std::ofstream file_;
  std::ostream* os_;
};

void emit_json(const Common& c, json j) {
  round_significant(j);
  Output out(c.out);
  *out << j.dump(2) << '\n';
}

std::string csv_comment(const std::string& what) {
  return "# " + what + " schema_version=" + std::to_string(kSchemaVersion) + "\n";
}

void require_check(bool ok, const std::string& what) {
  if (!ok) throw CheckFailed(what);
}

// ---- simulate ----

struct SimulateArgs {
  Common c;
  Family f;
  std::uint64_t n = 1000;
  std::string chain = "half";
  std::int64_t box = 0;
  std::int64_t start = 0;
  std::uint64_t walk_seed = 0;
  bool walk_seed_set = false;
};

void run_simulate(const SimulateArgs& a) {
  auto env = a.f.make(a.c.seed);
  rwre_walk_config cfg{};
  cfg.chain = a.chain == "half" ? RWRE_HALF_LINE : a.chain == "full" ? RWRE_FULL_LINE : RWRE_REFLECTED_BOX;
  cfg.box = a.box;
  cfg.start = a.start;
  cfg.steps = a.n;
  cfg.seed = a.walk_seed_set ? a.walk_seed : rwre_derive_seed(a.c.seed, 2, 0);
  rwre_field* raw = nullptr;
  check(rwre_walk_run(env.get(), &cfg, &raw));
  FieldPtr field(raw);
  rwre_field_summary s{};
  check(rwre_field_summarize(field.get(), &s));
  if (a.c.check) require_check(s.total == a.n + 1, "local times do not sum to n + 1");

  if (a.c.format == "csv") {
    char* text = nullptr;
    check(rwre_field_csv(field.get(), &text));
    StringPtr owned(text);
    Output out(a.c.out);
    *out << text;
    return;
  }
  json counts = json::array();
  for (auto x = s.lo; x <= s.hi; ++x) {
    std::uint64_t k = 0;
    check(rwre_field_count(field.get(), x, &k));
    if (k > 0) counts.push_back({x, k});
  }
  emit_json(a.c, {{"schema_version", kSchemaVersion},
                  {"environment", [&] {
                     auto j = a.f.to_json();
                     j["seed"] = a.c.seed;
                     return j;
                   }()},
                  {"chain", a.chain},
                  {"walk_seed", cfg.seed},
                  {"steps", s.steps},
                  {"position", s.position},
                  {"total", s.total},
                  {"max_count", s.max_count},
                  {"sum_of_squares", s.sum_of_squares},
                  {"counts", counts}});
}

// ---- valley ----

struct ValleyArgs {
  Common c;
  Family f;
  double n = 1e4;
  std::string kind = "half";
  std::uint64_t budget = 10'000'000;
};

void run_valley(const ValleyArgs& a) {
  auto env = a.f.make(a.c.seed);
  json j{{"schema_version", kSchemaVersion}, {"kind", a.kind}};
  if (a.kind == "half") {
    rwre_half_line_valley v{};
    check(rwre_find_cn_bn(env.get(), a.n, a.budget, &v));
    j.update({{"n", v.n}, {"threshold", v.threshold}, {"b", v.b}, {"c", v.c}});
    if (a.c.check) {
      std::vector<double> V(static_cast<std::size_t>(v.c + 1));
      check(rwre_env_potential(env.get(), 0, v.c, V.data()));
      double lowest = V[0];
      for (auto x : V) lowest = std::min(lowest, x);
      require_check(V[static_cast<std::size_t>(v.b)] == lowest && V.back() - lowest >= v.threshold,
                    "half-line landmarks violate their definition");
    }
  } else {
    rwre_valley v{};
    check(rwre_find_minimal_valley(env.get(), a.n, a.budget, &v));
    j.update({{"n", v.n},
              {"threshold", v.threshold},
              {"a", v.a},
              {"b", v.b},
              {"c", v.c},
              {"depth", v.depth},
              {"candidates", v.candidates}});
    if (a.c.check) require_check(v.depth >= v.threshold && v.a < 0 && v.c > 0, "valley depth below threshold");
  }
  if (a.c.format == "json") return emit_json(a.c, j);
  round_significant(j);
  Output out(a.c.out);
  *out << csv_comment("valley");
  *out << "kind,n,threshold,a,b,c,depth,candidates\n";
  auto field = [&](const char* k) {
    if (!j.contains(k)) return std::string();
    if (!j[k].is_number_float()) return j[k].dump();
    std::ostringstream os;
    os << std::setprecision(12) << j[k].get<double>();
    return os.str();
  };
  *out << a.kind << ',' << field("n") << ',' << field("threshold") << ',' << field("a") << ',' << field("b") << ','
       << field("c") << ',' << field("depth") << ',' << field("candidates") << '\n';
}

// ---- profile ----

struct ProfileArgs {
  Common c;
  Family f;
  std::uint64_t n = 100'000;
  std::uint64_t walk_seed = 0;
  bool walk_seed_set = false;
  std::uint64_t budget = 10'000'000;
};

void run_profile(const ProfileArgs& a) {
  auto env = a.f.make(a.c.seed);
  const auto walk_seed = a.walk_seed_set ? a.walk_seed : rwre_derive_seed(a.c.seed, 2, 0);
  rwre_functional_sample s{};
  check(rwre_profile_check(env.get(), a.n, walk_seed, a.budget, &s));
  if (a.c.check) {
    const double n = static_cast<double>(a.n);
    require_check(s.sup <= 0.5 + 1.0 / n, "max local time exceeds n/2 + 1");
    require_check(s.sumsq <= s.sup * (n + 1) / n * (1 + 1e-12), "sum of squares exceeds sup bound");
  }
  if (a.c.format == "json") {
    return emit_json(a.c, {{"schema_version", kSchemaVersion},
                           {"n", s.n},
                           {"walk_seed", walk_seed},
                           {"sup", s.sup},
                           {"sumsq", s.sumsq},
                           {"l1", s.l1},
                           {"b_n", s.b},
                           {"c_n", s.c}});
  }
  Output out(a.c.out);
  *out << csv_comment("profile") << "n,sup,sumsq,l1,b_n,c_n\n";
  *out << s.n << ',' << s.sup << ',' << s.sumsq << ',' << s.l1 << ',' << s.b << ',' << s.c << '\n';
}

// ---- limsup ----

struct LimsupArgs {
  Common c;
  Family f;
  std::uint64_t horizon = 1'000'000;
  unsigned checkpoints = 11;
  std::uint64_t replicas = 4;
};

void run_limsup(const LimsupArgs& a) {
  auto plan = a.f.to_json();
  plan.update({{"horizon", a.horizon},
               {"checkpoints", a.checkpoints},
               {"replicas", a.replicas},
               {"seed", a.c.seed},
               {"threads", a.c.threads}});
  char* text = nullptr;
  check(rwre_limsup(plan.dump().c_str(), &text));
  StringPtr owned(text);
  const auto report = json::parse(text);
  const double estimate = report.at("estimate").get<double>();
  if (a.c.check) {
    require_check(estimate > 0.0, "limsup estimate is not positive");
    if (!report["reference_constant"].is_null())
      require_check(estimate < report["reference_constant"].get<double>() + 0.02,
                    "limsup estimate exceeds the reference constant + 0.02");
  }
  if (a.c.format == "json") return emit_json(a.c, report);
  Output out(a.c.out);
  *out << csv_comment("limsup") << "replicate,env_seed,walk_seed,running_max,argmax_time,estimate,reference_constant\n";
  std::size_t r = 0;
  for (const auto& rep : report["replicas"]) {
    *out << r++ << ',' << rep["env_seed"].get<std::uint64_t>() << ',' << rep["walk_seed"].get<std::uint64_t>() << ','
         << rep["running_max"].get<double>() << ',' << rep["argmax_time"].get<std::uint64_t>() << ',' << estimate
         << ',';
    if (report["reference_constant"].is_null()) {
      *out << "";
    } else {
      *out << report["reference_constant"].get<double>();
    }
    *out << '\n';
  }
}

// ---- converge ----

struct ConvergeArgs {
  Common c;
  Family f;
  std::vector<std::uint64_t> grid{10'000, 100'000};
  std::uint64_t replicas = 20;
  std::int64_t radius = 200;
  std::uint64_t max_attempts = 1'000'000;
  std::uint64_t budget = 10'000'000;
  std::string raw_prefix;
};

void run_converge(const ConvergeArgs& a) {
  auto plan = a.f.to_json();
  plan.update({{"n_grid", a.grid},
               {"replicas", a.replicas},
               {"seed", a.c.seed},
               {"radius", a.radius},
               {"max_attempts", a.max_attempts},
               {"site_budget", a.budget},
               {"threads", a.c.threads},
               {"output_prefix", a.raw_prefix}});
  char* text = nullptr;
  check(rwre_converge(plan.dump().c_str(), &text));
  StringPtr owned(text);
  const auto report = json::parse(text);
  if (a.c.check) {
    const auto& g = report.at("grid");
    require_check(g.size() >= 2, "--check needs at least two grid points");
    const auto& first = g.front();
    const auto& last = g.back();
    require_check(last["median_l1"].get<double>() < first["median_l1"].get<double>(),
                  "median l1 distance did not decrease across the grid");
    require_check(last["ks"][0]["statistic"].get<double>() < first["ks"][0]["statistic"].get<double>(),
                  "KS statistic of the sup functional did not decrease across the grid");
  }
  if (a.c.format == "json") return emit_json(a.c, report);
  Output out(a.c.out);
  *out << csv_comment("convergence summary") << "n,median_l1,median_sup,median_sumsq,ks_sup,ks_sumsq,threshold_5pct\n";
  for (const auto& g : report["grid"]) {
    *out << g["n"].get<std::uint64_t>() << ',' << g["median_l1"].get<double>() << ','
         << g["median_sup"].get<double>() << ',' << g["median_sumsq"].get<double>() << ','
         << g["ks"][0]["statistic"].get<double>() << ',' << g["ks"][1]["statistic"].get<double>() << ','
         << g["ks"][0]["threshold_5pct"].get<double>() << '\n';
  }
}

// ---- formulas ----

struct FormulasArgs {
  Common c;
  double M = 0.75;
  double w = 0.25;
  std::int64_t K = 1;
  std::int64_t hit_b = -1;
  std::int64_t hit_y = -1;
  std::int64_t hit_i = -1;
};

void run_formulas(const FormulasArgs& a) {
  std::vector<std::pair<std::string, json>> rows;
  double constant = 0;
  double nb0 = 0;
  double nb1 = 0;
  double nbk = 0;
  check(rwre_limsup_constant(a.M, a.w, &constant));
  check(rwre_nu_bar(a.M, a.w, 0, &nb0));
  check(rwre_nu_bar(a.M, a.w, 1, &nb1));
  check(rwre_nu_bar_K(a.M, a.w, a.K, &nbk));
  rows.emplace_back("M", a.M);
  rows.emplace_back("w", a.w);
  rows.emplace_back("constant", constant);
  rows.emplace_back("nu_bar_0", nb0);
  rows.emplace_back("nu_bar_1", nb1);
  rows.emplace_back("K", a.K);
  rows.emplace_back("nu_bar_K", nbk);
  double p = 0;
  if (rwre_mixing_probability(a.w, a.M, &p) == RWRE_OK) rows.emplace_back("mixing_probability", p);
  if (a.hit_b >= 0 || a.hit_y >= 0 || a.hit_i >= 0) {
    rwre_env* raw = nullptr;
    check(rwre_env_two_point(a.w, a.M, a.c.seed, &raw));
    EnvPtr env(raw);
    double h = 0;
    check(rwre_hitting_prob(env.get(), a.hit_b, a.hit_y, a.hit_i, &h));
    rows.emplace_back("hitting_prob", h);
  }
  if (a.c.check) require_check(std::abs(constant - std::max(nb0, nb1)) <= 1e-12, "constant != max(nu_bar(0), nu_bar(1))");
  if (a.c.format == "json") {
    json j{{"schema_version", kSchemaVersion}};
    for (auto& [k, v] : rows) j[k] = v;
    return emit_json(a.c, j);
  }
  Output out(a.c.out);
  *out << csv_comment("formulas") << "quantity,value\n";
  for (auto& [k, v] : rows) {
    json r = v;
    round_significant(r);
    *out << k << ',' << r.dump() << '\n';
  }
}

// ---- dominance ----

struct DominanceArgs {
  Common c;
  double w = 0.25;
  double M = 0.75;
  std::uint64_t max_n = 16;
  std::uint64_t instances = 50;
  std::int64_t radius = 0;
};

void run_dominance(const DominanceArgs& a) {
  char* text = nullptr;
  check(rwre_dominance(a.w, a.M, a.max_n, a.instances, a.c.seed, a.radius, &text));
  StringPtr owned(text);
  const auto report = json::parse(text);
  if (a.c.check) require_check(report["passed"].get<bool>(), "stochastic dominance violated at the origin");
  if (a.c.format == "json") return emit_json(a.c, report);
  Output out(a.c.out);
  *out << csv_comment("dominance") << "# origin_checks=" << report["origin_checks"] << " other_checks="
       << report["other_checks"] << " passed=" << report["passed"] << '\n';
  *out << "kind,instance,n,site,k,excess\n";
  for (const char* kind : {"origin", "other"}) {
    for (const auto& v : report[std::string(kind) + "_violations"])
      *out << kind << ',' << v["instance"] << ',' << v["n"] << ',' << v["site"] << ',' << v["k"] << ','
           << v["excess"].get<double>() << '\n';
  }
}

// ---- config files ----

std::map<std::string, std::string> read_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read config file '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  const auto text = buf.str();
  std::map<std::string, std::string> out;
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && text[first] == '{') {
    const auto doc = json::parse(text);
    if (!doc.is_object()) throw std::runtime_error("config file '" + path + "' must hold a JSON object");
    for (const auto& [k, v] : doc.items()) {
      if (v.is_string()) {
        out[k] = v.get<std::string>();
      } else if (v.is_array()) {
        std::string joined;
        for (const auto& e : v) joined += (joined.empty() ? "" : ",") + (e.is_string() ? e.get<std::string>() : e.dump());
        out[k] = joined;
      } else {
        out[k] = v.dump();
      }
    }
    return out;
  }
  std::istringstream lines(text);
  std::string line;
  int number = 0;
  while (std::getline(lines, line)) {
    ++number;
    const auto start = line.find_first_not_of(" \t\r");
    if (start == std::string::npos || line[start] == '#') continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw std::runtime_error(path + ":" + std::to_string(number) + ": expected key=value");
    auto trim = [](std::string s) {
      const auto b = s.find_first_not_of(" \t\r");
      const auto e = s.find_last_not_of(" \t\r");
      return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
    };
    out[trim(line.substr(0, eq))] = trim(line.substr(eq + 1));
  }
  return out;
}

// Flags given on the command line win; config entries fill in the rest.
std::vector<std::string> apply_config(std::vector<std::string> args) {
  std::string path;
  std::set<std::string> given;
  for (std::size_t i = 0; i < args.size(); ++i) {
    const auto& a = args[i];
    if (a.rfind("--", 0) != 0) continue;
    const auto eq = a.find('=');
    const auto key = a.substr(2, eq == std::string::npos ? std::string::npos : eq - 2);
    given.insert(key);
    if (key == "config") path = eq == std::string::npos ? (i + 1 < args.size() ? args[i + 1] : "") : a.substr(eq + 1);
  }
  if (path.empty()) return args;
  for (const auto& [key, value] : read_config(path)) {
    if (given.count(key)) continue;
    if (key == "check") {
      if (value == "true" || value == "1") args.push_back("--check");
      continue;
    }
    args.push_back("--" + key);
    args.push_back(value);
  }
  return args;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Simulation and verification lab for recurrent random walks in random environment"};
  app.require_subcommand(1);

  SimulateArgs sim;
  auto* c_sim = app.add_subcommand("simulate", "Run a walk and write its local-time field (x,count)");
  add_common(c_sim, sim.c);
  add_family(c_sim, sim.f);
  c_sim->add_option("--n", sim.n, "Number of steps");
  c_sim->add_option("--chain", sim.chain, "half (reflected at 0), full (on Z) or box (reflected on [0, box])")
      ->check(CLI::IsMember({"half", "full", "box"}));
  c_sim->add_option("--box", sim.box, "Right wall for --chain box");
  c_sim->add_option("--start", sim.start, "Start site");
  c_sim->add_option("--walk-seed", sim.walk_seed, "Walk seed (default derived from --seed)")
      ->each([&](const std::string&) { sim.walk_seed_set = true; });

  ValleyArgs val;
  auto* c_val = app.add_subcommand("valley", "Locate valley landmarks for time scale n");
  add_common(c_val, val.c);
  add_family(c_val, val.f);
  c_val->add_option("--n", val.n, "Time scale (>= 3); threshold is log n + sqrt(log n)");
  c_val->add_option("--kind", val.kind, "half: (b_n, c_n) on the half-line; full: smallest minimal valley on Z")
      ->check(CLI::IsMember({"half", "full"}));
  c_val->add_option("--budget", val.budget, "Site budget for the scan");

  ProfileArgs pro;
  auto* c_pro = app.add_subcommand("profile", "Compare a walk's local-time profile with the reflected invariant law");
  add_common(c_pro, pro.c);
  add_family(c_pro, pro.f);
  c_pro->add_option("--n", pro.n, "Number of steps (>= 3)");
  c_pro->add_option("--walk-seed", pro.walk_seed, "Walk seed (default derived from --seed)")
      ->each([&](const std::string&) { pro.walk_seed_set = true; });
  c_pro->add_option("--budget", pro.budget, "Site budget for the landmark scan");

  LimsupArgs lim;
  auto* c_lim = app.add_subcommand("limsup", "Running-max estimate of max local time / n along long walks");
  add_common(c_lim, lim.c);
  add_family(c_lim, lim.f);
  c_lim->add_option("--horizon", lim.horizon, "Final time (>= 1e5)");
  c_lim->add_option("--checkpoints", lim.checkpoints, "Geometric checkpoints n_k = n_0 2^k ending at the horizon");
  c_lim->add_option("--replicas", lim.replicas, "Independent environments");

  ConvergeArgs con;
  auto* c_con = app.add_subcommand("converge", "Profile functionals along an n grid versus infinite-valley draws");
  add_common(c_con, con.c);
  add_family(c_con, con.f);
  c_con->add_option("--grid", con.grid, "Strictly increasing times, comma separated")->delimiter(',');
  c_con->add_option("--replicas", con.replicas, "Environments (and infinite-valley draws)");
  c_con->add_option("--radius", con.radius, "Window radius N for the infinite-valley draws");
  c_con->add_option("--max-attempts", con.max_attempts, "Rejection-sampling budget per draw");
  c_con->add_option("--budget", con.budget, "Site budget for the landmark scans");
  c_con->add_option("--raw-prefix", con.raw_prefix, "Write <prefix>.samples.csv, <prefix>.nu.csv and <prefix>.json");

  FormulasArgs frm;
  auto* c_frm = app.add_subcommand("formulas", "Closed-form values for the extremal environments");
  add_common(c_frm, frm.c);
  c_frm->add_option("--M", frm.M, "Upper support point, 1/2 < M <= 1");
  c_frm->add_option("--w", frm.w, "Lower support point, 0 <= w < 1/2");
  c_frm->add_option("--K", frm.K, "Reflected extremal depth K >= 1");
  c_frm->add_option("--hit-b", frm.hit_b, "Hitting probability: lower target b (two-point environment with --seed)");
  c_frm->add_option("--hit-y", frm.hit_y, "Hitting probability: start y");
  c_frm->add_option("--hit-i", frm.hit_i, "Hitting probability: upper target i");

  DominanceArgs dom;
  auto* c_dom = app.add_subcommand("dominance", "Exact check that local times are dominated by the extremal valley's");
  add_common(c_dom, dom.c);
  c_dom->add_option("--w", dom.w, "Lower bound of the environment");
  c_dom->add_option("--M", dom.M, "Upper bound of the environment (M <= 1 - w)");
  c_dom->add_option("--max-n", dom.max_n, "Largest time n (<= 24)");
  c_dom->add_option("--instances", dom.instances, "Random environments");
  c_dom->add_option("--radius", dom.radius, "Also report sites 0 < |x| <= radius");

  std::vector<std::string> args;
  try {
    args = apply_config(std::vector<std::string>(argv + 1, argv + argc));
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  std::reverse(args.begin(), args.end());
  try {
    app.parse(args);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  try {
    if (c_sim->parsed()) run_simulate(sim);
    if (c_val->parsed()) run_valley(val);
    if (c_pro->parsed()) run_profile(pro);
    if (c_lim->parsed()) run_limsup(lim);
    if (c_con->parsed()) run_converge(con);
    if (c_frm->parsed()) run_formulas(frm);
    if (c_dom->parsed()) run_dominance(dom);
  } catch (const CheckFailed& e) {
    std::cerr << "check failed: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
