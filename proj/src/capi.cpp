#include "rwre/rwre.h"

#include <cstring>
#include <exception>
#include <new>
#include <sstream>
#include <stdexcept>
#include <string>

#include "json.hpp"
#include "rwre/deepvalley.hpp"
#include "rwre/dominance.hpp"
#include "rwre/env.hpp"
#include "rwre/errors.hpp"
#include "rwre/rng.hpp"
#include "rwre/serialize.hpp"
#include "rwre/stats.hpp"
#include "rwre/theory.hpp"
#include "rwre/valley.hpp"
#include "rwre/walk.hpp"

struct rwre_env {
  rwre::Environment env;
};

struct rwre_field {
  rwre::LocalTimeField field;
};

namespace {

thread_local std::string last_error;

rwre_status fail(rwre_status status, const char* what) {
  last_error = what;
  return status;
}

template <class F>
rwre_status guard(F&& body) {
  try {
    body();
    last_error.clear();
    return RWRE_OK;
  } catch (const rwre::SiteBudgetExceeded& e) {
    return fail(RWRE_SITE_BUDGET_EXCEEDED, e.what());
  } catch (const rwre::AttemptsExhausted& e) {
    return fail(RWRE_ATTEMPTS_EXHAUSTED, e.what());
  } catch (const std::invalid_argument& e) {
    return fail(RWRE_INVALID_ARGUMENT, e.what());
  } catch (const std::out_of_range& e) {
    return fail(RWRE_INVALID_ARGUMENT, e.what());
  } catch (const nlohmann::json::exception& e) {
    return fail(RWRE_INVALID_ARGUMENT, e.what());
  } catch (const std::ios_base::failure& e) {
    return fail(RWRE_IO_ERROR, e.what());
  } catch (const std::exception& e) {
    return fail(RWRE_INTERNAL_ERROR, e.what());
  } catch (...) {
    return fail(RWRE_INTERNAL_ERROR, "unknown error");
  }
}

void require(const void* p, const char* name) {
  if (p == nullptr) throw std::invalid_argument(std::string(name) + " must not be null");
}

char* copy_string(const std::string& s) {
  auto* out = new char[s.size() + 1];
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

rwre::WalkConfig to_config(const rwre_walk_config* c) {
  require(c, "walk config");
  rwre::WalkConfig cfg;
  switch (c->chain) {
    case RWRE_HALF_LINE: cfg.chain = rwre::Chain::HalfLine; break;
    case RWRE_FULL_LINE: cfg.chain = rwre::Chain::FullLine; break;
    case RWRE_REFLECTED_BOX: cfg.chain = rwre::Chain::ReflectedBox; break;
    default: throw std::invalid_argument("unknown chain kind");
  }
  cfg.box = c->box;
  cfg.start = c->start;
  cfg.steps = c->steps;
  cfg.seed = c->seed;
  rwre::validate(cfg);
  return cfg;
}

std::uint64_t budget_or_default(std::uint64_t budget) { return budget == 0 ? rwre::kDefaultSiteBudget : budget; }

}  // namespace

extern "C" {

const char* rwre_last_error(void) { return last_error.c_str(); }

const char* rwre_status_name(rwre_status status) {
  switch (status) {
    case RWRE_OK: return "ok";
    case RWRE_INVALID_ARGUMENT: return "invalid argument";
    case RWRE_SITE_BUDGET_EXCEEDED: return "site budget exceeded";
    case RWRE_ATTEMPTS_EXHAUSTED: return "attempts exhausted";
    case RWRE_IO_ERROR: return "i/o error";
    case RWRE_INTERNAL_ERROR: return "internal error";
  }
  return "unknown status";
}

const char* rwre_version(void) { return "1.0.0"; }

void rwre_string_free(char* s) { delete[] s; }

uint64_t rwre_derive_seed(uint64_t base, uint64_t stream, uint64_t index) {
  return rwre::derive_seed(base, stream, index);
}

rwre_status rwre_env_two_point(double w, double M, uint64_t seed, rwre_env** out) {
  return guard([&] {
    require(out, "out");
    *out = new rwre_env{rwre::Environment(rwre::EnvFamily::two_point(w, M), seed)};
  });
}

rwre_status rwre_env_symmetric_uniform(double delta, uint64_t seed, rwre_env** out) {
  return guard([&] {
    require(out, "out");
    *out = new rwre_env{rwre::Environment(rwre::EnvFamily::symmetric_uniform(delta), seed)};
  });
}

rwre_status rwre_env_from_json(const char* json, rwre_env** out) {
  return guard([&] {
    require(json, "json");
    require(out, "out");
    *out = new rwre_env{rwre::environment_from_json(nlohmann::json::parse(json))};
  });
}

rwre_status rwre_env_to_json(const rwre_env* env, char** out) {
  return guard([&] {
    require(env, "env");
    require(out, "out");
    *out = copy_string(rwre::environment_to_json(env->env).dump());
  });
}

void rwre_env_free(rwre_env* env) { delete env; }

rwre_status rwre_env_omega(const rwre_env* env, int64_t x, double* out) {
  return guard([&] {
    require(env, "env");
    require(out, "out");
    *out = env->env.omega(x);
  });
}

rwre_status rwre_env_potential(const rwre_env* env, int64_t lo, int64_t hi, double* out) {
  return guard([&] {
    require(env, "env");
    require(out, "out");
    const rwre::Potential V(env->env, lo, hi);
    for (auto x = lo; x <= hi; ++x) out[x - lo] = V[x];
  });
}

rwre_status rwre_mixing_probability(double w, double M, double* out) {
  return guard([&] {
    require(out, "out");
    *out = rwre::EnvFamily::two_point(w, M).mixing_probability();
  });
}

rwre_status rwre_walk_run(const rwre_env* env, const rwre_walk_config* cfg, rwre_field** out) {
  return guard([&] {
    require(env, "env");
    require(out, "out");
    *out = new rwre_field{rwre::run_walk(env->env, to_config(cfg))};
  });
}

void rwre_field_free(rwre_field* field) { delete field; }

rwre_status rwre_field_summarize(const rwre_field* field, rwre_field_summary* out) {
  return guard([&] {
    require(field, "field");
    require(out, "out");
    const auto& f = field->field;
    *out = rwre_field_summary{f.steps(), f.position(), f.lo(), f.hi(), f.total(), f.max_count(), f.sum_of_squares()};
  });
}

rwre_status rwre_field_count(const rwre_field* field, int64_t x, uint64_t* out) {
  return guard([&] {
    require(field, "field");
    require(out, "out");
    *out = field->field.count(x);
  });
}

rwre_status rwre_field_csv(const rwre_field* field, char** out) {
  return guard([&] {
    require(field, "field");
    require(out, "out");
    std::ostringstream os;
    os << "# local times schema_version=" << rwre::kSchemaVersion << '\n';
    rwre::write_field_csv(os, field->field);
    *out = copy_string(os.str());
  });
}

rwre_status rwre_hitting_time(const rwre_env* env, const rwre_walk_config* cfg, int64_t target, uint64_t cap,
                              int* hit, uint64_t* time) {
  return guard([&] {
    require(env, "env");
    require(hit, "hit");
    require(time, "time");
    if (cap == 0) throw std::invalid_argument("hitting-time cap must be positive");
    const auto t = rwre::hitting_time(env->env, to_config(cfg), target, cap);
    *hit = t.has_value() ? 1 : 0;
    *time = t.value_or(0);
  });
}

rwre_status rwre_exact_localtime(const rwre_env* env, const rwre_walk_config* cfg, int64_t x, uint64_t n,
                                 double* out) {
  return guard([&] {
    require(env, "env");
    require(out, "out");
    const auto p = rwre::exact_localtime_distribution(env->env.omega_fn(), to_config(cfg), x, n);
    std::copy(p.begin(), p.end(), out);
  });
}

rwre_status rwre_find_cn_bn(const rwre_env* env, double n, uint64_t budget, rwre_half_line_valley* out) {
  return guard([&] {
    require(env, "env");
    require(out, "out");
    const auto v = rwre::find_cn_bn(env->env, n, budget_or_default(budget));
    *out = rwre_half_line_valley{v.n, v.threshold, v.b, v.c};
  });
}

rwre_status rwre_find_minimal_valley(const rwre_env* env, double n, uint64_t budget, rwre_valley* out) {
  return guard([&] {
    require(env, "env");
    require(out, "out");
    const auto v = rwre::find_minimal_valley(env->env, n, budget_or_default(budget));
    *out = rwre_valley{v.n, v.threshold, v.a, v.b, v.c, v.depth, v.candidates};
  });
}

rwre_status rwre_limsup_constant(double M, double w, double* out) {
  return guard([&] {
    require(out, "out");
    *out = rwre::limsup_constant(M, w);
  });
}

rwre_status rwre_nu_bar(double M, double w, int site, double* out) {
  return guard([&] {
    require(out, "out");
    *out = rwre::nu_bar(M, w, site);
  });
}

rwre_status rwre_nu_bar_K(double M, double w, int64_t K, double* out) {
  return guard([&] {
    require(out, "out");
    *out = rwre::nu_bar_K(M, w, K);
  });
}

rwre_status rwre_hitting_prob(const rwre_env* env, int64_t b, int64_t y, int64_t i, double* out) {
  return guard([&] {
    require(env, "env");
    require(out, "out");
    *out = rwre::hitting_prob(env->env, b, y, i);
  });
}

rwre_status rwre_gamma_n(const rwre_env* env, int64_t b, int64_t c, double* out) {
  return guard([&] {
    require(env, "env");
    require(out, "out");
    *out = rwre::gamma_n(env->env, b, c);
  });
}

rwre_status rwre_profile_check(const rwre_env* env, uint64_t n, uint64_t walk_seed, uint64_t budget,
                               rwre_functional_sample* out) {
  return guard([&] {
    require(env, "env");
    require(out, "out");
    const auto s = rwre::quenched_profile_check(env->env, n, walk_seed, budget_or_default(budget));
    *out = rwre_functional_sample{s.n, s.sup, s.sumsq, s.l1, s.b, s.c};
  });
}

rwre_status rwre_limsup(const char* plan_json, char** report_json) {
  return guard([&] {
    require(plan_json, "plan");
    require(report_json, "report");
    const auto plan = nlohmann::json::parse(plan_json);
    const auto family = rwre::family_from_json(plan);
    const auto r = rwre::limsup_estimate(family, plan.at("horizon").get<std::uint64_t>(),
                                         plan.value("checkpoints", 11u), plan.at("replicas").get<std::uint64_t>(),
                                         plan.value("seed", std::uint64_t{0}), plan.value("threads", 0u));
    nlohmann::json j;
    j["schema_version"] = rwre::kSchemaVersion;
    j["environment"] = rwre::family_to_json(family);
    j["horizon"] = r.horizon;
    j["checkpoints"] = r.checkpoints;
    j["estimate"] = r.estimate;
    if (const auto* p = std::get_if<rwre::TwoPoint>(&family.variant())) {
      j["reference_constant"] = rwre::limsup_constant(p->M, p->w);
    } else {
      j["reference_constant"] = nullptr;
    }
    j["replicas"] = nlohmann::json::array();
    for (const auto& rep : r.replicas)
      j["replicas"].push_back({{"env_seed", rep.env_seed},
                               {"walk_seed", rep.walk_seed},
                               {"running_max", rep.running_max},
                               {"argmax_time", rep.argmax_time}});
    rwre::round_significant(j);
    *report_json = copy_string(j.dump(2));
  });
}

rwre_status rwre_converge(const char* plan_json, char** report_json) {
  return guard([&] {
    require(plan_json, "plan");
    require(report_json, "report");
    const auto j = nlohmann::json::parse(plan_json);
    rwre::ExperimentPlan plan;
    plan.family = rwre::family_from_json(j);
    plan.n_grid = j.at("n_grid").get<std::vector<std::uint64_t>>();
    plan.replicas = j.at("replicas").get<std::uint64_t>();
    plan.seed = j.value("seed", std::uint64_t{0});
    plan.radius = j.value("radius", rwre::kDefaultValleyRadius);
    plan.max_attempts = j.value("max_attempts", rwre::kDefaultMaxAttempts);
    plan.site_budget = j.value("site_budget", rwre::kDefaultSiteBudget);
    plan.threads = j.value("threads", 0u);
    plan.output_prefix = j.value("output_prefix", std::string{});
    const auto report = rwre::convergence_experiment(plan);
    *report_json = copy_string(rwre::report_json(plan, report));
  });
}

rwre_status rwre_dominance(double w, double M, uint64_t max_n, uint64_t instances, uint64_t seed, int64_t radius,
                           char** report_json) {
  return guard([&] {
    require(report_json, "report");
    const auto r = rwre::check_dominance(w, M, max_n, instances, seed, radius);
    auto rows = [](const std::vector<rwre::DominanceViolation>& v) {
      auto a = nlohmann::json::array();
      for (const auto& d : v)
        a.push_back({{"instance", d.instance}, {"n", d.n}, {"site", d.site}, {"k", d.k}, {"excess", d.excess}});
      return a;
    };
    nlohmann::json j;
    j["schema_version"] = rwre::kSchemaVersion;
    j["w"] = r.w;
    j["M"] = r.M;
    j["max_n"] = r.max_n;
    j["instances"] = r.instances;
    j["radius"] = r.radius;
    j["slack"] = rwre::kDominanceSlack;
    j["origin_checks"] = r.origin_checks;
    j["origin_violations"] = rows(r.origin_violations);
    j["other_checks"] = r.other_checks;
    j["other_violations"] = rows(r.other_violations);
    j["passed"] = r.origin_violations.empty();
    rwre::round_significant(j);
    *report_json = copy_string(j.dump(2));
  });
}

}  // extern "C"
