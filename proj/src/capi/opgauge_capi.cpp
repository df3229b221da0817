#include "opgauge/opgauge.h"

#include <cstring>
#include <string>

#include "core/extension.hpp"
#include "core/gauges.hpp"
#include "core/json_io.hpp"
#include "core/maxgauge.hpp"
#include "core/regression.hpp"
#include "core/unitization.hpp"

struct og_space {
  og::OperatorSpace value;
};

struct og_element {
  og::LevelElement value;
  std::optional<og::CMat> scalar;
};

struct og_functional {
  og::Functional value;
};

struct og_config {
  og::SolverConfig value;
};

namespace {

thread_local std::string g_last_error;

og_status status_of(og::ErrorCode code) {
  using og::ErrorCode;
  switch (code) {
    case ErrorCode::InvalidArgument: return OG_ERR_INVALID_ARGUMENT;
    case ErrorCode::Dimension: return OG_ERR_DIMENSION;
    case ErrorCode::NotHermitian: return OG_ERR_NOT_HERMITIAN;
    case ErrorCode::Rank: return OG_ERR_RANK;
    case ErrorCode::Unit: return OG_ERR_UNIT;
    case ErrorCode::NotMember: return OG_ERR_NOT_MEMBER;
    case ErrorCode::SamplingExhausted: return OG_ERR_SAMPLING_EXHAUSTED;
    case ErrorCode::SolverIndeterminate: return OG_ERR_SOLVER_INDETERMINATE;
    case ErrorCode::Parse: return OG_ERR_PARSE;
    case ErrorCode::Unsupported: return OG_ERR_UNSUPPORTED;
  }
  return OG_ERR_INTERNAL;
}

template <typename Fn>
og_status guarded(Fn&& fn) {
  try {
    fn();
    return OG_OK;
  } catch (const og::Error& e) {
    g_last_error = e.what();
    return status_of(e.code());
  } catch (const nlohmann::json::exception& e) {
    g_last_error = e.what();
    return OG_ERR_PARSE;
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return OG_ERR_INTERNAL;
  }
}

char* dup_string(const std::string& s) {
  char* out = new char[s.size() + 1];
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

void require(bool cond, const char* what) {
  if (!cond) og::fail(og::ErrorCode::InvalidArgument, what);
}

nlohmann::json parse_json(const char* text, const char* what) {
  require(text != nullptr, "null JSON input");
  const nlohmann::json j = nlohmann::json::parse(text, nullptr, false);
  if (j.is_discarded()) {
    og::fail(og::ErrorCode::Parse, std::string(what) + ": malformed JSON");
  }
  return j;
}

og::SolverConfig config_or_default(const og_config* cfg) {
  return cfg ? cfg->value : og::SolverConfig{};
}

}  // namespace

extern "C" {

const char* og_version(void) { return "0.1.0"; }

const char* og_status_name(og_status status) {
  switch (status) {
    case OG_OK: return "ok";
    case OG_ERR_INVALID_ARGUMENT: return "invalid-argument";
    case OG_ERR_DIMENSION: return "dimension";
    case OG_ERR_NOT_HERMITIAN: return "not-hermitian";
    case OG_ERR_RANK: return "rank";
    case OG_ERR_UNIT: return "unit";
    case OG_ERR_NOT_MEMBER: return "not-a-member";
    case OG_ERR_SAMPLING_EXHAUSTED: return "sampling-exhausted";
    case OG_ERR_SOLVER_INDETERMINATE: return "solver-indeterminate";
    case OG_ERR_PARSE: return "parse";
    case OG_ERR_UNSUPPORTED: return "unsupported";
    case OG_ERR_INTERNAL: return "internal";
  }
  return "unknown";
}

const char* og_last_error(void) { return g_last_error.c_str(); }

void og_string_free(char* s) { delete[] s; }

og_status og_config_create(og_config** out) {
  return guarded([&] {
    require(out != nullptr, "null output handle");
    *out = new og_config{og::SolverConfig{}};
  });
}

og_status og_config_create_unitization(og_config** out) {
  return guarded([&] {
    require(out != nullptr, "null output handle");
    *out = new og_config{og::SolverConfig::unitization_defaults()};
  });
}

og_status og_config_update_json(og_config* cfg, const char* json_text) {
  return guarded([&] {
    require(cfg != nullptr, "null config handle");
    cfg->value.update_from_json(parse_json(json_text, "config"));
  });
}

og_status og_config_to_json(const og_config* cfg, char** out_json) {
  return guarded([&] {
    require(cfg != nullptr && out_json != nullptr, "null handle");
    *out_json = dup_string(cfg->value.to_json().dump());
  });
}

void og_config_free(og_config* cfg) { delete cfg; }

og_status og_space_from_json(const char* json_text, og_space** out) {
  return guarded([&] {
    require(out != nullptr, "null output handle");
    *out = new og_space{og::space_from_json(parse_json(json_text, "space"))};
  });
}

og_status og_space_to_json(const og_space* space, char** out_json) {
  return guarded([&] {
    require(space != nullptr && out_json != nullptr, "null handle");
    *out_json = dup_string(og::space_to_json(space->value).dump());
  });
}

og_status og_space_info_json(const og_space* space, char** out_json) {
  return guarded([&] {
    require(space != nullptr && out_json != nullptr, "null handle");
    const og::OperatorSpace& sp = space->value;
    const og::StarStructure st = og::star_structure(sp);
    nlohmann::json j{
        {"ambient_dim", sp.ambient_dim},
        {"dimension", sp.dim()},
        {"representation", sp.diagonal ? "diagonal" : "full"},
        {"has_unit", sp.has_unit()},
        {"self_adjoint_dim", st.sa_basis.size()},
        {"star_stable_dim", st.star_basis.size()},
    };
    if (sp.has_unit()) {
      j["unit_lambda_min"] = og::lambda_min(og::real_part(sp.unit_realized()));
    }
    *out_json = dup_string(j.dump());
  });
}

void og_space_free(og_space* space) { delete space; }

og_status og_element_from_json(const og_space* space, const char* json_text,
                               double membership_tol, og_element** out) {
  return guarded([&] {
    require(space != nullptr && out != nullptr, "null handle");
    og::ParsedElement parsed =
        og::element_from_json(space->value, parse_json(json_text, "element"), membership_tol);
    *out = new og_element{std::move(parsed.element), std::move(parsed.scalar)};
  });
}

og_status og_element_sample(const og_space* space, int level, uint64_t seed, const char* mode,
                            og_element** out) {
  return guarded([&] {
    require(space != nullptr && out != nullptr && mode != nullptr, "null handle");
    og::SampleMode m;
    const std::string name(mode);
    if (name == "generic") m = og::SampleMode::Generic;
    else if (name == "self-adjoint") m = og::SampleMode::SelfAdjoint;
    else if (name == "accretive") m = og::SampleMode::Accretive;
    else og::fail(og::ErrorCode::InvalidArgument, "unknown sample mode: " + name);
    *out = new og_element{og::sample_element(space->value, level, seed, m), std::nullopt};
  });
}

og_status og_element_to_json(const og_element* elem, char** out_json) {
  return guarded([&] {
    require(elem != nullptr && out_json != nullptr, "null handle");
    nlohmann::json j = og::element_to_json(elem->value);
    if (elem->scalar) j["X"] = og::matrix_to_json(*elem->scalar);
    *out_json = dup_string(j.dump());
  });
}

void og_element_free(og_element* elem) { delete elem; }

og_status og_gauge(const og_space* space, const og_element* elem, const char* which,
                   double* out) {
  return guarded([&] {
    require(space != nullptr && elem != nullptr && which != nullptr && out != nullptr,
            "null handle");
    const std::string name(which);
    if (name == "nu") *out = og::gauge_nu(elem->value);
    else if (name == "h") *out = og::gauge_h(elem->value);
    else if (name == "nu-e" || name == "nu_e") *out = og::gauge_nu_e(space->value, elem->value);
    else if (name == "norm") *out = og::gauge_norm(elem->value);
    else og::fail(og::ErrorCode::InvalidArgument, "unknown gauge selector: " + name);
  });
}

og_status og_gauge_u(const og_space* space, const og_element* elem, const og_config* cfg,
                     double* out) {
  return guarded([&] {
    require(space != nullptr && elem != nullptr && out != nullptr, "null handle");
    const int n = elem->value.level;
    og::CMat scalar = elem->scalar ? *elem->scalar : og::CMat::Zero(n, n);
    const og::UnitizedElement u = og::make_unitized(elem->value, std::move(scalar));
    og::SolverConfig conf = cfg ? cfg->value : og::SolverConfig::unitization_defaults();
    *out = og::gauge_u(u, conf);
  });
}

og_status og_nu_max(const og_space* space, const og_element* elem, const og_config* cfg,
                    char** out_json) {
  return guarded([&] {
    require(space != nullptr && elem != nullptr && out_json != nullptr, "null handle");
    const og::SolverConfig conf = config_or_default(cfg);
    const og::GaugeResult result = og::nu_max(space->value, elem->value, conf);
    nlohmann::json j{
        {"value", result.value},
        {"iterations", result.iterations},
        {"converged", result.converged},
    };
    if (result.witness) {
      j["witness"] = og::element_to_json(*result.witness);
      j["witness_lambda_min"] = og::lambda_min(og::real_part(result.witness->realized));
      j["witness_objective"] =
          og::gauge_h(og::elem_add(elem->value, *result.witness));
    }
    *out_json = dup_string(j.dump());
  });
}

og_status og_nu_max_diag_oracle(const og_space* space, const og_element* elem, int grid,
                                double* out) {
  return guarded([&] {
    require(space != nullptr && elem != nullptr && out != nullptr, "null handle");
    *out = og::nu_max_diag_oracle(space->value, elem->value, grid);
  });
}

og_status og_check(const og_space* space, const char* law, const char* gauge, long trials,
                   uint64_t seed, double tol, const og_config* cfg, char** out_json) {
  return guarded([&] {
    require(law != nullptr && out_json != nullptr, "null handle");
    const og::OperatorSpace* sp = space ? &space->value : nullptr;
    const std::string name(law);
    og::CheckReport report;
    if (name == "matrix-compatible" || name == "gauge-axioms") {
      const og::GaugeKind kind = og::gauge_kind_from_name(gauge ? gauge : "nu");
      const og::SolverConfig conf = config_or_default(cfg);
      report = name == "matrix-compatible"
                   ? og::check_matrix_compatible(kind, sp, trials, seed, tol, conf)
                   : og::check_gauge_axioms(kind, sp, trials, seed, tol, conf);
    } else if (name == "c-proper") {
      report = og::check_c_proper(sp, trials, seed, tol, config_or_default(cfg));
    } else if (name == "normality") {
      report = og::check_normality(sp, trials, seed, tol, config_or_default(cfg));
    } else if (name == "linf-norm") {
      report = og::check_linf_norm_laws(sp, trials, seed, tol, config_or_default(cfg));
    } else if (name == "unitization") {
      const og::SolverConfig conf = cfg ? cfg->value : og::SolverConfig::unitization_defaults();
      report = og::check_unitization_laws(sp, trials, seed, tol, conf);
    } else if (name == "dominance") {
      report = og::check_dominance(sp, trials, seed, config_or_default(cfg));
    } else if (name == "uniqueness") {
      report = og::check_uniqueness(sp, trials, seed, config_or_default(cfg));
    } else {
      og::fail(og::ErrorCode::InvalidArgument, "unknown law: " + name);
    }
    *out_json = dup_string(report.to_json().dump());
  });
}

og_status og_functional_from_json(const char* json_text, og_functional** out) {
  return guarded([&] {
    require(out != nullptr, "null output handle");
    og::ParsedFunctional parsed = og::functional_from_json(parse_json(json_text, "functional"));
    *out = new og_functional{std::move(parsed.functional)};
  });
}

og_status og_extension_check(const og_space* space, const og_functional* f,
                             const char* unit_json, int levels, long trials, uint64_t seed,
                             double tol, char** out_json) {
  return guarded([&] {
    require(space != nullptr && f != nullptr && out_json != nullptr, "null handle");
    const og::OperatorSpace& sp = space->value;
    og::CMat unit = og::CMat::Identity(sp.ambient_dim, sp.ambient_dim);
    if (unit_json != nullptr) unit = og::matrix_from_json(parse_json(unit_json, "unit"), "/");

    const og::CheckReport cp = og::is_real_cp(sp, f->value, levels, trials, seed, tol);
    const og::CheckReport cc = og::is_real_cc(sp, f->value, levels, trials, seed, tol);
    const double bound = og::extension_lower_bound(sp, f->value, unit);
    const double unit_norm = og::spectral_norm(unit);

    nlohmann::json j{
        {"real_cp", cp.to_json()},
        {"real_cc", cc.to_json()},
        {"unit_norm", unit_norm},
    };
    if (std::isinf(bound)) {
      j["bound"] = nullptr;
      j["bound_unbounded"] = true;
    } else {
      j["bound"] = bound;
      j["bound_unbounded"] = false;
    }
    j["certified_no_cpcc_extension"] =
        cp.clean() && cc.clean() && (std::isinf(bound) || bound > unit_norm);
    *out_json = dup_string(j.dump());
  });
}

void og_functional_free(og_functional* f) { delete f; }

og_status og_verify_example(const char* example_id, const int* ns, int ns_len,
                            const og_config* cfg, char** out_json) {
  return guarded([&] {
    require(example_id != nullptr && out_json != nullptr, "null handle");
    require(ns_len >= 0 && (ns_len == 0 || ns != nullptr), "bad size list");
    std::vector<int> sizes(ns, ns + ns_len);
    const og::CheckReport report =
        og::run_bundled_example(example_id, sizes, config_or_default(cfg));
    *out_json = dup_string(report.to_json().dump());
  });
}

}  // extern "C"
