#include "hmftheta.h"

#include <cstring>
#include <string>

#include "hmf/config.hpp"
#include "hmf/errors.hpp"
#include "hmf/verify.hpp"

using hmf::Error;
using hmf::ErrorCode;
using hmf::config::json;
using hmf::config::LoadedModel;

struct hmf_model {
  LoadedModel lm;
};

struct hmf_qexp {
  hmf::qexp::QExpansion f;
};

namespace {

thread_local std::string g_last_error;

hmf_status map_code(ErrorCode c) {
  switch (c) {
    case ErrorCode::ConfigInvalid:
      return HMF_E_CONFIG;
    case ErrorCode::ContextMismatch:
      return HMF_E_CONTEXT;
    case ErrorCode::DivisionByZero:
      return HMF_E_DIVISION;
    case ErrorCode::WeightMismatch:
      return HMF_E_WEIGHT;
    case ErrorCode::ModelMismatch:
      return HMF_E_MODEL_MISMATCH;
    case ErrorCode::ModelInconsistent:
      return HMF_E_MODEL_INCONSISTENT;
    case ErrorCode::NonDivisibleWeight:
      return HMF_E_NONDIVISIBLE;
    case ErrorCode::NotInKernel:
      return HMF_E_NOT_IN_KERNEL;
    case ErrorCode::NotAUnit:
      return HMF_E_NOT_A_UNIT;
    case ErrorCode::TruncationTooSmall:
      return HMF_E_TRUNCATION;
  }
  return HMF_E_INTERNAL;
}

template <typename Fn>
hmf_status wrap(Fn&& fn) {
  try {
    fn();
    g_last_error.clear();
    return HMF_OK;
  } catch (const Error& e) {
    g_last_error = e.what();
    return map_code(e.code());
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return HMF_E_INTERNAL;
  }
}

char* dup_string(const std::string& s) {
  char* out = new char[s.size() + 1];
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

json parse_text(const char* text, const char* what) {
  if (!text) hmf::fail(ErrorCode::ConfigInvalid,
                       std::string("null ") + what);
  try {
    return json::parse(text);
  } catch (const std::exception& e) {
    hmf::fail(ErrorCode::ConfigInvalid,
              std::string("invalid JSON ") + what + ": " + e.what());
  }
}

// "P:i" -> TauIndex
hmf::shape::TauIndex parse_tau(const LoadedModel& lm, const std::string& s) {
  auto colon = s.rfind(':');
  if (colon == std::string::npos)
    hmf::fail(ErrorCode::ConfigInvalid, "tau must look like P:i");
  int prime = lm.shape->prime_index(s.substr(0, colon));
  int i = std::stoi(s.substr(colon + 1));
  return {prime, i};
}

// "P:i:j" -> ThetaIndex
hmf::shape::ThetaIndex parse_theta(const LoadedModel& lm,
                                   const std::string& s) {
  auto c2 = s.rfind(':');
  if (c2 == std::string::npos)
    hmf::fail(ErrorCode::ConfigInvalid, "theta must look like P:i:j");
  auto c1 = s.rfind(':', c2 - 1);
  if (c1 == std::string::npos)
    hmf::fail(ErrorCode::ConfigInvalid, "theta must look like P:i:j");
  int prime = lm.shape->prime_index(s.substr(0, c1));
  int i = std::stoi(s.substr(c1 + 1, c2 - c1 - 1));
  int j = std::stoi(s.substr(c2 + 1));
  return {prime, i, j};
}

json rat_vec_to_json(const std::vector<hmf::intmat::Rat>& v) {
  json j = json::array();
  for (const auto& r : v) j.push_back(hmf::config::rat_to_string(r));
  return j;
}

json weights_report(const char* shape_json, const std::string& sub,
                    const json& args) {
  namespace cfg = hmf::config;
  namespace w = hmf::weights;
  json report;
  report["command"] = "weights " + sub;
  json checks = json::array();
  json result;

  if (sub == "ptwt0") {
    int64_t p = cfg::parse_int(args.at("p"));
    int e = static_cast<int>(cfg::parse_int(args.at("e")));
    int f = static_cast<int>(cfg::parse_int(args.at("f")));
    bool grid = args.value("grid", false);
    auto cell = [&](int64_t cp, int ce, int cf) {
      auto sols = w::ptwt0_feasible(cp, ce, cf);
      int64_t pf = 1;
      for (int t = 0; t < cf; ++t) pf *= cp;
      json c;
      c["name"] = "p=" + std::to_string(cp) + ",e=" + std::to_string(ce) +
                  ",f=" + std::to_string(cf);
      c["count"] = std::to_string(sols.size());
      if (pf > 3 && ce * cf > 1)
        c["status"] = sols.empty() ? "pass" : "fail";
      else if (ce * cf == 1)
        c["status"] = sols.empty() ? "fail" : "pass";
      else
        c["status"] = "skip";
      return c;
    };
    if (grid) {
      for (int64_t cp : {2, 3, 5, 7, 11, 13}) {
        if (cp > p) continue;
        for (int ce = 1; ce <= e; ++ce)
          for (int cf = 1; cf <= f; ++cf) checks.push_back(cell(cp, ce, cf));
      }
    } else {
      auto sols = w::ptwt0_feasible(p, e, f);
      json ws = json::array();
      size_t cap = 50;
      for (const auto& m : sols) {
        if (ws.size() >= cap) break;
        ws.push_back(cfg::vec_to_json(m));
      }
      result["count"] = std::to_string(sols.size());
      result["witnesses"] = std::move(ws);
      checks.push_back(cell(p, e, f));
    }
    report["checks"] = std::move(checks);
    report["result"] = std::move(result);
    return report;
  }

  auto shape = cfg::load_shape(parse_text(shape_json, "shape config"));
  const auto& s = *shape;
  if (sub == "cone-check") {
    result["in_cone"] = w::in_min_cone(s, cfg::parse_vec(args.at("k")));
  } else if (sub == "shift-theta") {
    LoadedModel lm;
    lm.shape = shape;
    auto tau = parse_tau(lm, args.at("tau").get<std::string>());
    auto [k, l] = w::theta_weight_shift(s, tau, cfg::parse_vec(args.at("k")),
                                        cfg::parse_vec(args.at("l")));
    result["k"] = cfg::vec_to_json(k);
    result["l"] = cfg::vec_to_json(l);
  } else if (sub == "shift-frob") {
    int prime = s.prime_index(args.at("prime").get<std::string>());
    auto [k, l] = w::frob_weight_shift(s, prime, cfg::parse_vec(args.at("k")),
                                       cfg::parse_vec(args.at("l")));
    result["k"] = cfg::vec_to_json(k);
    result["l"] = cfg::vec_to_json(l);
  } else if (sub == "rho") {
    auto classes = w::rho(s, cfg::parse_vec(args.at("k")));
    json cj = json::array();
    for (int64_t c : classes) cj.push_back(std::to_string(c));
    result["classes"] = std::move(cj);
    result["trivial"] = w::psi_trivial(classes);
  } else if (sub == "lambda-index") {
    result["index"] = std::to_string(w::lambda_index(s));
  } else if (sub == "hbasis") {
    result["s"] = rat_vec_to_json(
        w::hbasis_decompose(s, cfg::parse_vec(args.at("k"))));
  } else if (sub == "leq-hasse") {
    auto m = w::leq_hasse(s, cfg::parse_vec(args.at("k")),
                          cfg::parse_vec(args.at("kp")));
    result["comparable"] = m.has_value();
    if (m) result["m"] = cfg::vec_to_json(*m);
  } else {
    hmf::fail(ErrorCode::ConfigInvalid, "unknown subcommand: " + sub);
  }
  report["checks"] = std::move(checks);
  report["result"] = std::move(result);
  return report;
}

}  // namespace

extern "C" {

const char* hmf_last_error(void) { return g_last_error.c_str(); }

void hmf_string_free(char* s) { delete[] s; }

hmf_status hmf_model_create(const char* json_text, hmf_model** out) {
  return wrap([&] {
    if (!out) hmf::fail(ErrorCode::ConfigInvalid, "null output pointer");
    auto j = parse_text(json_text, "model config");
    *out = new hmf_model{hmf::config::load_combined(j)};
  });
}

void hmf_model_destroy(hmf_model* m) { delete m; }

hmf_status hmf_qexp_parse(const hmf_model* m, const char* json_text,
                          hmf_qexp** out) {
  return wrap([&] {
    if (!m || !out)
      hmf::fail(ErrorCode::ConfigInvalid, "null model or output pointer");
    auto j = parse_text(json_text, "q-expansion");
    *out = new hmf_qexp{hmf::config::load_qexp(j, m->lm)};
  });
}

hmf_status hmf_qexp_to_json(const hmf_qexp* f, char** out_text) {
  return wrap([&] {
    if (!f || !out_text)
      hmf::fail(ErrorCode::ConfigInvalid, "null expansion or output pointer");
    *out_text = dup_string(hmf::config::save_qexp(f->f).dump(2));
  });
}

void hmf_qexp_destroy(hmf_qexp* f) { delete f; }

hmf_status hmf_qexp_apply(const hmf_model* m, const hmf_qexp* f,
                          const char* op, const char* arg, hmf_qexp** out) {
  return wrap([&] {
    if (!m || !f || !op || !out)
      hmf::fail(ErrorCode::ConfigInvalid, "null argument");
    if (f->f.model().get() != m->lm.model.get())
      hmf::fail(ErrorCode::ModelMismatch,
                "expansion belongs to a different model");
    std::string o(op), a(arg ? arg : "");
    const auto& lm = m->lm;
    if (o == "theta") {
      *out = new hmf_qexp{hmf::qexp::apply_theta(parse_tau(lm, a), f->f)};
    } else if (o == "v") {
      *out = new hmf_qexp{hmf::qexp::apply_v(lm.shape->prime_index(a), f->f)};
    } else if (o == "v0") {
      *out =
          new hmf_qexp{hmf::qexp::apply_v0(lm.shape->prime_index(a), f->f)};
    } else if (o == "hasse") {
      *out = new hmf_qexp{hmf::qexp::mul_hasse(parse_theta(lm, a), f->f)};
    } else if (o == "g") {
      *out = new hmf_qexp{hmf::qexp::mul_g(parse_theta(lm, a), f->f)};
    } else if (o == "frob") {
      *out = new hmf_qexp{hmf::qexp::frob_coeffs(f->f)};
    } else {
      hmf::fail(ErrorCode::ConfigInvalid, "unknown operator: " + o);
    }
  });
}

hmf_status hmf_weights_run(const char* shape_json, const char* subcommand,
                           const char* args_json, char** out_report) {
  return wrap([&] {
    if (!subcommand || !out_report)
      hmf::fail(ErrorCode::ConfigInvalid, "null argument");
    json args = args_json ? parse_text(args_json, "arguments")
                          : json::object();
    auto report = weights_report(shape_json, subcommand, args);
    *out_report = dup_string(report.dump(2));
  });
}

hmf_status hmf_verify_run(const hmf_model* m, const char* identity,
                          const char* options_json, char** out_report,
                          int* out_failed) {
  return wrap([&] {
    if (!m || !identity || !out_report || !out_failed)
      hmf::fail(ErrorCode::ConfigInvalid, "null argument");
    json opts = options_json ? parse_text(options_json, "options")
                             : json::object();
    int n = static_cast<int>(
        opts.contains("random") ? hmf::config::parse_int(opts.at("random"))
                                : 20);
    uint64_t seed =
        opts.contains("seed")
            ? static_cast<uint64_t>(hmf::config::parse_int(opts.at("seed")))
            : 1;
    auto results = hmf::verify::run_suite(m->lm, identity, n, seed);
    json report;
    report["command"] = std::string("verify ") + identity;
    report["random"] = std::to_string(n);
    report["seed"] = std::to_string(seed);
    json checks = json::array();
    bool failed = false;
    for (const auto& r : results) {
      json c;
      c["name"] = r.name;
      c["status"] = r.pass ? "pass" : "fail";
      if (!r.detail.empty()) c["details"] = r.detail;
      failed = failed || !r.pass;
      checks.push_back(std::move(c));
    }
    report["checks"] = std::move(checks);
    *out_failed = failed ? 1 : 0;
    *out_report = dup_string(report.dump(2));
  });
}

}  // extern "C"
