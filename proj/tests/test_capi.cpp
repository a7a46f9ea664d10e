#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstring>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "hmftheta.h"

using nlohmann::json;

namespace {

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  REQUIRE(in.good());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

struct ModelHandle {
  hmf_model* m = nullptr;
  explicit ModelHandle(const std::string& text) {
    REQUIRE(hmf_model_create(text.c_str(), &m) == HMF_OK);
  }
  ~ModelHandle() { hmf_model_destroy(m); }
};

std::string take(char* s) {
  REQUIRE(s != nullptr);
  std::string out(s);
  hmf_string_free(s);
  return out;
}

}  // namespace

TEST_CASE("model creation and failure reporting") {
  hmf_model* m = nullptr;
  CHECK(hmf_model_create("not json", &m) == HMF_E_CONFIG);
  CHECK(m == nullptr);
  CHECK(std::strlen(hmf_last_error()) > 0);

  // structurally valid JSON with an inconsistent lattice
  json bad = json::parse(slurp(CONFIG_DIR "/model_d2_inert3.json"));
  bad["model"]["primes"]["P"]["pi"] = {2, 1};
  CHECK(hmf_model_create(bad.dump().c_str(), &m) ==
        HMF_E_MODEL_INCONSISTENT);

  ModelHandle good(slurp(CONFIG_DIR "/model_d2_inert3.json"));
  CHECK(good.m != nullptr);
}

TEST_CASE("expansion round trip and operators") {
  ModelHandle h(slurp(CONFIG_DIR "/model_d2_inert3.json"));
  json fj = {{"k", {0, 0}},
             {"l", {0, 0}},
             {"bound", "60"},
             {"constant", {1, 0}},
             {"terms", {{{"m", {3, 1}}, {"c", {0, 1}}}}}};
  hmf_qexp* f = nullptr;
  REQUIRE(hmf_qexp_parse(h.m, fj.dump().c_str(), &f) == HMF_OK);

  char* text = nullptr;
  REQUIRE(hmf_qexp_to_json(f, &text) == HMF_OK);
  json back = json::parse(take(text));
  hmf_qexp* f2 = nullptr;
  REQUIRE(hmf_qexp_parse(h.m, back.dump().c_str(), &f2) == HMF_OK);
  char* text2 = nullptr;
  REQUIRE(hmf_qexp_to_json(f2, &text2) == HMF_OK);
  CHECK(json::parse(take(text2)) == back);
  hmf_qexp_destroy(f2);

  // theta kills the constant and keeps the residue-weighted term
  hmf_qexp* tf = nullptr;
  REQUIRE(hmf_qexp_apply(h.m, f, "theta", "P:0", &tf) == HMF_OK);
  char* ttext = nullptr;
  REQUIRE(hmf_qexp_to_json(tf, &ttext) == HMF_OK);
  json tj = json::parse(take(ttext));
  CHECK(tj["constant"] == json::array({"0", "0"}));
  CHECK(tj["terms"].size() == 1);
  hmf_qexp_destroy(tf);

  // V then theta is zero
  hmf_qexp* vf = nullptr;
  REQUIRE(hmf_qexp_apply(h.m, f, "v", "P", &vf) == HMF_OK);
  hmf_qexp* tvf = nullptr;
  REQUIRE(hmf_qexp_apply(h.m, vf, "theta", "P:1", &tvf) == HMF_OK);
  char* zt = nullptr;
  REQUIRE(hmf_qexp_to_json(tvf, &zt) == HMF_OK);
  json zj = json::parse(take(zt));
  CHECK(zj["terms"].empty());
  hmf_qexp_destroy(tvf);
  hmf_qexp_destroy(vf);

  // weight relabels and the coefficient frobenius round-trip
  hmf_qexp* hf = nullptr;
  REQUIRE(hmf_qexp_apply(h.m, f, "hasse", "P:0:1", &hf) == HMF_OK);
  hmf_qexp_destroy(hf);
  hmf_qexp* ff = nullptr;
  REQUIRE(hmf_qexp_apply(h.m, f, "frob", nullptr, &ff) == HMF_OK);
  hmf_qexp_destroy(ff);

  // unknown operator and bad argument
  hmf_qexp* bad = nullptr;
  CHECK(hmf_qexp_apply(h.m, f, "laplace", "P", &bad) == HMF_E_CONFIG);
  CHECK(hmf_qexp_apply(h.m, f, "theta", "R:0", &bad) == HMF_E_CONFIG);

  hmf_qexp_destroy(f);
}

TEST_CASE("weight commands") {
  json shape = {{"p", 2}, {"primes", {{{"id", "P"}, {"e", 1}, {"f", 2}}}}};
  json args = json::object();
  char* report = nullptr;
  REQUIRE(hmf_weights_run(shape.dump().c_str(), "lambda-index",
                          args.dump().c_str(), &report) == HMF_OK);
  json rj = json::parse(take(report));
  CHECK(rj["result"]["index"] == "3");

  json rho_args = {{"k", {0, 1}}};
  REQUIRE(hmf_weights_run(shape.dump().c_str(), "rho",
                          rho_args.dump().c_str(), &report) == HMF_OK);
  rj = json::parse(take(report));
  CHECK(rj["result"]["classes"] == json::array({"2"}));
  CHECK(rj["result"]["trivial"] == false);

  json cone_args = {{"k", {1, 1}}};
  REQUIRE(hmf_weights_run(shape.dump().c_str(), "cone-check",
                          cone_args.dump().c_str(), &report) == HMF_OK);
  rj = json::parse(take(report));
  CHECK(rj["result"]["in_cone"] == true);

  // ptwt0 with explicit parameters needs no shape
  json pt_args = {{"p", 5}, {"e", 1}, {"f", 2}};
  REQUIRE(hmf_weights_run(nullptr, "ptwt0", pt_args.dump().c_str(),
                          &report) == HMF_OK);
  rj = json::parse(take(report));
  CHECK(rj["result"]["count"] == "0");
  CHECK(rj["checks"][0]["status"] == "pass");

  CHECK(hmf_weights_run(shape.dump().c_str(), "nonsense",
                        args.dump().c_str(), &report) == HMF_E_CONFIG);
  CHECK(hmf_weights_run("not json", "rho", rho_args.dump().c_str(),
                        &report) == HMF_E_CONFIG);
}

TEST_CASE("verification entry point") {
  ModelHandle h(slurp(CONFIG_DIR "/model_d2_ramified2.json"));
  json opts = {{"random", 5}, {"seed", 7}};
  char* report = nullptr;
  int failed = -1;
  REQUIRE(hmf_verify_run(h.m, "derivation", opts.dump().c_str(), &report,
                         &failed) == HMF_OK);
  json rj = json::parse(take(report));
  CHECK(failed == 0);
  REQUIRE(rj["checks"].is_array());
  CHECK(!rj["checks"].empty());
  for (const auto& c : rj["checks"]) CHECK(c["status"] == "pass");

  CHECK(hmf_verify_run(h.m, "bogus", opts.dump().c_str(), &report,
                       &failed) == HMF_E_CONFIG);
}
