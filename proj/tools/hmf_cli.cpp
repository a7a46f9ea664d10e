// Command-line driver.  All engine functionality is reached through the
// C interface in hmftheta.h; this file only handles argument parsing,
// file I/O, and report printing.

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "hmftheta.h"

namespace {

using nlohmann::json;

constexpr int kExitPass = 0;
constexpr int kExitFailure = 1;
constexpr int kExitUsage = 2;

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    std::cerr << "cannot open file: " << path << "\n";
    std::exit(kExitUsage);
  }
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

int status_to_exit(hmf_status st) {
  if (st == HMF_OK) return kExitPass;
  std::cerr << "error: " << hmf_last_error() << "\n";
  return st == HMF_E_CONFIG ? kExitUsage : kExitFailure;
}

// parse a vector given either as JSON ("[1,3]") or as "1,3"
json parse_vector_arg(const std::string& s) {
  auto j = json::parse(s, nullptr, false);
  if (!j.is_discarded() && j.is_array()) return j;
  json out = json::array();
  std::istringstream is(s);
  std::string tok;
  while (std::getline(is, tok, ',')) out.push_back(json::parse(tok));
  return out;
}

struct WeightsArgs {
  std::string shape_path;
  std::string k, l, kp, tau, prime;
  int64_t p = 0;
  int e = 0, f = 0;
  bool grid = false;
};

int run_weights(const std::string& sub, const WeightsArgs& a) {
  json args;
  if (!a.k.empty()) args["k"] = parse_vector_arg(a.k);
  if (!a.l.empty()) args["l"] = parse_vector_arg(a.l);
  if (!a.kp.empty()) args["kp"] = parse_vector_arg(a.kp);
  if (!a.tau.empty()) args["tau"] = a.tau;
  if (!a.prime.empty()) args["prime"] = a.prime;
  if (sub == "ptwt0") {
    args["p"] = a.p;
    args["e"] = a.e;
    args["f"] = a.f;
    args["grid"] = a.grid;
  }
  std::string shape_text;
  const char* shape_ptr = nullptr;
  if (!a.shape_path.empty()) {
    shape_text = read_file(a.shape_path);
    shape_ptr = shape_text.c_str();
  }
  char* report = nullptr;
  hmf_status st = hmf_weights_run(shape_ptr, sub.c_str(),
                                  args.dump().c_str(), &report);
  if (st != HMF_OK) return status_to_exit(st);
  std::cout << report << "\n";
  auto rj = json::parse(report);
  hmf_string_free(report);
  for (const auto& c : rj["checks"])
    if (c.value("status", "") == "fail") return kExitFailure;
  return kExitPass;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"weight combinatorics and q-expansion operator calculus"};
  app.require_subcommand(1);

  // weights subcommands
  auto* weights = app.add_subcommand("weights", "weight lattice commands");
  weights->require_subcommand(1);
  WeightsArgs wa;
  const char* subs[] = {"cone-check", "shift-theta", "shift-frob", "rho",
                        "lambda-index", "hbasis", "leq-hasse", "ptwt0"};
  std::string picked;
  for (const char* sub : subs) {
    auto* c = weights->add_subcommand(sub);
    c->add_option("--shape", wa.shape_path, "shape config file");
    c->add_option("--k", wa.k, "weight vector, e.g. [1,3]");
    c->add_option("--l", wa.l, "second weight vector");
    c->add_option("--kp", wa.kp, "target weight vector");
    c->add_option("--tau", wa.tau, "residue index, e.g. P:0");
    c->add_option("--prime", wa.prime, "prime id");
    if (std::string(sub) == "ptwt0") {
      c->add_option("--p", wa.p, "characteristic");
      c->add_option("--e", wa.e, "ramification index");
      c->add_option("--f", wa.f, "residue degree");
      c->add_flag("--grid", wa.grid, "sweep all cells up to (p, e, f)");
    }
    c->callback([sub, &picked] { picked = sub; });
  }

  // qexp subcommands
  auto* qx = app.add_subcommand("qexp", "q-expansion commands");
  qx->require_subcommand(1);
  std::string model_path, op, arg, in_path, out_path, identity;
  int random_n = 20;
  uint64_t seed = 1;
  auto* ap = qx->add_subcommand("apply", "apply one operator to a file");
  ap->add_option("--model", model_path, "model config file")->required();
  ap->add_option("--op", op, "theta|v|v0|hasse|g|frob")->required();
  ap->add_option("--tau", arg, "residue index P:i (for theta)");
  ap->add_option("--prime", arg, "prime id (for v, v0)");
  ap->add_option("--theta", arg, "slot index P:i:j (for hasse, g)");
  ap->add_option("--in", in_path, "input q-expansion file")->required();
  ap->add_option("--out", out_path, "output file (default: stdout)");
  auto* vf = qx->add_subcommand("verify", "run an identity suite");
  vf->add_option("--model", model_path, "model config file")->required();
  vf->add_option("--identity", identity,
                 "derivation|theta-commute|theta-v-zero|ppower|theta-p|"
                 "kernel-image|unit-invariance|exactness")
      ->required();
  vf->add_option("--random", random_n, "number of random cases");
  vf->add_option("--seed", seed, "random seed");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kExitPass : kExitUsage;
  }

  if (!picked.empty()) return run_weights(picked, wa);

  // qexp path: load the model once
  hmf_model* model = nullptr;
  hmf_status st = hmf_model_create(read_file(model_path).c_str(), &model);
  if (st != HMF_OK) return status_to_exit(st);

  int rc = kExitPass;
  if (ap->parsed()) {
    hmf_qexp* fin = nullptr;
    st = hmf_qexp_parse(model, read_file(in_path).c_str(), &fin);
    if (st == HMF_OK) {
      hmf_qexp* fout = nullptr;
      st = hmf_qexp_apply(model, fin, op.c_str(), arg.c_str(), &fout);
      if (st == HMF_OK) {
        char* text = nullptr;
        st = hmf_qexp_to_json(fout, &text);
        if (st == HMF_OK) {
          if (out_path.empty()) {
            std::cout << text << "\n";
          } else {
            std::ofstream out(out_path);
            out << text << "\n";
          }
          hmf_string_free(text);
        }
        hmf_qexp_destroy(fout);
      }
      hmf_qexp_destroy(fin);
    }
    rc = status_to_exit(st);
  } else {
    json opts;
    opts["random"] = random_n;
    opts["seed"] = seed;
    char* report = nullptr;
    int failed = 0;
    st = hmf_verify_run(model, identity.c_str(), opts.dump().c_str(),
                        &report, &failed);
    if (st == HMF_OK) {
      std::cout << report << "\n";
      hmf_string_free(report);
      rc = failed ? kExitFailure : kExitPass;
    } else {
      rc = status_to_exit(st);
    }
  }
  hmf_model_destroy(model);
  return rc;
}
