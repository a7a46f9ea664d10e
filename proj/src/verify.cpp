#include "hmf/verify.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <functional>
#include <set>
#include <thread>

#include "hmf/errors.hpp"

namespace hmf::verify {

using config::LoadedModel;
using intmat::Mat;
using intmat::Rat;
using intmat::Vec;
using qexp::QExpansion;

int thread_cap() {
  if (const char* env = std::getenv("HMF_THETA_THREADS")) {
    int v = std::atoi(env);
    if (v >= 1) return v;
  }
  unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(std::min(hw, 8u));
}

bool all_pass(const std::vector<CheckResult>& rs) {
  return std::all_of(rs.begin(), rs.end(),
                     [](const CheckResult& r) { return r.pass; });
}

namespace {

// totally positive lattice points with trace <= cap, in a small box
std::vector<Vec> window_points(const expo::ExponentModel& model,
                               const Rat& cap) {
  int r = model.rank();
  int64_t R = r <= 2 ? 12 : 6;
  std::vector<Vec> out;
  Vec v(r, -R);
  while (true) {
    if (model.is_totally_positive(v) && Rat(model.trace(v)) <= cap)
      out.push_back(v);
    int i = 0;
    while (i < r && ++v[i] > R) v[i++] = -R;
    if (i == r) break;
  }
  return out;
}

Vec random_weight(const shape::FieldShape& s, std::mt19937_64& rng) {
  std::uniform_int_distribution<int64_t> d(-3, 3);
  Vec k(s.degree());
  for (auto& x : k) x = d(rng);
  return k;
}

gf::Element random_element(const gf::ContextPtr& ctx,
                           std::mt19937_64& rng) {
  std::uniform_int_distribution<int64_t> d(0, ctx->p() - 1);
  std::vector<int64_t> c(ctx->degree());
  for (auto& x : c) x = d(rng);
  return gf::Element(ctx, std::move(c));
}

gf::Element random_nonzero(const gf::ContextPtr& ctx,
                           std::mt19937_64& rng) {
  while (true) {
    auto e = random_element(ctx, rng);
    if (!e.is_zero()) return e;
  }
}

// run the per-case thunks, possibly in parallel; results keep order
std::vector<CheckResult> run_cases(
    std::vector<std::function<CheckResult()>> cases) {
  std::vector<CheckResult> out(cases.size());
  auto eval = [&](size_t i) {
    try {
      out[i] = cases[i]();
    } catch (const Error& e) {
      out[i] = {"case " + std::to_string(i), false,
                std::string("error: ") + e.what()};
    }
  };
  int workers = std::min<int>(thread_cap(), static_cast<int>(cases.size()));
  if (workers <= 1) {
    for (size_t i = 0; i < cases.size(); ++i) eval(i);
    return out;
  }
  std::atomic<size_t> next{0};
  std::vector<std::thread> pool;
  for (int w = 0; w < workers; ++w)
    pool.emplace_back([&] {
      while (true) {
        size_t i = next.fetch_add(1);
        if (i >= cases.size()) return;
        eval(i);
      }
    });
  for (auto& t : pool) t.join();
  return out;
}

}  // namespace

QExpansion random_qexp(const LoadedModel& lm, std::mt19937_64& rng,
                       const Rat& bound, int max_terms,
                       const Rat& trace_cap) {
  const auto& model = *lm.model;
  auto pts = window_points(model, std::min(bound, trace_cap));
  if (pts.empty())
    fail(ErrorCode::ConfigInvalid, "empty exponent window");
  std::uniform_int_distribution<size_t> pick(0, pts.size() - 1);
  std::uniform_int_distribution<int> nterms(0, max_terms);
  std::map<Vec, gf::Element> terms;
  int n = nterms(rng);
  for (int i = 0; i < n; ++i)
    terms[pts[pick(rng)]] = random_nonzero(lm.field, rng);
  return QExpansion(lm.model, random_weight(*lm.shape, rng),
                    random_weight(*lm.shape, rng), bound,
                    random_element(lm.field, rng), std::move(terms));
}

namespace {

const Rat kBound(60);

std::vector<CheckResult> suite_derivation(const LoadedModel& lm, int n,
                                          uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<std::function<CheckResult()>> cases;
  for (int i = 0; i < n; ++i) {
    auto f = random_qexp(lm, rng, kBound, 6, kBound);
    auto g = random_qexp(lm, rng, kBound, 6, kBound);
    cases.emplace_back([lm, f, g, i] {
      for (const auto& tau : lm.shape->residue_indices()) {
        auto lhs = qexp::apply_theta(tau, qexp::mul(f, g));
        auto rhs = qexp::add(qexp::mul(f, qexp::apply_theta(tau, g)),
                             qexp::mul(qexp::apply_theta(tau, f), g));
        if (!(lhs == rhs))
          return CheckResult{"derivation " + std::to_string(i), false,
                             "derivation law violated"};
      }
      return CheckResult{"derivation " + std::to_string(i), true, ""};
    });
  }
  return run_cases(std::move(cases));
}

std::vector<CheckResult> suite_theta_commute(const LoadedModel& lm, int n,
                                             uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<std::function<CheckResult()>> cases;
  for (int i = 0; i < n; ++i) {
    auto f = random_qexp(lm, rng, kBound, 6, kBound);
    cases.emplace_back([lm, f, i] {
      auto taus = lm.shape->residue_indices();
      for (const auto& a : taus)
        for (const auto& b : taus) {
          auto lhs = qexp::apply_theta(a, qexp::apply_theta(b, f));
          auto rhs = qexp::apply_theta(b, qexp::apply_theta(a, f));
          if (!(lhs == rhs))
            return CheckResult{"theta-commute " + std::to_string(i), false,
                               "theta operators do not commute"};
        }
      return CheckResult{"theta-commute " + std::to_string(i), true, ""};
    });
  }
  return run_cases(std::move(cases));
}

std::vector<CheckResult> suite_theta_v_zero(const LoadedModel& lm, int n,
                                            uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<std::function<CheckResult()>> cases;
  for (int i = 0; i < n; ++i) {
    auto f = random_qexp(lm, rng, kBound, 6, kBound);
    cases.emplace_back([lm, f, i] {
      std::string name = "theta-v-zero " + std::to_string(i);
      for (int pi = 0; pi < lm.shape->prime_count(); ++pi) {
        auto vf = qexp::apply_v(pi, f);
        for (const auto& tau : lm.shape->residue_indices()) {
          if (tau.prime == pi) {
            if (!qexp::apply_theta(tau, vf).terms().empty())
              return CheckResult{name, false, "theta of V-image nonzero"};
            // triple equivalence is asserted inside in_theta_kernel
            if (!qexp::in_theta_kernel(tau, vf))
              return CheckResult{name, false,
                                 "V-image not in the theta kernel"};
          } else {
            auto lhs = qexp::apply_theta(tau, vf);
            auto rhs = qexp::apply_v(pi, qexp::apply_theta(tau, f));
            if (!(lhs == rhs))
              return CheckResult{name, false,
                                 "theta and V at distinct primes "
                                 "do not commute"};
          }
        }
      }
      // theta kills the normalized invariants (pure weight relabels
      // of a constant)
      auto one = QExpansion(
          lm.model, Vec(lm.shape->degree(), 0), Vec(lm.shape->degree(), 0),
          f.bound(), gf::Element::one(lm.field), {});
      for (const auto& theta : lm.shape->sigma())
        for (const auto& tau : lm.shape->residue_indices()) {
          if (!qexp::apply_theta(tau, qexp::mul_hasse(theta, one)).is_zero())
            return CheckResult{name, false, "theta of H' nonzero"};
          if (!qexp::apply_theta(tau, qexp::mul_g(theta, one)).is_zero())
            return CheckResult{name, false, "theta of G' nonzero"};
        }
      return CheckResult{name, true, ""};
    });
  }
  return run_cases(std::move(cases));
}

std::vector<CheckResult> suite_ppower(const LoadedModel& lm, int n,
                                      uint64_t seed) {
  std::mt19937_64 rng(seed);
  Rat cap = kBound / Rat(lm.shape->p());
  std::vector<std::function<CheckResult()>> cases;
  for (int i = 0; i < n; ++i) {
    auto f = random_qexp(lm, rng, kBound, 6, cap);
    cases.emplace_back([f, i] {
      bool ok = qexp::ppower_check(f);
      return CheckResult{"ppower " + std::to_string(i), ok,
                         ok ? "" : "p-power identity violated"};
    });
  }
  return run_cases(std::move(cases));
}

std::vector<CheckResult> suite_theta_p(const LoadedModel& lm, int n,
                                       uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<std::function<CheckResult()>> cases;
  for (int i = 0; i < n; ++i) {
    auto f = random_qexp(lm, rng, kBound, 6, kBound);
    cases.emplace_back([lm, f, i] {
      for (const auto& tau : lm.shape->residue_indices())
        if (!qexp::theta_p_relation_check(tau, f))
          return CheckResult{"theta-p " + std::to_string(i), false,
                             "p-fold theta relation violated"};
      return CheckResult{"theta-p " + std::to_string(i), true, ""};
    });
  }
  return run_cases(std::move(cases));
}

std::vector<CheckResult> suite_kernel_image(const LoadedModel& lm, int n,
                                            uint64_t seed) {
  std::mt19937_64 rng(seed);
  // keep scaled exponents inside the window: every model here scales
  // traces by at most 4
  Rat cap = kBound / Rat(4);
  std::vector<std::function<CheckResult()>> cases;
  for (int i = 0; i < n; ++i) {
    auto g = random_qexp(lm, rng, kBound, 6, cap);
    cases.emplace_back([lm, g, i] {
      std::string name = "kernel-image " + std::to_string(i);
      for (int pi = 0; pi < lm.shape->prime_count(); ++pi) {
        auto f = qexp::apply_v0(pi, g);
        for (const auto& tau : lm.shape->residue_indices())
          if (tau.prime == pi && !qexp::in_theta_kernel(tau, f))
            return CheckResult{name, false, "V0-image not in kernel"};
        if (!(qexp::v0_preimage(pi, f) == g))
          return CheckResult{name, false, "preimage does not restore"};
      }
      return CheckResult{name, true, ""};
    });
  }
  return run_cases(std::move(cases));
}

std::vector<CheckResult> suite_unit_invariance(const LoadedModel& lm,
                                               int n, uint64_t seed) {
  std::mt19937_64 rng(seed);
  const auto& model = *lm.model;
  Mat nu = model.nu();
  bool trivial = nu == intmat::identity(model.rank());
  auto pts = window_points(model, kBound);
  std::vector<std::function<CheckResult()>> cases;
  for (int i = 0; i < n; ++i) {
    std::uniform_int_distribution<size_t> pick(0, pts.size() - 1);
    Vec m0 = pts[pick(rng)];
    Vec l = random_weight(*lm.shape, rng);
    auto c = random_nonzero(lm.field, rng);
    cases.emplace_back([lm, trivial, nu, m0, l, c, i]() -> CheckResult {
      std::string name = "unit-invariance " + std::to_string(i);
      const auto& model = *lm.model;
      auto chi = model.chi(l, nu);
      // full nu-orbit of m0 inside the window, with the matching
      // coefficient cocycle
      std::map<Vec, gf::Element> terms;
      Vec cur = m0;
      auto cc = c;
      for (int j = 0; j <= 12; ++j) {
        if (Rat(model.trace(cur)) <= kBound) terms[cur] = cc;
        cur = intmat::mat_vec(nu, cur);
        cc = cc * chi.inv();
        if (trivial) break;
      }
      if (!trivial) {
        cur = intmat::mat_vec(model.nu_inv(), m0);
        cc = c * chi;
        for (int j = 1; j <= 12; ++j) {
          if (Rat(model.trace(cur)) <= kBound) terms[cur] = cc;
          cur = intmat::mat_vec(model.nu_inv(), cur);
          cc = cc * chi;
        }
      }
      Vec zero(lm.shape->degree(), 0);
      QExpansion f(lm.model, zero, l, kBound,
                   gf::Element::zero(lm.field), terms);
      if (!qexp::validate_unit_invariance(f, {nu}))
        return {name, false, "invariant expansion rejected"};
      if (!trivial && terms.size() >= 2) {
        // perturb a coefficient that another support point constrains
        auto bad = terms;
        for (auto& [m, coeff] : bad) {
          if (!bad.count(intmat::mat_vec(nu, m))) continue;
          coeff = coeff + gf::Element::one(lm.field);
          QExpansion fbad(lm.model, zero, l, kBound,
                          gf::Element::zero(lm.field), bad);
          if (qexp::validate_unit_invariance(fbad, {nu}))
            return {name, false, "perturbed expansion accepted"};
          break;
        }
      }
      return {name, true, ""};
    });
  }
  return run_cases(std::move(cases));
}

std::vector<CheckResult> suite_exactness(const LoadedModel& lm, int n,
                                         uint64_t seed) {
  std::mt19937_64 rng(seed);
  const auto& model = *lm.model;
  Rat cap = kBound / Rat(4);
  // a window point outside the scaled lattice, for perturbations
  Vec off;
  for (const auto& m : window_points(model, kBound))
    if (!model.in_scaled(0, 1, m)) {
      off = m;
      break;
    }
  std::vector<std::function<CheckResult()>> cases;
  for (int i = 0; i < n; ++i) {
    ring::GradedElement y0(lm.model, kBound);
    std::uniform_int_distribution<int> ncomp(1, 2);
    int nc = ncomp(rng);
    for (int c = 0; c < nc; ++c)
      y0.add_component(random_qexp(lm, rng, kBound, 5, cap));
    bool perturb = i % 2 == 1;
    cases.emplace_back([lm, y0, off, perturb, i]() -> CheckResult {
      std::string name = "exactness " + std::to_string(i);
      shape::TauIndex tau{0, 0};
      auto x = ring::ring_v(0, y0);
      if (perturb && !off.empty()) {
        QExpansion extra(
            lm.model, Vec(lm.shape->degree(), 0),
            Vec(lm.shape->degree(), 0), kBound,
            gf::Element::zero(lm.field),
            {{off, gf::Element::one(lm.field)}});
        x.add_component(extra);
        auto r = ring::exactness_probe(0, tau, x);
        if (r.kind != ring::ProbeResult::Kind::NotInKernel)
          return {name, false, "perturbed input not rejected"};
        return {name, true, ""};
      }
      auto r = ring::exactness_probe(0, tau, x);
      if (r.kind != ring::ProbeResult::Kind::Exact)
        return {name, false, "V-image not recognized as exact: " + r.detail};
      auto diff = ring::ring_add(ring::ring_v(0, *r.witness),
                                 ring::ring_negate(x));
      if (!ring::qbar_collapse(diff).empty())
        return {name, false, "witness fails to reproduce the input"};
      return {name, true, ""};
    });
  }
  return run_cases(std::move(cases));
}

}  // namespace

std::vector<CheckResult> run_suite(const LoadedModel& lm,
                                   const std::string& identity, int n,
                                   uint64_t seed) {
  if (identity == "derivation") return suite_derivation(lm, n, seed);
  if (identity == "theta-commute") return suite_theta_commute(lm, n, seed);
  if (identity == "theta-v-zero") return suite_theta_v_zero(lm, n, seed);
  if (identity == "ppower") return suite_ppower(lm, n, seed);
  if (identity == "theta-p") return suite_theta_p(lm, n, seed);
  if (identity == "kernel-image") return suite_kernel_image(lm, n, seed);
  if (identity == "unit-invariance")
    return suite_unit_invariance(lm, n, seed);
  if (identity == "exactness") return suite_exactness(lm, n, seed);
  fail(ErrorCode::ConfigInvalid, "unknown identity: " + identity);
}

}  // namespace hmf::verify
