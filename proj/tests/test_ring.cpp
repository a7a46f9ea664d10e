#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "hmf/verify.hpp"
#include "test_util.hpp"

using namespace hmf;
using intmat::Rat;
using intmat::Vec;
using qexp::QExpansion;
using ring::GradedElement;

namespace {

config::LoadedModel inert3() {
  return config::load_combined(
      config::read_json_file(CONFIG_DIR "/model_d2_inert3.json"));
}

config::LoadedModel ramified2() {
  return config::load_combined(
      config::read_json_file(CONFIG_DIR "/model_d2_ramified2.json"));
}

const Rat kB(60);

QExpansion single_term(const config::LoadedModel& lm, Vec k, Vec l, Vec m,
                       gf::Element c) {
  return QExpansion(lm.model, std::move(k), std::move(l), kB,
                    gf::Element::zero(lm.field),
                    {{std::move(m), std::move(c)}});
}

}  // namespace

TEST_CASE("collapse of a single component") {
  auto lm = inert3();
  auto g = gf::Element::gen(lm.field);
  auto f = single_term(lm, {1, 0}, {0, 0}, {3, 1}, g);
  GradedElement x(lm.model, kB);
  x.add_component(f);
  auto buckets = ring::qbar_collapse(x);
  REQUIRE(buckets.size() == 1);
  const auto& [key, bucket] = *buckets.begin();
  CHECK(key.first == weights::rho(*lm.shape, {1, 0}));
  CHECK_FALSE(weights::psi_trivial(key.first));
  CHECK(bucket.terms == f.terms());
  CHECK(bucket.constant == f.constant());
}

TEST_CASE("weight relabels die in the collapse") {
  auto lm = inert3();
  std::mt19937_64 rng(21);
  for (const auto& th : lm.shape->sigma()) {
    auto f = verify::random_qexp(lm, rng, kB, 6, kB);
    GradedElement x(lm.model, kB);
    x.add_component(qexp::mul_hasse(th, f));
    x.add_component(qexp::scalar_mul(-gf::Element::one(lm.field), f));
    CHECK(x.components().size() == 2);
    CHECK(ring::qbar_collapse(x).empty());
    // same game on the l-grading
    GradedElement y(lm.model, kB);
    y.add_component(qexp::mul_g(th, f));
    y.add_component(qexp::scalar_mul(-gf::Element::one(lm.field), f));
    CHECK(ring::qbar_collapse(y).empty());
  }
}

TEST_CASE("distinct characters stay separated") {
  auto lm = inert3();
  auto one = gf::Element::one(lm.field);
  GradedElement x(lm.model, kB);
  x.add_component(single_term(lm, {0, 0}, {0, 0}, {3, 1}, one));
  x.add_component(single_term(lm, {1, 0}, {0, 0}, {4, 1}, one));
  CHECK(ring::qbar_collapse(x).size() == 2);
}

TEST_CASE("arithmetic in the graded algebra") {
  auto lm = ramified2();
  std::mt19937_64 rng(23);
  auto f = verify::random_qexp(lm, rng, kB, 6, kB);
  GradedElement x(lm.model, kB);
  x.add_component(f);
  auto z = ring::ring_add(x, ring::ring_negate(x));
  CHECK(z.is_zero());
  CHECK(ring::qbar_collapse(z).empty());
  // merging equal weights adds coefficients; in characteristic 2 the
  // doubled component cancels entirely
  GradedElement w(lm.model, kB);
  w.add_component(f);
  w.add_component(f);
  CHECK(w.is_zero());
  auto lm3 = inert3();
  auto one = gf::Element::one(lm3.field);
  GradedElement w3(lm3.model, kB);
  w3.add_component(single_term(lm3, {0, 0}, {0, 0}, {3, 1}, one));
  w3.add_component(single_term(lm3, {0, 0}, {0, 0}, {3, 1}, one));
  REQUIRE(w3.components().size() == 1);
  CHECK(w3.components().begin()->second.terms().begin()->second ==
        one + one);
}

TEST_CASE("theta after V collapses to zero") {
  auto lm = ramified2();
  std::mt19937_64 rng(29);
  for (int i = 0; i < 20; ++i) {
    auto f = verify::random_qexp(lm, rng, kB, 5, kB / Rat(4));
    GradedElement x(lm.model, kB);
    x.add_component(f);
    auto tv = ring::ring_theta({0, 0}, ring::ring_v(0, x));
    CHECK(ring::qbar_collapse(tv).empty());
  }
}

TEST_CASE("exactness probe: V-images are exact") {
  auto lm = ramified2();
  std::mt19937_64 rng(31);
  for (int i = 0; i < 25; ++i) {
    auto g = verify::random_qexp(lm, rng, kB, 5, kB / Rat(4));
    GradedElement y(lm.model, kB);
    y.add_component(g);
    auto x = ring::ring_v(0, y);
    auto pr = ring::exactness_probe(0, {0, 0}, x);
    INFO(pr.detail);
    REQUIRE(pr.kind == ring::ProbeResult::Kind::Exact);
    REQUIRE(pr.witness.has_value());
    // the witness maps onto x under V, up to the collapse
    auto diff =
        ring::ring_add(ring::ring_v(0, *pr.witness), ring::ring_negate(x));
    CHECK(ring::qbar_collapse(diff).empty());
  }
}

TEST_CASE("exactness probe: zero input") {
  auto lm = ramified2();
  GradedElement x(lm.model, kB);
  auto pr = ring::exactness_probe(0, {0, 0}, x);
  CHECK(pr.kind == ring::ProbeResult::Kind::Exact);
}

TEST_CASE("exactness probe: off-lattice support is rejected") {
  auto lm = ramified2();
  auto one = gf::Element::one(lm.field);
  GradedElement x(lm.model, kB);
  x.add_component(single_term(lm, {0, 0}, {0, 0}, {1, 0}, one));
  auto pr = ring::exactness_probe(0, {0, 0}, x);
  CHECK(pr.kind == ring::ProbeResult::Kind::NotInKernel);
}

TEST_CASE("exactness probe: prime mismatch") {
  auto lm = ramified2();
  GradedElement x(lm.model, kB);
  CHECK(test::code_of([&] { ring::exactness_probe(1, {0, 0}, x); }) ==
        ErrorCode::ConfigInvalid);
}

TEST_CASE("exactness suites") {
  for (const auto& lm : {inert3(), ramified2()}) {
    auto rs = verify::run_suite(lm, "exactness", 10, 42);
    for (const auto& r : rs) {
      INFO(r.name, ": ", r.detail);
      CHECK(r.pass);
    }
  }
}
