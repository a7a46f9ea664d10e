#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "hmf/shape.hpp"
#include "test_util.hpp"

using namespace hmf;
using shape::FieldShape;
using shape::PrimeShape;
using shape::ThetaIndex;

TEST_CASE("enumeration order and length") {
  FieldShape a(5, {{"P", 2, 1}});
  REQUIRE(a.degree() == 2);
  CHECK(a.at(0) == ThetaIndex{0, 0, 1});
  CHECK(a.at(1) == ThetaIndex{0, 0, 2});

  FieldShape b(2, {{"P", 1, 2}});
  REQUIRE(b.degree() == 2);
  CHECK(b.at(0) == ThetaIndex{0, 0, 1});
  CHECK(b.at(1) == ThetaIndex{0, 1, 1});

  FieldShape c(3, {{"P", 2, 2}});
  CHECK(c.degree() == 4);

  FieldShape d(3, {{"P", 1, 1}, {"Q", 2, 2}});
  CHECK(d.degree() == 5);
  CHECK(d.at(1) == ThetaIndex{1, 0, 1});
  CHECK(d.prime_index("Q") == 1);
}

TEST_CASE("shift permutation") {
  FieldShape s(3, {{"P", 2, 2}});
  // increment within the slot, then to the next residue line
  CHECK(s.shift({0, 0, 1}) == ThetaIndex{0, 0, 2});
  CHECK(s.shift({0, 0, 2}) == ThetaIndex{0, 1, 1});
  CHECK(s.shift_inv({0, 0, 1}) == ThetaIndex{0, 1, 2});
  for (const auto& t : s.sigma()) {
    CHECK(s.shift_inv(s.shift(t)) == t);
    CHECK(s.shift(s.shift_inv(t)) == t);
  }
}

TEST_CASE("shift is a single cycle per prime") {
  for (auto [e, f] : {std::pair{1, 1}, {2, 1}, {1, 3}, {2, 2}, {3, 2}}) {
    FieldShape s(5, {{"P", e, f}});
    auto cur = s.at(0);
    int steps = 0;
    do {
      cur = s.shift(cur);
      ++steps;
    } while (!(cur == s.at(0)));
    CHECK(steps == e * f);
  }
}

TEST_CASE("multipliers") {
  FieldShape s(5, {{"P", 2, 2}});
  CHECK(s.multiplier({0, 0, 1}) == 5);
  CHECK(s.multiplier({0, 0, 2}) == 1);
  int with_p = 0;
  for (const auto& t : s.sigma())
    if (s.multiplier(t) == 5) ++with_p;
  CHECK(with_p == 2);  // one per residue line

  FieldShape e1(7, {{"P", 1, 3}});
  for (const auto& t : e1.sigma()) CHECK(e1.multiplier(t) == 7);
}

TEST_CASE("top slot per residue index") {
  FieldShape s(5, {{"P", 2, 3}});
  CHECK(s.top_theta({0, 1}) == ThetaIndex{0, 1, 2});
  CHECK(s.top_theta({0, 3}) == ThetaIndex{0, 0, 2});  // i reduced mod f
  CHECK(s.residue_indices().size() == 3);
}

TEST_CASE("validation") {
  CHECK(test::code_of([] { FieldShape(6, {{"P", 1, 1}}); }) ==
        ErrorCode::ConfigInvalid);
  CHECK(test::code_of([] { FieldShape(5, {}); }) ==
        ErrorCode::ConfigInvalid);
  CHECK(test::code_of([] { FieldShape(5, {{"P", 0, 1}}); }) ==
        ErrorCode::ConfigInvalid);
  CHECK(test::code_of([] {
          FieldShape(5, {{"P", 1, 1}, {"P", 1, 1}});
        }) == ErrorCode::ConfigInvalid);
}
