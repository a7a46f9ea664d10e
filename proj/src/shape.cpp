#include "hmf/shape.hpp"

#include <set>

namespace hmf::shape {

namespace {
bool is_prime(int64_t n) {
  if (n < 2) return false;
  for (int64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

int posmod(int a, int m) {
  int r = a % m;
  return r < 0 ? r + m : r;
}
}  // namespace

FieldShape::FieldShape(int64_t p, std::vector<PrimeShape> primes)
    : p_(p), primes_(std::move(primes)) {
  if (!is_prime(p_)) fail(ErrorCode::ConfigInvalid, "p is not prime");
  if (primes_.empty()) fail(ErrorCode::ConfigInvalid, "no primes over p");
  std::set<std::string> ids;
  for (const auto& P : primes_) {
    if (P.e < 1 || P.f < 1)
      fail(ErrorCode::ConfigInvalid, "prime with e < 1 or f < 1");
    if (!ids.insert(P.id).second)
      fail(ErrorCode::ConfigInvalid, "duplicate prime id: " + P.id);
  }
  for (int pi = 0; pi < prime_count(); ++pi) {
    block_start_.push_back(degree_);
    const auto& P = primes_[pi];
    for (int i = 0; i < P.f; ++i)
      for (int j = 1; j <= P.e; ++j) sigma_.push_back({pi, i, j});
    degree_ += P.e * P.f;
  }
}

int FieldShape::prime_index(const std::string& id) const {
  for (int pi = 0; pi < prime_count(); ++pi)
    if (primes_[pi].id == id) return pi;
  fail(ErrorCode::ConfigInvalid, "unknown prime id: " + id);
}

void FieldShape::check(const ThetaIndex& theta) const {
  if (theta.prime < 0 || theta.prime >= prime_count())
    fail(ErrorCode::ConfigInvalid, "theta index: bad prime");
  const auto& P = primes_[theta.prime];
  if (theta.i < 0 || theta.i >= P.f || theta.j < 1 || theta.j > P.e)
    fail(ErrorCode::ConfigInvalid, "theta index out of range");
}

int FieldShape::position(const ThetaIndex& theta) const {
  check(theta);
  const auto& P = primes_[theta.prime];
  return block_start_[theta.prime] + theta.i * P.e + (theta.j - 1);
}

ThetaIndex FieldShape::shift(const ThetaIndex& theta) const {
  check(theta);
  const auto& P = primes_[theta.prime];
  if (theta.j < P.e) return {theta.prime, theta.i, theta.j + 1};
  return {theta.prime, posmod(theta.i + 1, P.f), 1};
}

ThetaIndex FieldShape::shift_inv(const ThetaIndex& theta) const {
  check(theta);
  const auto& P = primes_[theta.prime];
  if (theta.j > 1) return {theta.prime, theta.i, theta.j - 1};
  return {theta.prime, posmod(theta.i - 1, P.f), P.e};
}

int64_t FieldShape::multiplier(const ThetaIndex& theta) const {
  check(theta);
  return theta.j == 1 ? p_ : 1;
}

ThetaIndex FieldShape::top_theta(const TauIndex& tau) const {
  if (tau.prime < 0 || tau.prime >= prime_count())
    fail(ErrorCode::ConfigInvalid, "tau index: bad prime");
  const auto& P = primes_[tau.prime];
  return {tau.prime, posmod(tau.i, P.f), P.e};
}

std::vector<TauIndex> FieldShape::residue_indices() const {
  std::vector<TauIndex> out;
  for (int pi = 0; pi < prime_count(); ++pi)
    for (int i = 0; i < primes_[pi].f; ++i) out.push_back({pi, i});
  return out;
}

}  // namespace hmf::shape
