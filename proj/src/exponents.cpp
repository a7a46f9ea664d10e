#include "hmf/exponents.hpp"

#include <cstdlib>
#include <random>

#include "hmf/errors.hpp"

namespace hmf::expo {

namespace {

int64_t ipow(int64_t b, int e) {
  int64_t r = 1;
  while (e-- > 0) r *= b;
  return r;
}

bool squarefree(int64_t n) {
  for (int64_t d = 2; d * d <= n; ++d)
    if (n % (d * d) == 0) return false;
  return true;
}

}  // namespace

std::shared_ptr<const ExponentModel> ExponentModel::quadratic(
    shape::ShapePtr s, gf::ContextPtr field, int64_t D,
    std::vector<PrimeModel> primes) {
  if (D <= 1 || !squarefree(D))
    fail(ErrorCode::ConfigInvalid, "D must be squarefree and > 1");
  auto m = std::shared_ptr<ExponentModel>(new ExponentModel());
  m->quadratic_ = true;
  if (D % 4 == 1) {
    m->qt_ = 1;
    m->qc_ = (D - 1) / 4;
  } else {
    m->qt_ = 0;
    m->qc_ = D;
  }
  m->shape_ = std::move(s);
  m->field_ = std::move(field);
  m->rank_ = 2;
  m->primes_ = std::move(primes);
  m->trace_ = {2, m->qt_};
  m->verify();
  return m;
}

std::shared_ptr<const ExponentModel> ExponentModel::synthetic(
    shape::ShapePtr s, gf::ContextPtr field, int rank,
    std::vector<PrimeModel> primes, Mat positivity, Vec trace) {
  if (rank < 1) fail(ErrorCode::ConfigInvalid, "rank must be positive");
  if (positivity.empty())
    fail(ErrorCode::ConfigInvalid, "no positivity functionals");
  auto m = std::shared_ptr<ExponentModel>(new ExponentModel());
  m->shape_ = std::move(s);
  m->field_ = std::move(field);
  m->rank_ = rank;
  m->primes_ = std::move(primes);
  m->positivity_ = std::move(positivity);
  if (trace.empty()) {
    trace.assign(rank, 0);
    for (const auto& row : m->positivity_)
      for (int i = 0; i < rank; ++i) trace[i] += row[i];
  }
  m->trace_ = std::move(trace);
  m->verify();
  return m;
}

Vec ExponentModel::gen() const {
  Vec g(rank_, 0);
  g[0] = 1;
  return g;
}

bool ExponentModel::is_totally_positive(const Vec& m) const {
  if (static_cast<int>(m.size()) != rank_)
    fail(ErrorCode::ModelMismatch, "exponent has wrong rank");
  if (quadratic_) {
    int64_t x = m[0], y = m[1];
    int64_t tr = 2 * x + qt_ * y;
    int64_t nm = x * x + qt_ * x * y - qc_ * y * y;
    return tr > 0 && nm > 0;
  }
  for (const auto& row : positivity_) {
    int64_t v = 0;
    for (int i = 0; i < rank_; ++i) v += row[i] * m[i];
    if (v <= 0) return false;
  }
  return true;
}

int64_t ExponentModel::trace(const Vec& m) const {
  if (static_cast<int>(m.size()) != rank_)
    fail(ErrorCode::ModelMismatch, "exponent has wrong rank");
  int64_t v = 0;
  for (int i = 0; i < rank_; ++i) v += trace_[i] * m[i];
  return v;
}

Vec ExponentModel::scale(int prime, const Vec& m) const {
  return intmat::mat_vec(primes_.at(prime).pi, m);
}

bool ExponentModel::in_scaled(int prime, int n, const Vec& m) const {
  return intmat::solve_integer(intmat::mat_pow(primes_.at(prime).pi, n), m)
      .has_value();
}

std::optional<Vec> ExponentModel::unscale(int prime, const Vec& m) const {
  return intmat::solve_integer(primes_.at(prime).pi, m);
}

gf::Element ExponentModel::tau_reduce(const shape::TauIndex& tau,
                                      const Vec& m) const {
  const auto& pm = primes_.at(tau.prime);
  auto acc = gf::Element::zero(field_);
  for (int i = 0; i < rank_; ++i)
    acc = acc + gf::Element::from_int(field_, m[i]) * pm.residue[i];
  int f = shape_->prime(tau.prime).f;
  int i = ((tau.i % f) + f) % f;
  return acc.frobenius(i);
}

Vec ExponentModel::nu_coords() const { return intmat::mat_vec(nu_, gen()); }

gf::Element ExponentModel::chi(const Vec& l, const Mat& unit) const {
  if (static_cast<int>(l.size()) != shape_->degree())
    fail(ErrorCode::WeightMismatch, "l-weight length != degree");
  // the residue of the unit at tau: tau(u b)/tau(b) for a basis vector b
  // with nonzero residue (u acts by multiplication, so the quotient does
  // not depend on the choice)
  auto unit_residue = [&](const shape::TauIndex& tau) {
    for (int i = 0; i < rank_; ++i) {
      Vec b(rank_, 0);
      b[i] = 1;
      auto rb = tau_reduce(tau, b);
      if (rb.is_zero()) continue;
      return tau_reduce(tau, intmat::mat_vec(unit, b)) * rb.inv();
    }
    fail(ErrorCode::ModelInconsistent, "residue map vanishes on the basis");
  };
  auto acc = gf::Element::one(field_);
  for (int t = 0; t < shape_->degree(); ++t) {
    auto theta = shape_->at(t);
    if (l[t] == 0) continue;
    acc = acc * unit_residue({theta.prime, theta.i}).pow(l[t]);
  }
  return acc;
}

namespace {

// deterministic totally positive sample points in a small box
std::vector<Vec> tp_samples(const ExponentModel& m) {
  std::vector<Vec> out;
  int r = m.rank();
  if (r <= 4) {
    Vec v(r, -3);
    while (true) {
      if (m.is_totally_positive(v)) out.push_back(v);
      int i = 0;
      while (i < r && ++v[i] > 3) v[i++] = -3;
      if (i == r) break;
    }
  } else {
    std::mt19937 rng(12345);
    std::uniform_int_distribution<int64_t> d(-5, 5);
    for (int n = 0; n < 2000; ++n) {
      Vec v(r);
      for (auto& x : v) x = d(rng);
      if (m.is_totally_positive(v)) out.push_back(v);
    }
  }
  return out;
}

}  // namespace

void ExponentModel::check_unit(const Mat& u) const {
  if (static_cast<int>(u.size()) != rank_)
    fail(ErrorCode::NotAUnit, "unit matrix has wrong rank");
  int64_t d = intmat::det(u);
  if (d != 1 && d != -1) fail(ErrorCode::NotAUnit, "determinant not +-1");
  for (const auto& pm : primes_)
    if (intmat::mat_mul(u, pm.pi) != intmat::mat_mul(pm.pi, u))
      fail(ErrorCode::NotAUnit, "unit does not commute with scalings");
  for (const auto& v : tp_samples(*this))
    if (!is_totally_positive(intmat::mat_vec(u, v)))
      fail(ErrorCode::NotAUnit, "unit does not preserve positivity");
}

void ExponentModel::verify() {
  if (!shape_ || !field_) fail(ErrorCode::ConfigInvalid, "null handles");
  if (static_cast<int>(primes_.size()) != shape_->prime_count())
    fail(ErrorCode::ConfigInvalid, "prime data count != shape primes");
  for (const auto& P : shape_->primes())
    if (field_->degree() % P.f != 0)
      fail(ErrorCode::ConfigInvalid,
           "coefficient field degree not divisible by residue degree");
  if (!quadratic_)
    for (const auto& row : positivity_)
      if (static_cast<int>(row.size()) != rank_)
        fail(ErrorCode::ConfigInvalid, "functional has wrong rank");

  const int64_t p = shape_->p();
  for (int pi = 0; pi < shape_->prime_count(); ++pi) {
    const auto& P = shape_->prime(pi);
    const auto& pm = primes_[pi];
    if (static_cast<int>(pm.pi.size()) != rank_)
      fail(ErrorCode::ConfigInvalid, "scaling matrix has wrong rank");
    for (const auto& row : pm.pi)
      if (static_cast<int>(row.size()) != rank_)
        fail(ErrorCode::ConfigInvalid, "scaling matrix not square");
    int64_t nrm = intmat::det(pm.pi);
    if (std::abs(nrm) != ipow(p, P.f))
      fail(ErrorCode::ModelInconsistent,
           "scaling norm is not p^f for prime " + P.id);
    if (static_cast<int>(pm.residue.size()) != rank_)
      fail(ErrorCode::ConfigInvalid, "residue data has wrong rank");
    // residue values must lie in the subfield of order p^f
    for (const auto& r : pm.residue)
      if (!(r.frobenius(P.f) == r))
        fail(ErrorCode::ModelInconsistent,
             "residue image outside subfield for prime " + P.id);
    // kernel contains the scaled lattice
    for (int i = 0; i < rank_; ++i) {
      Vec e(rank_, 0);
      e[i] = 1;
      if (!tau_reduce({pi, 0}, scale(pi, e)).is_zero())
        fail(ErrorCode::ModelInconsistent,
             "scaled basis vector has nonzero residue");
    }
    // kernel is exactly the scaled lattice: the reduction must be
    // injective on a fundamental domain (p^f cosets, p^f values)
    auto reps = intmat::coset_representatives(pm.pi);
    for (size_t a = 0; a < reps.size(); ++a)
      for (size_t b = a + 1; b < reps.size(); ++b)
        if (tau_reduce({pi, 0}, reps[a]) == tau_reduce({pi, 0}, reps[b]))
          fail(ErrorCode::ModelInconsistent,
               "residue map not injective modulo scaled lattice");
    if (quadratic_) {
      // the residue map must be a ring map: 1 -> 1 and the minimal
      // relation of omega must be respected
      if (!(pm.residue[0] == gf::Element::one(field_)))
        fail(ErrorCode::ModelInconsistent, "residue of 1 is not 1");
      auto w = pm.residue[1];
      auto rel = gf::Element::from_int(field_, qc_) +
                 gf::Element::from_int(field_, qt_) * w;
      if (!(w * w == rel))
        fail(ErrorCode::ModelInconsistent,
             "residue image violates the minimal relation");
      // total positivity of the scaling element, exactly
      Vec c = intmat::mat_vec(pm.pi, gen());
      if (!is_totally_positive(c))
        fail(ErrorCode::ModelInconsistent,
             "scaling element not totally positive");
    }
  }
  for (size_t a = 0; a < primes_.size(); ++a)
    for (size_t b = a + 1; b < primes_.size(); ++b)
      if (intmat::mat_mul(primes_[a].pi, primes_[b].pi) !=
          intmat::mat_mul(primes_[b].pi, primes_[a].pi))
        fail(ErrorCode::ModelInconsistent, "scaling matrices do not commute");
  if (!quadratic_) {
    auto samples = tp_samples(*this);
    if (samples.empty())
      fail(ErrorCode::ModelInconsistent, "positivity cone looks empty");
    for (const auto& pm : primes_)
      for (const auto& v : samples)
        if (!is_totally_positive(intmat::mat_vec(pm.pi, v)))
          fail(ErrorCode::ModelInconsistent,
               "scaling does not preserve positivity");
  }

  // prod pi^e = p * nu with nu a unimodular totally positive unit
  Mat prod = intmat::identity(rank_);
  for (int pi = 0; pi < shape_->prime_count(); ++pi)
    prod = intmat::mat_mul(
        prod, intmat::mat_pow(primes_[pi].pi, shape_->prime(pi).e));
  nu_.assign(rank_, Vec(rank_, 0));
  for (int i = 0; i < rank_; ++i)
    for (int j = 0; j < rank_; ++j) {
      if (prod[i][j] % p != 0)
        fail(ErrorCode::ModelInconsistent,
             "scaling product not divisible by p");
      nu_[i][j] = prod[i][j] / p;
    }
  int64_t dn = intmat::det(nu_);
  if (dn != 1 && dn != -1)
    fail(ErrorCode::ModelInconsistent, "nu is not unimodular");
  nu_inv_.assign(rank_, Vec(rank_, 0));
  for (int j = 0; j < rank_; ++j) {
    Vec e(rank_, 0);
    e[j] = 1;
    auto col = intmat::solve_integer(nu_, e);
    if (!col) fail(ErrorCode::ModelInconsistent, "nu not invertible over Z");
    for (int i = 0; i < rank_; ++i) nu_inv_[i][j] = (*col)[i];
  }
  if (quadratic_) {
    if (!is_totally_positive(nu_coords()))
      fail(ErrorCode::ModelInconsistent, "nu not totally positive");
  } else {
    for (const auto& v : tp_samples(*this))
      if (!is_totally_positive(intmat::mat_vec(nu_, v)))
        fail(ErrorCode::ModelInconsistent,
             "nu does not preserve positivity");
  }
}

}  // namespace hmf::expo
