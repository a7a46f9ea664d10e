#include "hmf/ring.hpp"

#include "hmf/errors.hpp"

namespace hmf::ring {

GradedElement::GradedElement(ModelPtr model, Rat bound)
    : model_(std::move(model)), bound_(bound) {
  if (!model_) fail(ErrorCode::ConfigInvalid, "null model");
}

void GradedElement::add_component(const QExpansion& q) {
  if (q.model().get() != model_.get())
    fail(ErrorCode::ModelMismatch, "component from a different model");
  if (q.bound() != bound_)
    fail(ErrorCode::ModelMismatch, "component with a different bound");
  WeightKey key{q.k(), q.l()};
  auto it = comps_.find(key);
  if (it == comps_.end()) {
    if (!q.is_zero()) comps_.emplace(std::move(key), q);
    return;
  }
  auto sum = qexp::add(it->second, q);
  if (sum.is_zero())
    comps_.erase(it);
  else
    it->second = std::move(sum);
}

bool GradedElement::is_zero() const { return comps_.empty(); }

CharacterBucketSum qbar_collapse(const GradedElement& x) {
  const auto& s = x.model()->fshape();
  CharacterBucketSum out;
  for (const auto& [key, q] : x.components()) {
    BucketKey bk{weights::rho(s, key.first), weights::rho(s, key.second)};
    auto it = out.find(bk);
    if (it == out.end()) {
      it = out.emplace(bk, Bucket{q.constant(), q.terms()}).first;
    } else {
      it->second.constant = it->second.constant + q.constant();
      for (const auto& [m, c] : q.terms()) {
        auto t = it->second.terms.find(m);
        if (t == it->second.terms.end()) {
          it->second.terms.emplace(m, c);
        } else {
          t->second = t->second + c;
          if (t->second.is_zero()) it->second.terms.erase(t);
        }
      }
    }
  }
  for (auto it = out.begin(); it != out.end();)
    it = it->second.is_zero() ? out.erase(it) : std::next(it);
  return out;
}

GradedElement ring_v(int prime, const GradedElement& x) {
  GradedElement out(x.model(), x.bound());
  for (const auto& [key, q] : x.components())
    out.add_component(qexp::apply_v(prime, q));
  return out;
}

GradedElement ring_theta(const shape::TauIndex& tau,
                         const GradedElement& x) {
  GradedElement out(x.model(), x.bound());
  for (const auto& [key, q] : x.components())
    out.add_component(qexp::apply_theta(tau, q));
  return out;
}

GradedElement ring_add(const GradedElement& x, const GradedElement& y) {
  GradedElement out = x;
  for (const auto& [key, q] : y.components()) out.add_component(q);
  return out;
}

GradedElement ring_negate(const GradedElement& x) {
  GradedElement out(x.model(), x.bound());
  auto minus_one = -gf::Element::one(x.model()->field());
  for (const auto& [key, q] : x.components())
    out.add_component(qexp::scalar_mul(minus_one, q));
  return out;
}

ProbeResult exactness_probe(int prime, const shape::TauIndex& tau,
                            const GradedElement& x) {
  if (tau.prime != prime)
    fail(ErrorCode::ConfigInvalid, "tau does not lie over the prime");
  const auto& model = *x.model();
  if (!qbar_collapse(ring_theta(tau, x)).empty())
    return {ProbeResult::Kind::NotInKernel, std::nullopt,
            "theta collapse nonzero"};

  // Kernel buckets have support inside the scaled lattice.  Build the
  // witness bucketwise: a bucket representative weight k stays valid
  // for the preimage because V shifts k within its own character class.
  auto buckets = qbar_collapse(x);
  // pick a representative weight per bucket
  std::map<BucketKey, WeightKey> rep;
  const auto& s = model.fshape();
  for (const auto& [key, q] : x.components()) {
    BucketKey bk{weights::rho(s, key.first), weights::rho(s, key.second)};
    rep.emplace(bk, key);
  }
  GradedElement y(x.model(), x.bound());
  for (const auto& [bk, bucket] : buckets) {
    std::map<Vec, gf::Element> pre;
    for (const auto& [m, c] : bucket.terms) {
      auto m0 = model.unscale(prime, m);
      if (!m0)
        return {ProbeResult::Kind::NotInKernel, std::nullopt,
                "bucket support not inside the scaled lattice"};
      pre.emplace(std::move(*m0), c);
    }
    const auto& [k, l] = rep.at(bk);
    try {
      y.add_component(
          QExpansion(x.model(), k, l, x.bound(), bucket.constant,
                     std::move(pre)));
    } catch (const Error& err) {
      return {ProbeResult::Kind::NotApplicable, std::nullopt,
              std::string("witness construction failed: ") + err.what()};
    }
  }
  auto diff = ring_add(ring_v(prime, y), ring_negate(x));
  if (!qbar_collapse(diff).empty())
    return {ProbeResult::Kind::NotApplicable, std::nullopt,
            "witness does not reproduce the input"};
  // injectivity probe on the witness
  if (!qbar_collapse(y).empty() &&
      qbar_collapse(ring_v(prime, y)).empty())
    fail(ErrorCode::ModelInconsistent, "V not injective on buckets");
  return {ProbeResult::Kind::Exact, std::move(y), ""};
}

}  // namespace hmf::ring
