#ifndef HMF_RING_HPP
#define HMF_RING_HPP

#include <map>
#include <optional>
#include <string>
#include <utility>

#include "hmf/qexp.hpp"

namespace hmf::ring {

using expo::ModelPtr;
using expo::Rat;
using expo::Vec;
using qexp::QExpansion;

using WeightKey = std::pair<Vec, Vec>;

// An element of the total graded algebra: finitely many weight
// components, all over one model and bound.
class GradedElement {
public:
  GradedElement(ModelPtr model, Rat bound);

  const ModelPtr& model() const { return model_; }
  const Rat& bound() const { return bound_; }
  const std::map<WeightKey, QExpansion>& components() const {
    return comps_;
  }

  // merge q into the component of its weight
  void add_component(const QExpansion& q);
  bool is_zero() const;

private:
  ModelPtr model_;
  Rat bound_;
  std::map<WeightKey, QExpansion> comps_;
};

// Bare coefficient data of one character bucket.
struct Bucket {
  gf::Element constant;
  std::map<Vec, gf::Element> terms;

  bool is_zero() const { return constant.is_zero() && terms.empty(); }
  bool operator==(const Bucket&) const = default;
};

using BucketKey =
    std::pair<weights::PsiCharacter, weights::PsiCharacter>;
// only nonzero buckets are kept
using CharacterBucketSum = std::map<BucketKey, Bucket>;

CharacterBucketSum qbar_collapse(const GradedElement& x);

GradedElement ring_v(int prime, const GradedElement& x);
GradedElement ring_theta(const shape::TauIndex& tau,
                         const GradedElement& x);
GradedElement ring_add(const GradedElement& x, const GradedElement& y);
GradedElement ring_negate(const GradedElement& x);

struct ProbeResult {
  enum class Kind { Exact, NotInKernel, NotApplicable } kind;
  std::optional<GradedElement> witness;
  std::string detail;
};

// For x in the kernel of the collapsed theta, construct y whose
// collapsed V-image equals the collapse of x; also runs the
// injectivity probe on the constructed witness.
ProbeResult exactness_probe(int prime, const shape::TauIndex& tau,
                            const GradedElement& x);

}  // namespace hmf::ring

#endif
