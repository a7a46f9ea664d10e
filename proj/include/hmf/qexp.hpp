#ifndef HMF_QEXP_HPP
#define HMF_QEXP_HPP

#include <map>
#include <vector>

#include "hmf/exponents.hpp"
#include "hmf/weights.hpp"

namespace hmf::qexp {

using expo::Mat;
using expo::ModelPtr;
using expo::Rat;
using expo::Vec;

// Truncated formal sum: constant + sum r_m q^m over totally positive
// exponents with trace <= bound, tagged with a weight pair (k, l).
class QExpansion {
public:
  QExpansion(ModelPtr model, Vec k, Vec l, Rat bound, gf::Element constant,
             std::map<Vec, gf::Element> terms);

  static QExpansion zero(ModelPtr model, Vec k, Vec l, Rat bound);

  const ModelPtr& model() const { return model_; }
  const Vec& k() const { return k_; }
  const Vec& l() const { return l_; }
  const Rat& bound() const { return bound_; }
  const gf::Element& constant() const { return constant_; }
  const std::map<Vec, gf::Element>& terms() const { return terms_; }

  bool is_zero() const;
  bool operator==(const QExpansion& other) const;
  // equal coefficients, ignoring the weight tag
  bool same_coefficients(const QExpansion& other) const;

private:
  ModelPtr model_;
  Vec k_, l_;
  Rat bound_;
  gf::Element constant_;
  std::map<Vec, gf::Element> terms_;
};

QExpansion add(const QExpansion& f, const QExpansion& g);
QExpansion scalar_mul(const gf::Element& c, const QExpansion& f);
QExpansion mul(const QExpansion& f, const QExpansion& g);

// weight relabels by the n-th power of the normalized invariants
// (constants 1): H' adds n*h_theta to k, G' adds n*h_theta to l
QExpansion mul_hasse(const shape::ThetaIndex& theta, const QExpansion& f,
                     int64_t n = 1);
QExpansion mul_g(const shape::ThetaIndex& theta, const QExpansion& f,
                 int64_t n = 1);

QExpansion apply_theta(const shape::TauIndex& tau, const QExpansion& f);
QExpansion apply_v(int prime, const QExpansion& f);
QExpansion apply_v0(int prime, const QExpansion& f);

// coefficientwise p-th power plus the index relabel
// out_{P,i,j} = in_{P,i-1,j} on both weights
QExpansion frob_coeffs(const QExpansion& f);

// reindex exponents m -> u^{-1} m for a unimodular unit matrix u
QExpansion reindex(const Mat& u_inv, const QExpansion& f);

bool ppower_check(const QExpansion& f);

bool in_theta_kernel(const shape::TauIndex& tau, const QExpansion& f);
QExpansion v0_preimage(int prime, const QExpansion& f);

bool theta_p_relation_check(const shape::TauIndex& tau0,
                            const QExpansion& f);

bool validate_unit_invariance(const QExpansion& f,
                              const std::vector<Mat>& units);

}  // namespace hmf::qexp

#endif
