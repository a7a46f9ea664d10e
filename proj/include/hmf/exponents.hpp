#ifndef HMF_EXPONENTS_HPP
#define HMF_EXPONENTS_HPP

#include <memory>
#include <optional>
#include <vector>

#include "hmf/gf.hpp"
#include "hmf/intmat.hpp"
#include "hmf/shape.hpp"

namespace hmf::expo {

using intmat::Mat;
using intmat::Rat;
using intmat::Vec;

// Per-prime scaling and residue data.  `pi` is the matrix of
// multiplication by the scaling element on the exponent lattice;
// `residue` lists the residue-field image of each coordinate basis
// vector, so the reduction of m is sum m_i * residue[i].
struct PrimeModel {
  Mat pi;
  std::vector<gf::Element> residue;
};

// The cusp exponent lattice: a rank-r Z-module with exact total
// positivity, per-prime scaling, and residue reductions.  Two kinds:
// a real quadratic field Z[omega] (rank 2, positivity by trace/norm
// sign tests) and a synthetic lattice (positivity by a supplied list
// of linear functionals, all of which must be strictly positive).
class ExponentModel {
public:
  static std::shared_ptr<const ExponentModel> quadratic(
      shape::ShapePtr s, gf::ContextPtr field, int64_t D,
      std::vector<PrimeModel> primes);
  static std::shared_ptr<const ExponentModel> synthetic(
      shape::ShapePtr s, gf::ContextPtr field, int rank,
      std::vector<PrimeModel> primes, Mat positivity, Vec trace);

  const shape::FieldShape& fshape() const { return *shape_; }
  const shape::ShapePtr& shape_ptr() const { return shape_; }
  const gf::ContextPtr& field() const { return field_; }
  int rank() const { return rank_; }

  // the generator of the lattice as a module over the coefficient ring
  Vec gen() const;

  bool is_totally_positive(const Vec& m) const;
  // additive functional, strictly positive on totally positive m
  int64_t trace(const Vec& m) const;

  Vec scale(int prime, const Vec& m) const;
  // m in pi^n * lattice?
  bool in_scaled(int prime, int n, const Vec& m) const;
  // pi^{-1} m when integral
  std::optional<Vec> unscale(int prime, const Vec& m) const;

  gf::Element tau_reduce(const shape::TauIndex& tau, const Vec& m) const;

  // nu with prod_P pi_P^{e_P} = nu * p; unimodular, totally positive
  const Mat& nu() const { return nu_; }
  const Mat& nu_inv() const { return nu_inv_; }
  Vec nu_coords() const;

  // character value of a unit at an l-weight, through the residue maps
  gf::Element chi(const Vec& l, const Mat& unit) const;
  // NotAUnit unless u is unimodular, commutes with the scalings, and
  // preserves total positivity (sampled)
  void check_unit(const Mat& u) const;

  int64_t p() const { return shape_->p(); }

private:
  ExponentModel() = default;
  void verify();
  bool quadratic_ = false;
  int64_t qc_ = 0, qt_ = 0;  // omega^2 = qc_ + qt_ * omega
  shape::ShapePtr shape_;
  gf::ContextPtr field_;
  int rank_ = 0;
  std::vector<PrimeModel> primes_;
  Mat positivity_;
  Vec trace_;
  Mat nu_, nu_inv_;
};

using ModelPtr = std::shared_ptr<const ExponentModel>;

}  // namespace hmf::expo

#endif
