#ifndef HMF_WEIGHTS_HPP
#define HMF_WEIGHTS_HPP

#include <optional>
#include <vector>

#include "hmf/intmat.hpp"
#include "hmf/shape.hpp"

namespace hmf::weights {

using shape::FieldShape;
using shape::TauIndex;
using shape::ThetaIndex;
using Vec = intmat::Vec;
using Mat = intmat::Mat;
using Rat = intmat::Rat;

struct WeightPair {
  Vec k;
  Vec l;
};

// Per-prime residue classes mod (p^f - 1), reduced into [0, p^f - 2].
using PsiCharacter = std::vector<int64_t>;

void check_length(const FieldShape& s, const Vec& k);

// h_theta = n_theta * e_{sigma^{-1} theta} - e_theta.
Vec hasse_weight(const FieldShape& s, const ThetaIndex& theta);

// Matrix with column t = h of the t-th index in canonical order.
Mat hasse_matrix(const FieldShape& s);

// n_theta * k_theta >= k_{sigma^{-1} theta} for every theta.
bool in_min_cone(const FieldShape& s, const Vec& k);

// (k, l) -> (k + h_{theta0} + 2 e_{theta0}, l - e_{theta0}),
// theta0 the top slot of tau.
WeightPair theta_weight_shift(const FieldShape& s, const TauIndex& tau,
                              const Vec& k, const Vec& l);

// k''_theta = n_{sigma theta} k_{sigma theta} inside the prime's block,
// identity outside; cross-checked against k + sum k_theta h_theta.
WeightPair frob_weight_shift(const FieldShape& s, int prime, const Vec& k,
                             const Vec& l);

// Inverse of the k-part of frob_weight_shift; NonDivisibleWeight when a
// slot that must be divisible by p is not.
Vec frob_weight_unshift(const FieldShape& s, int prime, const Vec& k);

PsiCharacter rho(const FieldShape& s, const Vec& k);
bool psi_trivial(const PsiCharacter& c);

// Index of the span of the h_theta in Z^Sigma, via Smith normal form;
// asserted equal to prod (p^f - 1).
int64_t lambda_index(const FieldShape& s);

// rho(k) trivial, cross-checked against Z-span membership.
bool lambda_contains(const FieldShape& s, const Vec& k);

// The unique rationals with k = sum s_theta h_theta; denominators divide
// lcm of the (p^f - 1).
std::vector<Rat> hbasis_decompose(const FieldShape& s, const Vec& k);

// m >= 0 integral with k' = k + sum m_theta h_theta, if one exists.
std::optional<Vec> leq_hasse(const FieldShape& s, const Vec& k,
                             const Vec& kp);

// All m >= 0 with 2 e_{theta0} - sum m_theta h_theta in the minimal cone,
// for the single-prime shape (e, f); theta0 the top slot at i = 0.
std::vector<Vec> ptwt0_feasible(int64_t p, int e, int f);

}  // namespace hmf::weights

#endif
