#ifndef HMF_SHAPE_HPP
#define HMF_SHAPE_HPP

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "hmf/errors.hpp"

namespace hmf::shape {

struct PrimeShape {
  std::string id;
  int e = 1;  // ramification index
  int f = 1;  // residue degree
};

// Index theta_{P,i,j}: i mod f_P, j in [1, e_P].
struct ThetaIndex {
  int prime = 0;  // position in FieldShape::primes
  int i = 0;
  int j = 1;

  bool operator==(const ThetaIndex&) const = default;
};

// Residue index tau_{P,i}.
struct TauIndex {
  int prime = 0;
  int i = 0;

  bool operator==(const TauIndex&) const = default;
};

// The splitting data of p: primes with (e, f), generating the embedding
// index set Sigma in the canonical order (prime as configured, then i
// ascending, then j ascending).
class FieldShape {
public:
  FieldShape(int64_t p, std::vector<PrimeShape> primes);

  int64_t p() const { return p_; }
  const std::vector<PrimeShape>& primes() const { return primes_; }
  const PrimeShape& prime(int idx) const { return primes_.at(idx); }
  int prime_count() const { return static_cast<int>(primes_.size()); }
  int prime_index(const std::string& id) const;

  // Total degree d = sum of e*f.
  int degree() const { return degree_; }

  const std::vector<ThetaIndex>& sigma() const { return sigma_; }
  // Position of theta in the canonical order.
  int position(const ThetaIndex& theta) const;
  ThetaIndex at(int pos) const { return sigma_.at(pos); }

  // The shift permutation: sigma increments (i, j) lexicographically
  // within a prime's block, sigma_inv decrements.
  ThetaIndex shift(const ThetaIndex& theta) const;
  ThetaIndex shift_inv(const ThetaIndex& theta) const;

  // n_theta: p for slot j = 1, else 1.
  int64_t multiplier(const ThetaIndex& theta) const;

  // theta_{P,i,e_P}, the top-slot index attached to tau_{P,i}.
  ThetaIndex top_theta(const TauIndex& tau) const;

  std::vector<TauIndex> residue_indices() const;

private:
  void check(const ThetaIndex& theta) const;

  int64_t p_;
  std::vector<PrimeShape> primes_;
  int degree_ = 0;
  std::vector<ThetaIndex> sigma_;
  std::vector<int> block_start_;  // offset of each prime's block
};

using ShapePtr = std::shared_ptr<const FieldShape>;

}  // namespace hmf::shape

#endif
