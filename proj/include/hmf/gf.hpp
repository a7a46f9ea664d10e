#ifndef HMF_GF_HPP
#define HMF_GF_HPP

#include <cstdint>
#include <memory>
#include <vector>

#include "hmf/errors.hpp"

namespace hmf::gf {

// F_{p^k} = F_p[x]/(modulus), modulus monic of degree k, coefficients
// stored low-to-high.  Irreducibility is verified at construction by
// exhaustive factor search (hence the k <= 8 cap).
class Context : public std::enable_shared_from_this<Context> {
public:
  static std::shared_ptr<const Context> create(int64_t p, int degree,
                                               std::vector<int64_t> modulus);

  int64_t p() const { return p_; }
  int degree() const { return degree_; }
  const std::vector<int64_t>& modulus() const { return modulus_; }

private:
  Context(int64_t p, int degree, std::vector<int64_t> modulus);

  int64_t p_;
  int degree_;
  std::vector<int64_t> modulus_;
};

using ContextPtr = std::shared_ptr<const Context>;

class Element {
public:
  Element() = default;
  // Coefficients are reduced mod p and padded/validated to length k.
  Element(ContextPtr ctx, std::vector<int64_t> coeffs);

  static Element zero(ContextPtr ctx);
  static Element one(ContextPtr ctx);
  static Element from_int(ContextPtr ctx, int64_t n);
  // The residue class of x (the generator adjoined by the modulus).
  static Element gen(ContextPtr ctx);

  const ContextPtr& context() const { return ctx_; }
  const std::vector<int64_t>& coeffs() const { return coeffs_; }
  bool is_zero() const;

  Element operator+(const Element& other) const;
  Element operator-(const Element& other) const;
  Element operator-() const;
  Element operator*(const Element& other) const;
  Element inv() const;
  Element pow(int64_t e) const;
  // a^(p^i)
  Element frobenius(int64_t i) const;

  bool operator==(const Element& other) const;
  bool operator!=(const Element& other) const { return !(*this == other); }

  std::string to_string() const;

private:
  void check_same(const Element& other) const;

  ContextPtr ctx_;
  std::vector<int64_t> coeffs_;
};

// All p^k elements, in lexicographic coefficient order.
std::vector<Element> all_elements(const ContextPtr& ctx);

}  // namespace hmf::gf

#endif
