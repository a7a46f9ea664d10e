#include "hmf/gf.hpp"

#include <algorithm>
#include <sstream>

namespace hmf::gf {

namespace {

int64_t mod(int64_t a, int64_t p) {
  int64_t r = a % p;
  return r < 0 ? r + p : r;
}

bool is_prime(int64_t n) {
  if (n < 2) return false;
  for (int64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

// Polynomial arithmetic over F_p, dense low-to-high, no leading zeros.
using Poly = std::vector<int64_t>;

void trim(Poly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

Poly poly_mul(const Poly& a, const Poly& b, int64_t p) {
  if (a.empty() || b.empty()) return {};
  Poly c(a.size() + b.size() - 1, 0);
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < b.size(); ++j)
      c[i + j] = mod(c[i + j] + a[i] * b[j], p);
  trim(c);
  return c;
}

// Remainder of a by monic m.
Poly poly_rem(Poly a, const Poly& m, int64_t p) {
  trim(a);
  while (a.size() >= m.size()) {
    int64_t lead = a.back();
    size_t shift = a.size() - m.size();
    for (size_t i = 0; i < m.size(); ++i)
      a[shift + i] = mod(a[shift + i] - lead * m[i], p);
    trim(a);
  }
  return a;
}

// Exhaustive irreducibility test: no monic factor of degree 1..k/2.
bool is_irreducible(const Poly& m, int64_t p) {
  int k = static_cast<int>(m.size()) - 1;
  for (int d = 1; 2 * d <= k; ++d) {
    // enumerate all monic polys of degree d
    int64_t count = 1;
    for (int i = 0; i < d; ++i) count *= p;
    for (int64_t idx = 0; idx < count; ++idx) {
      Poly f(d + 1, 0);
      int64_t t = idx;
      for (int i = 0; i < d; ++i) {
        f[i] = t % p;
        t /= p;
      }
      f[d] = 1;
      if (poly_rem(m, f, p).empty()) return false;
    }
  }
  return true;
}

}  // namespace

Context::Context(int64_t p, int degree, std::vector<int64_t> modulus)
    : p_(p), degree_(degree), modulus_(std::move(modulus)) {}

std::shared_ptr<const Context> Context::create(int64_t p, int degree,
                                               std::vector<int64_t> modulus) {
  if (!is_prime(p)) fail(ErrorCode::ConfigInvalid, "characteristic is not prime");
  if (degree < 1 || degree > 8)
    fail(ErrorCode::ConfigInvalid, "field degree must be in [1, 8]");
  if (static_cast<int>(modulus.size()) != degree + 1)
    fail(ErrorCode::ConfigInvalid, "modulus must have degree+1 coefficients");
  for (auto& c : modulus) c = mod(c, p);
  if (modulus.back() != 1)
    fail(ErrorCode::ConfigInvalid, "modulus must be monic");
  if (!is_irreducible(modulus, p))
    fail(ErrorCode::ConfigInvalid, "modulus is reducible over F_p");
  return std::shared_ptr<const Context>(new Context(p, degree, std::move(modulus)));
}

Element::Element(ContextPtr ctx, std::vector<int64_t> coeffs)
    : ctx_(std::move(ctx)) {
  if (!ctx_) fail(ErrorCode::ConfigInvalid, "null field context");
  const int64_t p = ctx_->p();
  if (static_cast<int>(coeffs.size()) > ctx_->degree())
    coeffs = poly_rem(std::move(coeffs), ctx_->modulus(), p);
  coeffs.resize(ctx_->degree(), 0);
  for (auto& c : coeffs) c = mod(c, p);
  coeffs_ = std::move(coeffs);
}

Element Element::zero(ContextPtr ctx) { return Element(std::move(ctx), {}); }

Element Element::one(ContextPtr ctx) { return Element(std::move(ctx), {1}); }

Element Element::from_int(ContextPtr ctx, int64_t n) {
  return Element(std::move(ctx), {n});
}

Element Element::gen(ContextPtr ctx) {
  if (ctx->degree() < 2) return Element(std::move(ctx), {0});
  return Element(std::move(ctx), {0, 1});
}

bool Element::is_zero() const {
  return std::all_of(coeffs_.begin(), coeffs_.end(),
                     [](int64_t c) { return c == 0; });
}

void Element::check_same(const Element& other) const {
  if (ctx_.get() != other.ctx_.get())
    fail(ErrorCode::ContextMismatch, "elements from different field contexts");
}

Element Element::operator+(const Element& other) const {
  check_same(other);
  std::vector<int64_t> c(coeffs_);
  for (size_t i = 0; i < c.size(); ++i)
    c[i] = mod(c[i] + other.coeffs_[i], ctx_->p());
  return Element(ctx_, std::move(c));
}

Element Element::operator-(const Element& other) const {
  check_same(other);
  std::vector<int64_t> c(coeffs_);
  for (size_t i = 0; i < c.size(); ++i)
    c[i] = mod(c[i] - other.coeffs_[i], ctx_->p());
  return Element(ctx_, std::move(c));
}

Element Element::operator-() const {
  std::vector<int64_t> c(coeffs_);
  for (auto& x : c) x = mod(-x, ctx_->p());
  return Element(ctx_, std::move(c));
}

Element Element::operator*(const Element& other) const {
  check_same(other);
  Poly a(coeffs_), b(other.coeffs_);
  trim(a);
  trim(b);
  Poly c = poly_rem(poly_mul(a, b, ctx_->p()), ctx_->modulus(), ctx_->p());
  return Element(ctx_, std::move(c));
}

Element Element::pow(int64_t e) const {
  if (e < 0) return inv().pow(-e);
  Element acc = Element::one(ctx_);
  Element base = *this;
  while (e > 0) {
    if (e & 1) acc = acc * base;
    base = base * base;
    e >>= 1;
  }
  return acc;
}

Element Element::inv() const {
  if (is_zero()) fail(ErrorCode::DivisionByZero, "inversion of zero");
  // order of F_{p^k}^* is p^k - 1
  int64_t order = 1;
  for (int i = 0; i < ctx_->degree(); ++i) order *= ctx_->p();
  return pow(order - 2);
}

Element Element::frobenius(int64_t i) const {
  if (i < 0) fail(ErrorCode::ConfigInvalid, "negative frobenius power");
  Element r = *this;
  i %= ctx_->degree();
  for (int64_t n = 0; n < i; ++n) r = r.pow(ctx_->p());
  return r;
}

bool Element::operator==(const Element& other) const {
  check_same(other);
  return coeffs_ == other.coeffs_;
}

std::string Element::to_string() const {
  std::ostringstream os;
  os << "[";
  for (size_t i = 0; i < coeffs_.size(); ++i)
    os << (i ? "," : "") << coeffs_[i];
  os << "]";
  return os.str();
}

std::vector<Element> all_elements(const ContextPtr& ctx) {
  int64_t count = 1;
  for (int i = 0; i < ctx->degree(); ++i) count *= ctx->p();
  std::vector<Element> out;
  out.reserve(count);
  for (int64_t idx = 0; idx < count; ++idx) {
    std::vector<int64_t> c(ctx->degree());
    int64_t t = idx;
    for (int i = 0; i < ctx->degree(); ++i) {
      c[i] = t % ctx->p();
      t /= ctx->p();
    }
    out.push_back(Element(ctx, std::move(c)));
  }
  return out;
}

}  // namespace hmf::gf
