#include "hmf/config.hpp"

#include <fstream>
#include <sstream>

#include "hmf/errors.hpp"

namespace hmf::config {

int64_t parse_int(const json& j) {
  if (j.is_number_integer()) return j.get<int64_t>();
  if (j.is_string()) {
    const auto& s = j.get<std::string>();
    try {
      size_t pos = 0;
      int64_t v = std::stoll(s, &pos);
      if (pos == s.size()) return v;
    } catch (...) {
    }
  }
  fail(ErrorCode::ConfigInvalid, "expected an integer: " + j.dump());
}

intmat::Rat parse_rat(const json& j) {
  if (j.is_number_integer()) return intmat::Rat(j.get<int64_t>());
  if (j.is_string()) {
    const auto& s = j.get<std::string>();
    auto slash = s.find('/');
    try {
      if (slash == std::string::npos) return intmat::Rat(std::stoll(s));
      int64_t num = std::stoll(s.substr(0, slash));
      int64_t den = std::stoll(s.substr(slash + 1));
      if (den != 0) return intmat::Rat(num, den);
    } catch (...) {
    }
  }
  fail(ErrorCode::ConfigInvalid, "expected a rational: " + j.dump());
}

std::string rat_to_string(const intmat::Rat& r) {
  std::ostringstream os;
  os << r.numerator();
  if (r.denominator() != 1) os << "/" << r.denominator();
  return os.str();
}

intmat::Vec parse_vec(const json& j) {
  if (!j.is_array()) fail(ErrorCode::ConfigInvalid, "expected an array");
  intmat::Vec v;
  for (const auto& x : j) v.push_back(parse_int(x));
  return v;
}

json vec_to_json(const intmat::Vec& v) {
  json j = json::array();
  for (int64_t x : v) j.push_back(std::to_string(x));
  return j;
}

namespace {

intmat::Mat parse_mat(const json& j) {
  if (!j.is_array()) fail(ErrorCode::ConfigInvalid, "expected a matrix");
  intmat::Mat m;
  for (const auto& row : j) m.push_back(parse_vec(row));
  return m;
}

const json& field_of(const json& j, const char* name) {
  auto it = j.find(name);
  if (it == j.end())
    fail(ErrorCode::ConfigInvalid,
         std::string("missing config field: ") + name);
  return *it;
}

}  // namespace

shape::ShapePtr load_shape(const json& j) {
  int64_t p = parse_int(field_of(j, "p"));
  std::vector<shape::PrimeShape> primes;
  for (const auto& pj : field_of(j, "primes")) {
    shape::PrimeShape ps;
    ps.id = field_of(pj, "id").get<std::string>();
    ps.e = static_cast<int>(parse_int(field_of(pj, "e")));
    ps.f = static_cast<int>(parse_int(field_of(pj, "f")));
    primes.push_back(std::move(ps));
  }
  return std::make_shared<const shape::FieldShape>(p, std::move(primes));
}

gf::ContextPtr load_field(const json& j) {
  return gf::Context::create(
      parse_int(field_of(j, "p")),
      static_cast<int>(parse_int(field_of(j, "degree"))),
      parse_vec(field_of(j, "modulus")));
}

namespace {

// matrix of multiplication by a + b*omega on the basis (1, omega)
intmat::Mat quad_mult(int64_t a, int64_t b, int64_t c, int64_t t) {
  return {{a, b * c}, {b, a + b * t}};
}

expo::ModelPtr load_quadratic(const json& j, shape::ShapePtr s,
                              gf::ContextPtr field) {
  int64_t D = parse_int(field_of(j, "D"));
  int64_t t = (D % 4 == 1) ? 1 : 0;
  int64_t c = (D % 4 == 1) ? (D - 1) / 4 : D;
  const auto& pj = field_of(j, "primes");
  std::vector<expo::PrimeModel> primes;
  for (const auto& P : s->primes()) {
    auto it = pj.find(P.id);
    if (it == pj.end())
      fail(ErrorCode::ConfigInvalid, "model missing prime " + P.id);
    if (static_cast<int>(parse_int(field_of(*it, "e"))) != P.e ||
        static_cast<int>(parse_int(field_of(*it, "f"))) != P.f)
      fail(ErrorCode::ConfigInvalid,
           "model (e, f) disagrees with shape for prime " + P.id);
    auto pi = parse_vec(field_of(*it, "pi"));
    if (pi.size() != 2)
      fail(ErrorCode::ConfigInvalid, "pi needs two coordinates");
    expo::PrimeModel pm;
    pm.pi = quad_mult(pi[0], pi[1], c, t);
    pm.residue = {gf::Element::one(field),
                  gf::Element(field,
                              parse_vec(field_of(*it, "residue_gen_image")))};
    primes.push_back(std::move(pm));
  }
  return expo::ExponentModel::quadratic(std::move(s), std::move(field), D,
                                        std::move(primes));
}

expo::ModelPtr load_synthetic(const json& j, shape::ShapePtr s,
                              gf::ContextPtr field) {
  int rank = static_cast<int>(parse_int(field_of(j, "rank")));
  const auto& pj = field_of(j, "primes");
  std::vector<expo::PrimeModel> primes;
  for (const auto& P : s->primes()) {
    auto it = pj.find(P.id);
    if (it == pj.end())
      fail(ErrorCode::ConfigInvalid, "model missing prime " + P.id);
    expo::PrimeModel pm;
    pm.pi = parse_mat(field_of(*it, "pi"));
    for (const auto& r : field_of(*it, "residue"))
      pm.residue.push_back(gf::Element(field, parse_vec(r)));
    primes.push_back(std::move(pm));
  }
  intmat::Vec trace;
  if (j.contains("trace")) trace = parse_vec(j.at("trace"));
  return expo::ExponentModel::synthetic(
      std::move(s), std::move(field), rank, std::move(primes),
      parse_mat(field_of(j, "positivity")), std::move(trace));
}

}  // namespace

expo::ModelPtr load_model(const json& j, shape::ShapePtr s,
                          gf::ContextPtr field) {
  const auto& kind = field_of(j, "kind");
  if (kind == "quadratic") return load_quadratic(j, std::move(s), std::move(field));
  if (kind == "synthetic") return load_synthetic(j, std::move(s), std::move(field));
  fail(ErrorCode::ConfigInvalid, "unknown model kind: " + kind.dump());
}

LoadedModel load_combined(const json& j) {
  LoadedModel lm;
  lm.shape = load_shape(field_of(j, "shape"));
  lm.field = load_field(field_of(j, "field"));
  if (lm.field->p() != lm.shape->p())
    fail(ErrorCode::ConfigInvalid, "field and shape characteristics differ");
  lm.model = load_model(field_of(j, "model"), lm.shape, lm.field);
  return lm;
}

qexp::QExpansion load_qexp(const json& j, const LoadedModel& lm) {
  auto k = parse_vec(field_of(j, "k"));
  auto l = parse_vec(field_of(j, "l"));
  auto bound = parse_rat(field_of(j, "bound"));
  gf::Element constant(lm.field, parse_vec(field_of(j, "constant")));
  std::map<intmat::Vec, gf::Element> terms;
  for (const auto& t : field_of(j, "terms")) {
    auto m = parse_vec(field_of(t, "m"));
    gf::Element c(lm.field, parse_vec(field_of(t, "c")));
    if (!terms.emplace(std::move(m), std::move(c)).second)
      fail(ErrorCode::ConfigInvalid, "duplicate exponent in terms");
  }
  return qexp::QExpansion(lm.model, std::move(k), std::move(l), bound,
                          std::move(constant), std::move(terms));
}

json save_qexp(const qexp::QExpansion& f) {
  json j;
  j["k"] = vec_to_json(f.k());
  j["l"] = vec_to_json(f.l());
  j["bound"] = rat_to_string(f.bound());
  j["constant"] = vec_to_json(f.constant().coeffs());
  json terms = json::array();
  for (const auto& [m, c] : f.terms()) {
    json t;
    t["m"] = vec_to_json(m);
    t["c"] = vec_to_json(c.coeffs());
    terms.push_back(std::move(t));
  }
  j["terms"] = std::move(terms);
  return j;
}

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorCode::ConfigInvalid, "cannot open file: " + path);
  json j;
  try {
    in >> j;
  } catch (const std::exception& e) {
    fail(ErrorCode::ConfigInvalid,
         "invalid JSON in " + path + ": " + e.what());
  }
  return j;
}

void write_json_file(const std::string& path, const json& j) {
  std::ofstream out(path);
  if (!out) fail(ErrorCode::ConfigInvalid, "cannot write file: " + path);
  out << j.dump(2) << "\n";
}

}  // namespace hmf::config
