#ifndef HMF_INTMAT_HPP
#define HMF_INTMAT_HPP

#include <boost/rational.hpp>
#include <cstdint>
#include <optional>
#include <vector>

namespace hmf::intmat {

using Rat = boost::rational<int64_t>;
using Mat = std::vector<std::vector<int64_t>>;
using Vec = std::vector<int64_t>;

Mat identity(int n);
Mat mat_mul(const Mat& a, const Mat& b);
Vec mat_vec(const Mat& a, const Vec& v);
Mat mat_pow(const Mat& a, int e);
int64_t det(Mat a);

// Diagonal of the Smith normal form (absolute values, d1 | d2 | ...).
std::vector<int64_t> smith_diagonal(Mat a);

// Solve a*x = b exactly over Q; nullopt if singular/inconsistent.
std::optional<std::vector<Rat>> solve_rational(const Mat& a, const Vec& b);

// Integer solution of a*x = b (a square, nonsingular); nullopt if the
// rational solution is non-integral.
std::optional<Vec> solve_integer(const Mat& a, const Vec& b);

// Column-style Hermite normal form of a (full column rank assumed for
// membership use); returns H with the same column span over Z.
Mat hermite_normal_form(Mat a);

// Is b in the Z-span of the columns of a?  Decided by reduction against
// the Hermite normal form.
bool in_column_span(const Mat& a, const Vec& b);

// Coset representatives of Z^n / a*Z^n for nonsingular a (via HNF).
std::vector<Vec> coset_representatives(const Mat& a);

}  // namespace hmf::intmat

#endif
