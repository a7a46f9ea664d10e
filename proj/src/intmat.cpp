#include "hmf/intmat.hpp"

#include <algorithm>
#include <cstdlib>
#include <numeric>

#include "hmf/errors.hpp"

namespace hmf::intmat {

Mat identity(int n) {
  Mat m(n, Vec(n, 0));
  for (int i = 0; i < n; ++i) m[i][i] = 1;
  return m;
}

Mat mat_mul(const Mat& a, const Mat& b) {
  int n = static_cast<int>(a.size());
  int k = static_cast<int>(b.size());
  int m = static_cast<int>(b[0].size());
  Mat c(n, Vec(m, 0));
  for (int i = 0; i < n; ++i)
    for (int t = 0; t < k; ++t)
      if (a[i][t] != 0)
        for (int j = 0; j < m; ++j) c[i][j] += a[i][t] * b[t][j];
  return c;
}

Vec mat_vec(const Mat& a, const Vec& v) {
  int n = static_cast<int>(a.size());
  int m = static_cast<int>(v.size());
  Vec out(n, 0);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < m; ++j) out[i] += a[i][j] * v[j];
  return out;
}

Mat mat_pow(const Mat& a, int e) {
  Mat acc = identity(static_cast<int>(a.size()));
  Mat base = a;
  while (e > 0) {
    if (e & 1) acc = mat_mul(acc, base);
    base = mat_mul(base, base);
    e >>= 1;
  }
  return acc;
}

int64_t det(Mat a) {
  int n = static_cast<int>(a.size());
  // fraction-free Bareiss
  int64_t prev = 1;
  int64_t sign = 1;
  for (int t = 0; t < n - 1; ++t) {
    if (a[t][t] == 0) {
      int s = -1;
      for (int r = t + 1; r < n; ++r)
        if (a[r][t] != 0) {
          s = r;
          break;
        }
      if (s < 0) return 0;
      std::swap(a[t], a[s]);
      sign = -sign;
    }
    for (int r = t + 1; r < n; ++r)
      for (int c = t + 1; c < n; ++c)
        a[r][c] = (a[r][c] * a[t][t] - a[r][t] * a[t][c]) / prev;
    prev = a[t][t];
  }
  return sign * a[n - 1][n - 1];
}

std::vector<int64_t> smith_diagonal(Mat a) {
  int n = static_cast<int>(a.size());
  int m = n ? static_cast<int>(a[0].size()) : 0;
  std::vector<int64_t> diag;
  int t = 0;
  while (t < n && t < m) {
    // locate a nonzero entry of minimal absolute value in the submatrix
    int pr = -1, pc = -1;
    for (int r = t; r < n; ++r)
      for (int c = t; c < m; ++c)
        if (a[r][c] != 0 &&
            (pr < 0 || std::llabs(a[r][c]) < std::llabs(a[pr][pc]))) {
          pr = r;
          pc = c;
        }
    if (pr < 0) break;
    std::swap(a[t], a[pr]);
    for (int r = t; r < n; ++r) std::swap(a[r][t], a[r][pc]);

    bool clean = true;
    for (int r = t + 1; r < n; ++r)
      if (a[r][t] % a[t][t] != 0) clean = false;
    for (int c = t + 1; c < m; ++c)
      if (a[t][c] % a[t][t] != 0) clean = false;
    if (!clean) {
      // reduce everything in the pivot row/column and retry
      for (int r = t + 1; r < n; ++r) {
        int64_t q = a[r][t] / a[t][t];
        for (int c = t; c < m; ++c) a[r][c] -= q * a[t][c];
      }
      for (int c = t + 1; c < m; ++c) {
        int64_t q = a[t][c] / a[t][t];
        for (int r = t; r < n; ++r) a[r][c] -= q * a[r][t];
      }
      continue;
    }
    for (int r = t + 1; r < n; ++r) {
      int64_t q = a[r][t] / a[t][t];
      for (int c = t; c < m; ++c) a[r][c] -= q * a[t][c];
    }
    for (int c = t + 1; c < m; ++c) {
      int64_t q = a[t][c] / a[t][t];
      for (int r = t; r < n; ++r) a[r][c] -= q * a[r][t];
    }
    diag.push_back(std::llabs(a[t][t]));
    ++t;
  }
  // enforce the divisibility chain d1 | d2 | ...
  for (size_t i = 0; i + 1 < diag.size(); ++i)
    for (size_t j = i + 1; j < diag.size(); ++j) {
      int64_t x = diag[i], y = diag[j];
      int64_t g = std::gcd(x, y);
      diag[i] = g;
      diag[j] = x / g * y;
    }
  return diag;
}

std::optional<std::vector<Rat>> solve_rational(const Mat& a, const Vec& b) {
  int n = static_cast<int>(a.size());
  std::vector<std::vector<Rat>> aug(n, std::vector<Rat>(n + 1));
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) aug[i][j] = Rat(a[i][j]);
    aug[i][n] = Rat(b[i]);
  }
  for (int t = 0; t < n; ++t) {
    int pr = -1;
    for (int r = t; r < n; ++r)
      if (aug[r][t] != Rat(0)) {
        pr = r;
        break;
      }
    if (pr < 0) return std::nullopt;
    std::swap(aug[t], aug[pr]);
    Rat inv = Rat(1) / aug[t][t];
    for (int c = t; c <= n; ++c) aug[t][c] *= inv;
    for (int r = 0; r < n; ++r) {
      if (r == t || aug[r][t] == Rat(0)) continue;
      Rat f = aug[r][t];
      for (int c = t; c <= n; ++c) aug[r][c] -= f * aug[t][c];
    }
  }
  std::vector<Rat> x(n);
  for (int i = 0; i < n; ++i) x[i] = aug[i][n];
  return x;
}

std::optional<Vec> solve_integer(const Mat& a, const Vec& b) {
  auto x = solve_rational(a, b);
  if (!x) return std::nullopt;
  Vec out;
  out.reserve(x->size());
  for (const auto& r : *x) {
    if (r.denominator() != 1) return std::nullopt;
    out.push_back(r.numerator());
  }
  return out;
}

Mat hermite_normal_form(Mat a) {
  int n = static_cast<int>(a.size());
  int m = n ? static_cast<int>(a[0].size()) : 0;
  int col = 0;
  for (int row = 0; row < n && col < m; ++row) {
    // eliminate within row `row` across columns >= col by gcd steps
    while (true) {
      int nz = -1;
      for (int c = col + 1; c < m; ++c)
        if (a[row][c] != 0) {
          nz = c;
          break;
        }
      if (a[row][col] == 0) {
        if (nz < 0) break;
        for (int r = 0; r < n; ++r) std::swap(a[r][col], a[r][nz]);
        continue;
      }
      if (nz < 0) break;
      int64_t q = a[row][nz] / a[row][col];
      for (int r = 0; r < n; ++r) a[r][nz] -= q * a[r][col];
      if (a[row][nz] != 0) {
        for (int r = 0; r < n; ++r) std::swap(a[r][col], a[r][nz]);
      }
    }
    if (a[row][col] == 0) continue;  // rank deficiency in this row
    if (a[row][col] < 0)
      for (int r = 0; r < n; ++r) a[r][col] = -a[r][col];
    // reduce earlier columns against the pivot
    for (int c = 0; c < col; ++c) {
      int64_t q = a[row][c] / a[row][col];
      if (a[row][c] % a[row][col] < 0) --q;
      if (q != 0)
        for (int r = 0; r < n; ++r) a[r][c] -= q * a[r][col];
    }
    ++col;
  }
  return a;
}

bool in_column_span(const Mat& a, const Vec& b) {
  Mat h = hermite_normal_form(a);
  int n = static_cast<int>(h.size());
  Vec r = b;
  int col = 0;
  int m = n ? static_cast<int>(h[0].size()) : 0;
  for (int row = 0; row < n; ++row) {
    if (col < m && h[row][col] != 0) {
      if (r[row] % h[row][col] != 0) return false;
      int64_t q = r[row] / h[row][col];
      for (int i = 0; i < n; ++i) r[i] -= q * h[i][col];
      ++col;
    } else if (r[row] != 0) {
      return false;
    }
  }
  for (int i = 0; i < n; ++i)
    if (r[i] != 0) return false;
  return true;
}

std::vector<Vec> coset_representatives(const Mat& a) {
  Mat h = hermite_normal_form(a);
  int n = static_cast<int>(h.size());
  for (int i = 0; i < n; ++i)
    if (h[i][i] == 0)
      fail(ErrorCode::ModelInconsistent, "singular lattice matrix");
  std::vector<Vec> reps{Vec(n, 0)};
  for (int i = 0; i < n; ++i) {
    std::vector<Vec> next;
    for (const auto& v : reps)
      for (int64_t t = 0; t < h[i][i]; ++t) {
        Vec w = v;
        w[i] = t;
        next.push_back(std::move(w));
      }
    reps = std::move(next);
  }
  return reps;
}

}  // namespace hmf::intmat
