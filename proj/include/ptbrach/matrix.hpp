#pragma once

// Dense complex vector/matrix algebra for small fixed dimensions (2 and 4,
// with a generic small-n path). Values are immutable after construction and
// every operation is a pure function.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <initializer_list>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace ptbrach {

using cplx = std::complex<double>;

// Global default comparison tolerance (max of component-wise absolute
// differences), used everywhere unless a caller overrides it.
inline constexpr double kDefaultTol = 1e-10;

inline bool finite(cplx z) {
  return std::isfinite(z.real()) && std::isfinite(z.imag());
}

class CVector {
 public:
  CVector() = default;

  explicit CVector(std::vector<cplx> entries) : data_(std::move(entries)) {
    if (data_.empty()) throw std::invalid_argument("CVector: empty");
    for (cplx z : data_)
      if (!finite(z)) throw std::invalid_argument("CVector: non-finite entry");
  }

  CVector(std::initializer_list<cplx> entries)
      : CVector(std::vector<cplx>(entries)) {}

  static CVector zero(std::size_t dim) {
    return CVector(std::vector<cplx>(dim, cplx(0.0)));
  }

  static CVector basis(std::size_t dim, std::size_t k) {
    std::vector<cplx> e(dim, cplx(0.0));
    e.at(k) = 1.0;
    return CVector(std::move(e));
  }

  std::size_t dim() const { return data_.size(); }
  cplx operator[](std::size_t i) const { return data_[i]; }
  const std::vector<cplx>& data() const { return data_; }

 private:
  std::vector<cplx> data_;
};

class CMatrix {
 public:
  CMatrix() = default;

  CMatrix(std::size_t rows, std::size_t cols, std::vector<cplx> entries)
      : rows_(rows), cols_(cols), data_(std::move(entries)) {
    if (rows_ == 0 || cols_ == 0)
      throw std::invalid_argument("CMatrix: zero dimension");
    if (data_.size() != rows_ * cols_)
      throw std::invalid_argument("CMatrix: entry count does not match shape");
    for (cplx z : data_)
      if (!finite(z)) throw std::invalid_argument("CMatrix: non-finite entry");
  }

  // Row-major brace construction: CMatrix{{a, b}, {c, d}}.
  CMatrix(std::initializer_list<std::initializer_list<cplx>> rows) {
    rows_ = rows.size();
    for (const auto& r : rows) {
      if (cols_ == 0) cols_ = r.size();
      if (r.size() != cols_)
        throw std::invalid_argument("CMatrix: ragged row list");
      data_.insert(data_.end(), r.begin(), r.end());
    }
    if (rows_ == 0 || cols_ == 0)
      throw std::invalid_argument("CMatrix: zero dimension");
    for (cplx z : data_)
      if (!finite(z)) throw std::invalid_argument("CMatrix: non-finite entry");
  }

  static CMatrix zero(std::size_t rows, std::size_t cols) {
    return CMatrix(rows, cols, std::vector<cplx>(rows * cols, cplx(0.0)));
  }

  static CMatrix identity(std::size_t n) {
    std::vector<cplx> e(n * n, cplx(0.0));
    for (std::size_t i = 0; i < n; ++i) e[i * n + i] = 1.0;
    return CMatrix(n, n, std::move(e));
  }

  static CMatrix diagonal(const std::vector<cplx>& d) {
    const std::size_t n = d.size();
    std::vector<cplx> e(n * n, cplx(0.0));
    for (std::size_t i = 0; i < n; ++i) e[i * n + i] = d[i];
    return CMatrix(n, n, std::move(e));
  }

  static CMatrix from_columns(const std::vector<CVector>& cols) {
    if (cols.empty()) throw std::invalid_argument("from_columns: empty");
    const std::size_t r = cols.front().dim(), c = cols.size();
    std::vector<cplx> e(r * c);
    for (std::size_t j = 0; j < c; ++j) {
      if (cols[j].dim() != r)
        throw std::invalid_argument("from_columns: mismatched column dims");
      for (std::size_t i = 0; i < r; ++i) e[i * c + j] = cols[j][i];
    }
    return CMatrix(r, c, std::move(e));
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool square() const { return rows_ == cols_; }
  cplx operator()(std::size_t r, std::size_t c) const {
    return data_[r * cols_ + c];
  }
  const std::vector<cplx>& data() const { return data_; }

  CVector column(std::size_t j) const {
    std::vector<cplx> v(rows_);
    for (std::size_t i = 0; i < rows_; ++i) v[i] = data_[i * cols_ + j];
    return CVector(std::move(v));
  }

  CVector row(std::size_t i) const {
    std::vector<cplx> v(cols_);
    for (std::size_t j = 0; j < cols_; ++j) v[j] = data_[i * cols_ + j];
    return CVector(std::move(v));
  }

 private:
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<cplx> data_;
};

// ---------------------------------------------------------------------------
// arithmetic

inline CMatrix operator+(const CMatrix& a, const CMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw std::invalid_argument("matrix +: shape mismatch");
  std::vector<cplx> e(a.data().size());
  for (std::size_t i = 0; i < e.size(); ++i) e[i] = a.data()[i] + b.data()[i];
  return CMatrix(a.rows(), a.cols(), std::move(e));
}

inline CMatrix operator-(const CMatrix& a, const CMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw std::invalid_argument("matrix -: shape mismatch");
  std::vector<cplx> e(a.data().size());
  for (std::size_t i = 0; i < e.size(); ++i) e[i] = a.data()[i] - b.data()[i];
  return CMatrix(a.rows(), a.cols(), std::move(e));
}

inline CMatrix operator*(cplx s, const CMatrix& a) {
  std::vector<cplx> e(a.data().size());
  for (std::size_t i = 0; i < e.size(); ++i) e[i] = s * a.data()[i];
  return CMatrix(a.rows(), a.cols(), std::move(e));
}

inline CMatrix operator*(const CMatrix& a, cplx s) { return s * a; }
inline CMatrix operator-(const CMatrix& a) { return cplx(-1.0) * a; }

inline CMatrix operator*(const CMatrix& a, const CMatrix& b) {
  if (a.cols() != b.rows())
    throw std::invalid_argument("matrix *: inner dimension mismatch");
  std::vector<cplx> e(a.rows() * b.cols(), cplx(0.0));
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const cplx aik = a(i, k);
      for (std::size_t j = 0; j < b.cols(); ++j)
        e[i * b.cols() + j] += aik * b(k, j);
    }
  return CMatrix(a.rows(), b.cols(), std::move(e));
}

inline CVector operator*(const CMatrix& a, const CVector& v) {
  if (a.cols() != v.dim())
    throw std::invalid_argument("matrix * vector: dimension mismatch");
  std::vector<cplx> e(a.rows(), cplx(0.0));
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) e[i] += a(i, j) * v[j];
  return CVector(std::move(e));
}

inline CVector operator+(const CVector& u, const CVector& v) {
  if (u.dim() != v.dim()) throw std::invalid_argument("vector +: dim mismatch");
  std::vector<cplx> e(u.dim());
  for (std::size_t i = 0; i < e.size(); ++i) e[i] = u[i] + v[i];
  return CVector(std::move(e));
}

inline CVector operator-(const CVector& u, const CVector& v) {
  if (u.dim() != v.dim()) throw std::invalid_argument("vector -: dim mismatch");
  std::vector<cplx> e(u.dim());
  for (std::size_t i = 0; i < e.size(); ++i) e[i] = u[i] - v[i];
  return CVector(std::move(e));
}

inline CVector operator*(cplx s, const CVector& v) {
  std::vector<cplx> e(v.dim());
  for (std::size_t i = 0; i < e.size(); ++i) e[i] = s * v[i];
  return CVector(std::move(e));
}

inline CMatrix adjoint(const CMatrix& a) {
  std::vector<cplx> e(a.rows() * a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      e[j * a.rows() + i] = std::conj(a(i, j));
  return CMatrix(a.cols(), a.rows(), std::move(e));
}

inline CMatrix transpose(const CMatrix& a) {
  std::vector<cplx> e(a.rows() * a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) e[j * a.rows() + i] = a(i, j);
  return CMatrix(a.cols(), a.rows(), std::move(e));
}

inline CMatrix conjugate(const CMatrix& a) {
  std::vector<cplx> e(a.data().size());
  for (std::size_t i = 0; i < e.size(); ++i) e[i] = std::conj(a.data()[i]);
  return CMatrix(a.rows(), a.cols(), std::move(e));
}

inline cplx trace(const CMatrix& a) {
  if (!a.square()) throw std::invalid_argument("trace: non-square");
  cplx t = 0.0;
  for (std::size_t i = 0; i < a.rows(); ++i) t += a(i, i);
  return t;
}

inline cplx det2(const CMatrix& a) {
  if (a.rows() != 2 || a.cols() != 2)
    throw std::invalid_argument("det2: matrix is not 2x2");
  return a(0, 0) * a(1, 1) - a(0, 1) * a(1, 0);
}

// Standard inner product, conjugate-linear in the first argument.
inline cplx dot(const CVector& u, const CVector& v) {
  if (u.dim() != v.dim()) throw std::invalid_argument("dot: dim mismatch");
  cplx s = 0.0;
  for (std::size_t i = 0; i < u.dim(); ++i) s += std::conj(u[i]) * v[i];
  return s;
}

inline double norm(const CVector& v) {
  double s = 0.0;
  for (std::size_t i = 0; i < v.dim(); ++i) s += std::norm(v[i]);
  return std::sqrt(s);
}

inline CVector normalized(const CVector& v) {
  const double n = norm(v);
  if (n == 0.0) throw std::invalid_argument("normalized: zero vector");
  return cplx(1.0 / n) * v;
}

// u v^dagger
inline CMatrix outer(const CVector& u, const CVector& v) {
  std::vector<cplx> e(u.dim() * v.dim());
  for (std::size_t i = 0; i < u.dim(); ++i)
    for (std::size_t j = 0; j < v.dim(); ++j)
      e[i * v.dim() + j] = u[i] * std::conj(v[j]);
  return CMatrix(u.dim(), v.dim(), std::move(e));
}

// Comparisons use the max of component-wise absolute values throughout.
inline double max_abs(const CMatrix& a) {
  double m = 0.0;
  for (cplx z : a.data())
    m = std::max({m, std::abs(z.real()), std::abs(z.imag())});
  return m;
}

inline double max_abs_diff(const CMatrix& a, const CMatrix& b) {
  return max_abs(a - b);
}

inline double max_abs_diff(const CVector& u, const CVector& v) {
  double m = 0.0;
  const CVector d = u - v;
  for (std::size_t i = 0; i < d.dim(); ++i)
    m = std::max({m, std::abs(d[i].real()), std::abs(d[i].imag())});
  return m;
}

// ---------------------------------------------------------------------------
// predicates

inline bool is_hermitian(const CMatrix& a, double tol = kDefaultTol) {
  if (!a.square()) return false;
  return max_abs_diff(a, adjoint(a)) < tol;
}

inline bool is_unitary(const CMatrix& a, double tol = kDefaultTol) {
  if (!a.square()) return false;
  const CMatrix id = CMatrix::identity(a.rows());
  return max_abs_diff(adjoint(a) * a, id) < tol &&
         max_abs_diff(a * adjoint(a), id) < tol;
}

// ---------------------------------------------------------------------------
// Pauli matrices and 2x2/4x4 identities

inline const CMatrix& sigma_x() {
  static const CMatrix m{{0.0, 1.0}, {1.0, 0.0}};
  return m;
}

inline const CMatrix& sigma_y() {
  static const CMatrix m{{0.0, cplx(0.0, -1.0)}, {cplx(0.0, 1.0), 0.0}};
  return m;
}

inline const CMatrix& sigma_z() {
  static const CMatrix m{{1.0, 0.0}, {0.0, -1.0}};
  return m;
}

inline const CMatrix& identity2() {
  static const CMatrix m = CMatrix::identity(2);
  return m;
}

inline const CMatrix& identity4() {
  static const CMatrix m = CMatrix::identity(4);
  return m;
}

// ---------------------------------------------------------------------------
// Kronecker products

inline CMatrix kron(const CMatrix& a, const CMatrix& b) {
  const std::size_t r = a.rows() * b.rows(), c = a.cols() * b.cols();
  std::vector<cplx> e(r * c);
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      for (std::size_t k = 0; k < b.rows(); ++k)
        for (std::size_t l = 0; l < b.cols(); ++l)
          e[(i * b.rows() + k) * c + (j * b.cols() + l)] = a(i, j) * b(k, l);
  return CMatrix(r, c, std::move(e));
}

inline CVector kron(const CVector& u, const CVector& v) {
  std::vector<cplx> e(u.dim() * v.dim());
  for (std::size_t i = 0; i < u.dim(); ++i)
    for (std::size_t k = 0; k < v.dim(); ++k) e[i * v.dim() + k] = u[i] * v[k];
  return CVector(std::move(e));
}

// ---------------------------------------------------------------------------
// matrix exponential

// Induced infinity norm (max row sum), used for the scaling bound.
inline double inf_norm(const CMatrix& a) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.rows(); ++i) {
    double s = 0.0;
    for (std::size_t j = 0; j < a.cols(); ++j) s += std::abs(a(i, j));
    m = std::max(m, s);
  }
  return m;
}

// Scaling-and-squaring Taylor evaluation: the argument is scaled by 2^-k
// until its norm is below 0.5, the series is summed until the remainder
// bound drops under tol (tightened by 2^-k, since every squaring can double
// the accumulated error), then the result is squared k times.
inline CMatrix expm(const CMatrix& a, double tol = 1e-13) {
  if (!a.square()) throw std::invalid_argument("expm: non-square input");
  if (!(tol > 0.0)) throw std::invalid_argument("expm: tol must be positive");

  int k = 0;
  double nrm = inf_norm(a);
  while (nrm > 0.5 && k < 64) {
    nrm /= 2.0;
    ++k;
  }
  const CMatrix b = cplx(std::ldexp(1.0, -k)) * a;
  const double bn = inf_norm(b);
  const double target = std::max(std::ldexp(tol, -k), 1e-17);

  CMatrix sum = CMatrix::identity(a.rows());
  CMatrix term = CMatrix::identity(a.rows());
  for (int j = 1; j <= 128; ++j) {
    term = cplx(1.0 / j) * (term * b);
    sum = sum + term;
    const double q = bn / (j + 1);       // ratio bound for the next terms
    const double tail = inf_norm(term) * q / (1.0 - q);
    if (tail < target) break;
  }
  for (int i = 0; i < k; ++i) sum = sum * sum;
  return sum;
}

// ---------------------------------------------------------------------------
// Hermitian eigensolver (cyclic Jacobi)

struct EigenResult {
  std::vector<double> eigenvalues;  // descending, ties by first occurrence
  CMatrix eigenvectors;             // unitary, k-th column pairs eigenvalues[k]
};

inline EigenResult hermitian_eigen(const CMatrix& a, double tol = kDefaultTol) {
  if (!a.square()) throw std::invalid_argument("hermitian_eigen: non-square");
  if (!is_hermitian(a, tol))
    throw std::invalid_argument("hermitian_eigen: input is not Hermitian");
  const std::size_t n = a.rows();

  // work on the Hermitian average so roundoff in the input cannot drift
  std::vector<cplx> w(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      w[i * n + j] = 0.5 * (a(i, j) + std::conj(a(j, i)));
  std::vector<cplx> vec(n * n, cplx(0.0));
  for (std::size_t i = 0; i < n; ++i) vec[i * n + i] = 1.0;

  constexpr double kOffTol = 1e-13;
  constexpr int kMaxSweeps = 100;
  for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
    double off = 0.0;
    for (std::size_t p = 0; p < n; ++p)
      for (std::size_t q = p + 1; q < n; ++q)
        off = std::max(off, std::abs(w[p * n + q]));
    if (off < kOffTol) break;

    for (std::size_t p = 0; p < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const cplx b = w[p * n + q];
        const double ab = std::abs(b);
        if (ab < 1e-300) continue;
        const double app = w[p * n + p].real();
        const double aqq = w[q * n + q].real();
        const double th = 0.5 * std::atan2(2.0 * ab, app - aqq);
        const double c = std::cos(th), s = std::sin(th);
        const cplx ph = b / ab;  // phase of the pivot entry

        // rows p,q: A <- U^dagger A
        for (std::size_t j = 0; j < n; ++j) {
          const cplx wp = w[p * n + j], wq = w[q * n + j];
          w[p * n + j] = c * wp + s * ph * wq;
          w[q * n + j] = -s * std::conj(ph) * wp + c * wq;
        }
        // columns p,q: A <- A U, and accumulate eigenvectors V <- V U
        for (std::size_t i = 0; i < n; ++i) {
          const cplx wp = w[i * n + p], wq = w[i * n + q];
          w[i * n + p] = c * wp + s * std::conj(ph) * wq;
          w[i * n + q] = -s * ph * wp + c * wq;
          const cplx vp = vec[i * n + p], vq = vec[i * n + q];
          vec[i * n + p] = c * vp + s * std::conj(ph) * vq;
          vec[i * n + q] = -s * ph * vp + c * vq;
        }
      }
    }
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t i, std::size_t j) {
                     return w[i * n + i].real() > w[j * n + j].real();
                   });

  EigenResult res;
  res.eigenvalues.resize(n);
  std::vector<cplx> sorted(n * n);
  for (std::size_t k = 0; k < n; ++k) {
    res.eigenvalues[k] = w[order[k] * n + order[k]].real();
    for (std::size_t i = 0; i < n; ++i)
      sorted[i * n + k] = vec[i * n + order[k]];
  }
  res.eigenvectors = CMatrix(n, n, std::move(sorted));
  return res;
}

inline bool is_psd(const CMatrix& a, double tol = kDefaultTol) {
  if (!is_hermitian(a, tol)) return false;
  const EigenResult e = hermitian_eigen(a, tol);
  return e.eigenvalues.back() > -tol;
}

// ---------------------------------------------------------------------------
// consolidated structural report

struct MatrixReport {
  bool hermitian = false;
  bool unitary = false;
  bool psd = false;
  cplx trace;
  std::optional<cplx> determinant;  // populated for 2x2 only
};

inline MatrixReport matrix_checks(const CMatrix& a, double tol = kDefaultTol) {
  if (!a.square()) throw std::invalid_argument("matrix_checks: non-square");
  MatrixReport r;
  r.hermitian = is_hermitian(a, tol);
  r.unitary = is_unitary(a, tol);
  r.psd = is_psd(a, tol);
  r.trace = trace(a);
  if (a.rows() == 2) r.determinant = det2(a);
  return r;
}

}  // namespace ptbrach
