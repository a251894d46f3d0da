#include "seqsteer/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace seqsteer {

namespace {

constexpr double kEigenInputHermitianTol = 1e-10;
constexpr int kMaxJacobiSweeps = 64;

std::size_t checked_dim(std::size_t dim) {
  if (dim != 2 && dim != 4) {
    throw std::invalid_argument("ComplexMatrix: dimension must be 2 or 4, got " +
                                std::to_string(dim));
  }
  return dim;
}

void require_same_dim(const ComplexMatrix& a, const ComplexMatrix& b, const char* what) {
  if (a.dim() != b.dim()) {
    throw std::invalid_argument(std::string(what) + ": dimension mismatch (" +
                                std::to_string(a.dim()) + " vs " + std::to_string(b.dim()) +
                                ")");
  }
}

double max_off_diagonal(const ComplexMatrix& m) {
  double off = 0.0;
  for (std::size_t r = 0; r < m.dim(); ++r) {
    for (std::size_t c = 0; c < m.dim(); ++c) {
      if (r != c) off = std::max(off, std::abs(m(r, c)));
    }
  }
  return off;
}

// One two-sided rotation zeroing element (p,q) of a Hermitian matrix.
// The phase of a(p,q) is first absorbed into column q, after which the
// classic real Jacobi angle applies.
void jacobi_rotate(ComplexMatrix& a, std::size_t p, std::size_t q) {
  const Complex apq = a(p, q);
  const double mag = std::abs(apq);
  if (mag == 0.0) return;
  const Complex phase = apq / mag;

  const double theta = (a(q, q).real() - a(p, p).real()) / (2.0 * mag);
  const double t = (theta >= 0.0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
  const double c = 1.0 / std::sqrt(t * t + 1.0);
  const double s = t * c;

  // J = diag-phase * real rotation, restricted to the (p,q) plane.
  const Complex jpp = c;
  const Complex jpq = s;
  const Complex jqp = -s * std::conj(phase);
  const Complex jqq = c * std::conj(phase);

  const std::size_t n = a.dim();
  // A <- A J (columns p, q)
  for (std::size_t r = 0; r < n; ++r) {
    const Complex arp = a(r, p);
    const Complex arq = a(r, q);
    a(r, p) = arp * jpp + arq * jqp;
    a(r, q) = arp * jpq + arq * jqq;
  }
  // A <- J^dagger A (rows p, q)
  for (std::size_t col = 0; col < n; ++col) {
    const Complex apc = a(p, col);
    const Complex aqc = a(q, col);
    a(p, col) = std::conj(jpp) * apc + std::conj(jqp) * aqc;
    a(q, col) = std::conj(jpq) * apc + std::conj(jqq) * aqc;
  }
  a(p, q) = 0.0;
  a(q, p) = 0.0;
  a(p, p) = a(p, p).real();
  a(q, q) = a(q, q).real();
}

} // namespace

ComplexMatrix::ComplexMatrix(std::size_t dim) : dim_(checked_dim(dim)) {}

ComplexMatrix::ComplexMatrix(std::initializer_list<std::initializer_list<Complex>> rows)
    : dim_(checked_dim(rows.size())) {
  std::size_t r = 0;
  for (const auto& row : rows) {
    if (row.size() != dim_) {
      throw std::invalid_argument("ComplexMatrix: ragged row in initializer");
    }
    std::size_t c = 0;
    for (const auto& v : row) (*this)(r, c++) = v;
    ++r;
  }
}

ComplexMatrix ComplexMatrix::identity(std::size_t dim) {
  ComplexMatrix m(dim);
  for (std::size_t i = 0; i < dim; ++i) m(i, i) = 1.0;
  return m;
}

ComplexMatrix ComplexMatrix::diagonal(std::initializer_list<Complex> diag) {
  ComplexMatrix m(diag.size());
  std::size_t i = 0;
  for (const auto& v : diag) {
    m(i, i) = v;
    ++i;
  }
  return m;
}

ComplexMatrix& ComplexMatrix::operator+=(const ComplexMatrix& other) {
  require_same_dim(*this, other, "operator+");
  for (std::size_t i = 0; i < dim_ * dim_; ++i) data_[i] += other.data_[i];
  return *this;
}

ComplexMatrix& ComplexMatrix::operator-=(const ComplexMatrix& other) {
  require_same_dim(*this, other, "operator-");
  for (std::size_t i = 0; i < dim_ * dim_; ++i) data_[i] -= other.data_[i];
  return *this;
}

ComplexMatrix& ComplexMatrix::operator*=(Complex scale) noexcept {
  for (std::size_t i = 0; i < dim_ * dim_; ++i) data_[i] *= scale;
  return *this;
}

ComplexMatrix operator*(const ComplexMatrix& lhs, const ComplexMatrix& rhs) {
  return matmul(lhs, rhs);
}

ComplexMatrix matmul(const ComplexMatrix& a, const ComplexMatrix& b) {
  require_same_dim(a, b, "matmul");
  const std::size_t n = a.dim();
  ComplexMatrix out(n);
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t k = 0; k < n; ++k) {
      const Complex ark = a(r, k);
      if (ark == Complex{}) continue;
      for (std::size_t c = 0; c < n; ++c) out(r, c) += ark * b(k, c);
    }
  }
  return out;
}

ComplexMatrix adjoint(const ComplexMatrix& m) {
  ComplexMatrix out(m.dim());
  for (std::size_t r = 0; r < m.dim(); ++r) {
    for (std::size_t c = 0; c < m.dim(); ++c) out(c, r) = std::conj(m(r, c));
  }
  return out;
}

Complex trace(const ComplexMatrix& m) {
  Complex t{};
  for (std::size_t i = 0; i < m.dim(); ++i) t += m(i, i);
  return t;
}

ComplexMatrix tensor_product(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.dim() != 2 || b.dim() != 2) {
    throw std::invalid_argument("tensor_product: both factors must be 2x2");
  }
  ComplexMatrix out(4);
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 2; ++j)
      for (std::size_t k = 0; k < 2; ++k)
        for (std::size_t l = 0; l < 2; ++l) out(2 * i + k, 2 * j + l) = a(i, j) * b(k, l);
  return out;
}

ComplexMatrix partial_trace_a(const ComplexMatrix& m) {
  if (m.dim() != 4) throw std::invalid_argument("partial_trace_a: input must be 4x4");
  ComplexMatrix out(2);
  for (std::size_t k = 0; k < 2; ++k)
    for (std::size_t l = 0; l < 2; ++l)
      for (std::size_t i = 0; i < 2; ++i) out(k, l) += m(2 * i + k, 2 * i + l);
  return out;
}

ComplexMatrix partial_trace_b(const ComplexMatrix& m) {
  if (m.dim() != 4) throw std::invalid_argument("partial_trace_b: input must be 4x4");
  ComplexMatrix out(2);
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 2; ++j)
      for (std::size_t k = 0; k < 2; ++k) out(i, j) += m(2 * i + k, 2 * j + k);
  return out;
}

double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
  require_same_dim(a, b, "max_abs_diff");
  double d = 0.0;
  for (std::size_t r = 0; r < a.dim(); ++r)
    for (std::size_t c = 0; c < a.dim(); ++c) d = std::max(d, std::abs(a(r, c) - b(r, c)));
  return d;
}

bool is_hermitian(const ComplexMatrix& m, double tol) {
  return max_abs_diff(m, adjoint(m)) <= tol;
}

std::vector<double> hermitian_eigenvalues(const ComplexMatrix& m) {
  if (!is_hermitian(m, kEigenInputHermitianTol)) {
    throw std::invalid_argument("hermitian_eigenvalues: matrix is not Hermitian");
  }

  if (m.dim() == 2) {
    const double c = 0.5 * (m(0, 0).real() + m(1, 1).real());
    const double az = 0.5 * (m(0, 0).real() - m(1, 1).real());
    // Average the two off-diagonal entries so tiny asymmetries cancel.
    const Complex off = 0.5 * (m(0, 1) + std::conj(m(1, 0)));
    const double radius = std::sqrt(std::norm(off) + az * az);
    return {c - radius, c + radius};
  }

  ComplexMatrix a = m;
  int sweep = 0;
  while (max_off_diagonal(a) > kTolerances.eigen_convergence) {
    if (++sweep > kMaxJacobiSweeps) {
      throw std::runtime_error("hermitian_eigenvalues: Jacobi iteration did not converge");
    }
    for (std::size_t p = 0; p + 1 < a.dim(); ++p)
      for (std::size_t q = p + 1; q < a.dim(); ++q) jacobi_rotate(a, p, q);
  }

  std::vector<double> eig(a.dim());
  for (std::size_t i = 0; i < a.dim(); ++i) eig[i] = a(i, i).real();
  std::sort(eig.begin(), eig.end());
  return eig;
}

double max_eigenvalue(const ComplexMatrix& m) { return hermitian_eigenvalues(m).back(); }

double min_eigenvalue(const ComplexMatrix& m) { return hermitian_eigenvalues(m).front(); }

namespace pauli {
ComplexMatrix identity() { return ComplexMatrix::identity(2); }
ComplexMatrix x() { return {{0.0, 1.0}, {1.0, 0.0}}; }
ComplexMatrix y() { return {{0.0, Complex(0.0, -1.0)}, {Complex(0.0, 1.0), 0.0}}; }
ComplexMatrix z() { return {{1.0, 0.0}, {0.0, -1.0}}; }
} // namespace pauli

} // namespace seqsteer
