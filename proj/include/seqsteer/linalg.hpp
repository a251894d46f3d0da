#pragma once

// Small dense complex matrices for one- and two-qubit operators.
//
// Only dimensions 2 and 4 are supported. Basis ordering is the computational
// basis |0>=(1,0), |1>=(0,1); in a 4x4 operator subsystem A is the left
// tensor factor, so row index 2*i+k addresses |i>_A |k>_B.

#include <array>
#include <complex>
#include <cstddef>
#include <initializer_list>
#include <vector>

namespace seqsteer {

using Complex = std::complex<double>;

struct Tolerances {
  double hermitian = 1e-12;
  double eigen_convergence = 1e-12;
  double trace = 1e-10;
};

inline constexpr Tolerances kTolerances{};

class ComplexMatrix {
public:
  /// Zero matrix of the given dimension (2 or 4).
  explicit ComplexMatrix(std::size_t dim);
  /// Row-major construction; rows.size() sets the dimension.
  ComplexMatrix(std::initializer_list<std::initializer_list<Complex>> rows);

  static ComplexMatrix identity(std::size_t dim);
  static ComplexMatrix diagonal(std::initializer_list<Complex> diag);

  std::size_t dim() const noexcept { return dim_; }

  Complex& operator()(std::size_t row, std::size_t col) noexcept {
    return data_[row * dim_ + col];
  }
  const Complex& operator()(std::size_t row, std::size_t col) const noexcept {
    return data_[row * dim_ + col];
  }

  ComplexMatrix& operator+=(const ComplexMatrix& other);
  ComplexMatrix& operator-=(const ComplexMatrix& other);
  ComplexMatrix& operator*=(Complex scale) noexcept;

  friend ComplexMatrix operator+(ComplexMatrix lhs, const ComplexMatrix& rhs) {
    return lhs += rhs;
  }
  friend ComplexMatrix operator-(ComplexMatrix lhs, const ComplexMatrix& rhs) {
    return lhs -= rhs;
  }
  friend ComplexMatrix operator*(ComplexMatrix m, Complex scale) noexcept {
    return m *= scale;
  }
  friend ComplexMatrix operator*(Complex scale, ComplexMatrix m) noexcept {
    return m *= scale;
  }
  friend ComplexMatrix operator*(const ComplexMatrix& lhs, const ComplexMatrix& rhs);

private:
  std::size_t dim_;
  std::array<Complex, 16> data_{};
};

ComplexMatrix matmul(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix adjoint(const ComplexMatrix& m);
Complex trace(const ComplexMatrix& m);

/// Kronecker product of two 2x2 matrices: entry[(2i+k),(2j+l)] = a[i,j]*b[k,l].
ComplexMatrix tensor_product(const ComplexMatrix& a, const ComplexMatrix& b);

/// Trace out the left (A) factor of a 4x4 operator.
ComplexMatrix partial_trace_a(const ComplexMatrix& m);
/// Trace out the right (B) factor of a 4x4 operator.
ComplexMatrix partial_trace_b(const ComplexMatrix& m);

/// Largest entrywise |a - b|. Dimensions must match.
double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b);
bool is_hermitian(const ComplexMatrix& m, double tol = kTolerances.hermitian);

/// Eigenvalues of a Hermitian matrix, ascending.
///
/// 2x2 uses the closed form c +/- |a| for M = c*I + a.sigma. 4x4 runs cyclic
/// complex Jacobi rotations until every off-diagonal magnitude is at most
/// kTolerances.eigen_convergence. Throws std::invalid_argument when M deviates
/// from Hermitian by more than 1e-10.
std::vector<double> hermitian_eigenvalues(const ComplexMatrix& m);

double max_eigenvalue(const ComplexMatrix& m);
double min_eigenvalue(const ComplexMatrix& m);

namespace pauli {
ComplexMatrix identity();
ComplexMatrix x();
ComplexMatrix y();
ComplexMatrix z();
} // namespace pauli

} // namespace seqsteer
