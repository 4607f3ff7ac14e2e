#pragma once

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace gupbell {

using Complex = std::complex<double>;

/// Dense square complex matrix, row-major. Dimensions here are 2 or 4.
class ComplexMatrix {
 public:
  ComplexMatrix() = default;
  explicit ComplexMatrix(std::size_t dim);
  ComplexMatrix(std::size_t dim, std::vector<Complex> entries);
  /// Row-major nested initializer, e.g. {{0, 1}, {1, 0}}.
  ComplexMatrix(std::initializer_list<std::initializer_list<Complex>> rows);

  static ComplexMatrix identity(std::size_t dim);
  static ComplexMatrix diagonal(std::span<const double> values);

  std::size_t dim() const noexcept { return dim_; }
  std::span<const Complex> entries() const noexcept { return entries_; }

  Complex& operator()(std::size_t row, std::size_t col) {
    return entries_[row * dim_ + col];
  }
  const Complex& operator()(std::size_t row, std::size_t col) const {
    return entries_[row * dim_ + col];
  }

  ComplexMatrix adjoint() const;
  Complex trace() const;
  /// max |M - M^dagger| over all entries.
  double hermiticity_defect() const;
  bool is_hermitian(double tol = 1e-12) const {
    return hermiticity_defect() <= tol;
  }

  ComplexMatrix& operator+=(const ComplexMatrix& rhs);
  ComplexMatrix& operator-=(const ComplexMatrix& rhs);
  ComplexMatrix& operator*=(Complex scale);

  friend bool operator==(const ComplexMatrix&, const ComplexMatrix&) = default;

 private:
  std::size_t dim_ = 0;
  std::vector<Complex> entries_;
};

ComplexMatrix operator+(ComplexMatrix lhs, const ComplexMatrix& rhs);
ComplexMatrix operator-(ComplexMatrix lhs, const ComplexMatrix& rhs);
ComplexMatrix operator*(ComplexMatrix m, Complex scale);
ComplexMatrix operator*(Complex scale, ComplexMatrix m);
ComplexMatrix operator*(const ComplexMatrix& lhs, const ComplexMatrix& rhs);
std::vector<Complex> operator*(const ComplexMatrix& m, std::span<const Complex> v);

/// max |a - b| over entries; dimensions must agree.
double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b);

namespace pauli {
ComplexMatrix identity();
ComplexMatrix x();
ComplexMatrix y();
ComplexMatrix z();
}  // namespace pauli

struct EigenSystem {
  std::vector<double> eigenvalues;  // ascending
  ComplexMatrix eigenvectors;       // column k pairs with eigenvalues[k]

  std::vector<Complex> vector(std::size_t k) const;
};

/// Kronecker product; the first factor indexes the high-order bits (Alice).
ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);

/// Cyclic complex Jacobi diagonalization. Each eigenvector is phased so that
/// its largest-magnitude component is real and positive.
EigenSystem eig_hermitian(const ComplexMatrix& m);

/// <bra| op |ket> without any normalization or Hermiticity checks.
Complex sandwich(std::span<const Complex> bra, const ComplexMatrix& op,
                 std::span<const Complex> ket);

Complex inner(std::span<const Complex> bra, std::span<const Complex> ket);
double norm_squared(std::span<const Complex> v);

/// <psi|op|psi> for a normalized psi and Hermitian op.
double expect(std::span<const Complex> psi, const ComplexMatrix& op);

}  // namespace gupbell
