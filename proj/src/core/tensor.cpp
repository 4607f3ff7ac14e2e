#include "core/tensor.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "core/error.hpp"

namespace gupbell {

namespace {

constexpr int kMaxRotations = 10000;
constexpr double kOffDiagonalThreshold = 1e-14;
constexpr double kEigInputHermitianTol = 1e-10;
constexpr double kExpectNormTol = 1e-12;
constexpr double kExpectImagTol = 1e-9;

void require_same_dim(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.dim() != b.dim()) {
    throw Error(ErrorCode::Dimension,
                "dimension mismatch: " + std::to_string(a.dim()) + " vs " +
                    std::to_string(b.dim()));
  }
}

double off_diagonal_norm(const ComplexMatrix& m) {
  double sum = 0.0;
  for (std::size_t i = 0; i < m.dim(); ++i) {
    for (std::size_t j = 0; j < m.dim(); ++j) {
      if (i != j) sum += std::norm(m(i, j));
    }
  }
  return std::sqrt(sum);
}

}  // namespace

ComplexMatrix::ComplexMatrix(std::size_t dim)
    : dim_(dim), entries_(dim * dim, Complex{}) {}

ComplexMatrix::ComplexMatrix(std::size_t dim, std::vector<Complex> entries)
    : dim_(dim), entries_(std::move(entries)) {
  if (entries_.size() != dim_ * dim_) {
    throw Error(ErrorCode::Dimension,
                "matrix of dim " + std::to_string(dim_) + " needs " +
                    std::to_string(dim_ * dim_) + " entries, got " +
                    std::to_string(entries_.size()));
  }
}

ComplexMatrix::ComplexMatrix(
    std::initializer_list<std::initializer_list<Complex>> rows)
    : dim_(rows.size()) {
  entries_.reserve(dim_ * dim_);
  for (const auto& row : rows) {
    if (row.size() != dim_) {
      throw Error(ErrorCode::Dimension, "matrix rows must form a square");
    }
    entries_.insert(entries_.end(), row.begin(), row.end());
  }
}

ComplexMatrix ComplexMatrix::identity(std::size_t dim) {
  ComplexMatrix m(dim);
  for (std::size_t i = 0; i < dim; ++i) m(i, i) = 1.0;
  return m;
}

ComplexMatrix ComplexMatrix::diagonal(std::span<const double> values) {
  ComplexMatrix m(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) m(i, i) = values[i];
  return m;
}

ComplexMatrix ComplexMatrix::adjoint() const {
  ComplexMatrix out(dim_);
  for (std::size_t i = 0; i < dim_; ++i) {
    for (std::size_t j = 0; j < dim_; ++j) out(j, i) = std::conj((*this)(i, j));
  }
  return out;
}

Complex ComplexMatrix::trace() const {
  Complex sum{};
  for (std::size_t i = 0; i < dim_; ++i) sum += (*this)(i, i);
  return sum;
}

double ComplexMatrix::hermiticity_defect() const {
  double worst = 0.0;
  for (std::size_t i = 0; i < dim_; ++i) {
    for (std::size_t j = i; j < dim_; ++j) {
      worst = std::max(worst, std::abs((*this)(i, j) - std::conj((*this)(j, i))));
    }
  }
  return worst;
}

ComplexMatrix& ComplexMatrix::operator+=(const ComplexMatrix& rhs) {
  require_same_dim(*this, rhs);
  for (std::size_t k = 0; k < entries_.size(); ++k) entries_[k] += rhs.entries_[k];
  return *this;
}

ComplexMatrix& ComplexMatrix::operator-=(const ComplexMatrix& rhs) {
  require_same_dim(*this, rhs);
  for (std::size_t k = 0; k < entries_.size(); ++k) entries_[k] -= rhs.entries_[k];
  return *this;
}

ComplexMatrix& ComplexMatrix::operator*=(Complex scale) {
  for (auto& e : entries_) e *= scale;
  return *this;
}

ComplexMatrix operator+(ComplexMatrix lhs, const ComplexMatrix& rhs) {
  return lhs += rhs;
}

ComplexMatrix operator-(ComplexMatrix lhs, const ComplexMatrix& rhs) {
  return lhs -= rhs;
}

ComplexMatrix operator*(ComplexMatrix m, Complex scale) { return m *= scale; }
ComplexMatrix operator*(Complex scale, ComplexMatrix m) { return m *= scale; }

ComplexMatrix operator*(const ComplexMatrix& lhs, const ComplexMatrix& rhs) {
  require_same_dim(lhs, rhs);
  const std::size_t n = lhs.dim();
  ComplexMatrix out(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t k = 0; k < n; ++k) {
      const Complex l = lhs(i, k);
      for (std::size_t j = 0; j < n; ++j) out(i, j) += l * rhs(k, j);
    }
  }
  return out;
}

std::vector<Complex> operator*(const ComplexMatrix& m, std::span<const Complex> v) {
  if (v.size() != m.dim()) {
    throw Error(ErrorCode::Dimension, "matrix-vector dimension mismatch");
  }
  std::vector<Complex> out(m.dim());
  for (std::size_t i = 0; i < m.dim(); ++i) {
    Complex sum{};
    for (std::size_t j = 0; j < m.dim(); ++j) sum += m(i, j) * v[j];
    out[i] = sum;
  }
  return out;
}

double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
  require_same_dim(a, b);
  double worst = 0.0;
  for (std::size_t k = 0; k < a.entries().size(); ++k) {
    worst = std::max(worst, std::abs(a.entries()[k] - b.entries()[k]));
  }
  return worst;
}

namespace pauli {
ComplexMatrix identity() { return ComplexMatrix::identity(2); }
ComplexMatrix x() { return {{0.0, 1.0}, {1.0, 0.0}}; }
ComplexMatrix y() { return {{0.0, Complex(0, -1)}, {Complex(0, 1), 0.0}}; }
ComplexMatrix z() { return {{1.0, 0.0}, {0.0, -1.0}}; }
}  // namespace pauli

std::vector<Complex> EigenSystem::vector(std::size_t k) const {
  const std::size_t n = eigenvectors.dim();
  std::vector<Complex> v(n);
  for (std::size_t i = 0; i < n; ++i) v[i] = eigenvectors(i, k);
  return v;
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.dim() == 0 || b.dim() == 0) {
    throw Error(ErrorCode::Dimension, "kron needs non-empty square factors");
  }
  const std::size_t n = a.dim();
  const std::size_t m = b.dim();
  ComplexMatrix out(n * m);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const Complex aij = a(i, j);
      for (std::size_t k = 0; k < m; ++k) {
        for (std::size_t l = 0; l < m; ++l) out(i * m + k, j * m + l) = aij * b(k, l);
      }
    }
  }
  return out;
}

EigenSystem eig_hermitian(const ComplexMatrix& m) {
  const std::size_t n = m.dim();
  if (n == 0) throw Error(ErrorCode::Dimension, "eig_hermitian on empty matrix");
  const double defect = m.hermiticity_defect();
  if (defect > kEigInputHermitianTol) {
    throw Error(ErrorCode::NotHermitian,
                "eig_hermitian: input not Hermitian (defect " +
                    std::to_string(defect) + ")");
  }

  // Work on the exactly Hermitian part.
  ComplexMatrix a = m + m.adjoint();
  a *= 0.5;
  ComplexMatrix v = ComplexMatrix::identity(n);

  double scale = 0.0;
  for (const auto& e : a.entries()) scale += std::norm(e);
  const double threshold = kOffDiagonalThreshold * std::max(1.0, std::sqrt(scale));

  int rotations = 0;
  while (off_diagonal_norm(a) > threshold) {
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const double r = std::abs(a(p, q));
        if (r == 0.0) continue;
        if (++rotations > kMaxRotations) {
          throw Error(ErrorCode::Numeric,
                      "eig_hermitian: no convergence after " +
                          std::to_string(kMaxRotations) + " rotations");
        }
        const Complex phase = a(p, q) / r;
        const double tau = (a(q, q).real() - a(p, p).real()) / (2.0 * r);
        const double t = (tau >= 0.0 ? 1.0 : -1.0) /
                         (std::abs(tau) + std::sqrt(1.0 + tau * tau));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = t * c;
        // J = diag(1, conj(phase)) * [[c, s], [-s, c]] on the (p, q) plane.
        const Complex jpp = c;
        const Complex jpq = s;
        const Complex jqp = -s * std::conj(phase);
        const Complex jqq = c * std::conj(phase);

        // a <- a J
        for (std::size_t k = 0; k < n; ++k) {
          const Complex akp = a(k, p);
          const Complex akq = a(k, q);
          a(k, p) = akp * jpp + akq * jqp;
          a(k, q) = akp * jpq + akq * jqq;
        }
        // a <- J^dagger a
        for (std::size_t k = 0; k < n; ++k) {
          const Complex apk = a(p, k);
          const Complex aqk = a(q, k);
          a(p, k) = std::conj(jpp) * apk + std::conj(jqp) * aqk;
          a(q, k) = std::conj(jpq) * apk + std::conj(jqq) * aqk;
        }
        a(p, q) = 0.0;
        a(q, p) = 0.0;
        a(p, p) = a(p, p).real();
        a(q, q) = a(q, q).real();
        for (std::size_t k = 0; k < n; ++k) {
          const Complex vkp = v(k, p);
          const Complex vkq = v(k, q);
          v(k, p) = vkp * jpp + vkq * jqp;
          v(k, q) = vkp * jpq + vkq * jqq;
        }
      }
    }
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) {
    return a(i, i).real() < a(j, j).real();
  });

  EigenSystem out{std::vector<double>(n), ComplexMatrix(n)};
  for (std::size_t k = 0; k < n; ++k) {
    const std::size_t src = order[k];
    out.eigenvalues[k] = a(src, src).real();
    std::size_t pivot = 0;
    for (std::size_t i = 1; i < n; ++i) {
      if (std::abs(v(i, src)) > std::abs(v(pivot, src))) pivot = i;
    }
    const Complex fix = std::conj(v(pivot, src)) / std::abs(v(pivot, src));
    for (std::size_t i = 0; i < n; ++i) out.eigenvectors(i, k) = v(i, src) * fix;
    out.eigenvectors(pivot, k) = std::abs(v(pivot, src));
  }
  return out;
}

Complex inner(std::span<const Complex> bra, std::span<const Complex> ket) {
  if (bra.size() != ket.size()) {
    throw Error(ErrorCode::Dimension, "inner product dimension mismatch");
  }
  Complex sum{};
  for (std::size_t i = 0; i < bra.size(); ++i) sum += std::conj(bra[i]) * ket[i];
  return sum;
}

double norm_squared(std::span<const Complex> v) {
  double sum = 0.0;
  for (const auto& c : v) sum += std::norm(c);
  return sum;
}

Complex sandwich(std::span<const Complex> bra, const ComplexMatrix& op,
                 std::span<const Complex> ket) {
  const auto op_ket = op * ket;
  return inner(bra, op_ket);
}

double expect(std::span<const Complex> psi, const ComplexMatrix& op) {
  if (psi.size() != op.dim()) {
    throw Error(ErrorCode::Dimension, "expect: state and operator dims differ");
  }
  if (std::abs(norm_squared(psi) - 1.0) > kExpectNormTol) {
    throw Error(ErrorCode::InvalidArgument, "expect: state is not normalized");
  }
  const Complex value = sandwich(psi, op, psi);
  if (std::abs(value.imag()) > kExpectImagTol) {
    throw Error(ErrorCode::NotHermitian,
                "expect: imaginary expectation " + std::to_string(value.imag()) +
                    " (operator not Hermitian)");
  }
  return value.real();
}

}  // namespace gupbell
