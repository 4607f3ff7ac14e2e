#include "core/quantum.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "core/error.hpp"

namespace gupbell {

namespace {

constexpr double kStateNormTol = 1e-12;
constexpr double kTraceTol = 1e-12;
constexpr double kPsdTol = 1e-10;
constexpr double kDensityHermitianTol = 1e-12;

}  // namespace

PureState::PureState(const Amplitudes& amplitudes) : amplitudes_(amplitudes) {
  const double norm = norm_squared(amplitudes_);
  if (!std::isfinite(norm) || std::abs(norm - 1.0) > kStateNormTol) {
    throw Error(ErrorCode::InvalidArgument,
                "state not normalized (norm^2 = " + std::to_string(norm) + ")");
  }
}

PureState PureState::normalized(std::span<const Complex> amplitudes) {
  if (amplitudes.size() != 4) {
    throw Error(ErrorCode::Dimension, "two-qubit state needs 4 amplitudes");
  }
  const double norm = std::sqrt(norm_squared(amplitudes));
  if (!(norm > 0.0) || !std::isfinite(norm)) {
    throw Error(ErrorCode::InvalidArgument, "cannot normalize a zero state");
  }
  Amplitudes a{};
  for (std::size_t i = 0; i < 4; ++i) a[i] = amplitudes[i] / norm;
  return PureState(a);
}

PureState bell_state(BellKind kind) {
  const double h = 1.0 / std::sqrt(2.0);
  switch (kind) {
    case BellKind::PhiPlus:
      return PureState({h, 0.0, 0.0, h});
    case BellKind::PhiMinus:
      return PureState({h, 0.0, 0.0, -h});
    case BellKind::PsiPlus:
      return PureState({0.0, h, h, 0.0});
    case BellKind::PsiMinus:
      return PureState({0.0, h, -h, 0.0});
  }
  throw Error(ErrorCode::InvalidArgument, "unknown Bell state kind");
}

PureState product_zero_state() { return PureState({1.0, 0.0, 0.0, 0.0}); }

DensityMatrix::DensityMatrix(ComplexMatrix rho) : rho_(std::move(rho)) {
  if (rho_.dim() != 4) {
    throw Error(ErrorCode::Dimension, "density matrix must be 4x4");
  }
  if (!rho_.is_hermitian(kDensityHermitianTol)) {
    throw Error(ErrorCode::NotHermitian, "density matrix not Hermitian");
  }
  if (std::abs(rho_.trace() - Complex(1.0)) > kTraceTol) {
    throw Error(ErrorCode::InvalidArgument, "density matrix trace != 1");
  }
  const auto eig = eig_hermitian(rho_);
  if (eig.eigenvalues.front() < -kPsdTol) {
    throw Error(ErrorCode::InvalidArgument, "density matrix not positive semidefinite");
  }
}

DensityMatrix DensityMatrix::from_pure(const PureState& psi) {
  ComplexMatrix rho(4);
  const auto& a = psi.amplitudes();
  for (std::size_t i = 0; i < 4; ++i) {
    for (std::size_t j = 0; j < 4; ++j) rho(i, j) = a[i] * std::conj(a[j]);
  }
  return DensityMatrix(std::move(rho));
}

Direction::Direction(double theta, double phi) {
  if (!std::isfinite(theta) || !std::isfinite(phi)) {
    throw Error(ErrorCode::InvalidArgument, "direction angles must be finite");
  }
  const double two_pi = 2.0 * kPi;
  theta = std::fmod(theta, two_pi);
  if (theta < 0.0) theta += two_pi;
  if (theta > kPi) {
    theta = two_pi - theta;
    phi += kPi;
  }
  phi = std::fmod(phi, two_pi);
  if (phi < 0.0) phi += two_pi;
  if (phi >= two_pi) phi = 0.0;
  theta_ = theta;
  phi_ = phi;
}

std::array<double, 3> Direction::unit_vector() const {
  return {std::sin(theta_) * std::cos(phi_), std::sin(theta_) * std::sin(phi_),
          std::cos(theta_)};
}

ChshSettings ChshSettings::canonical() {
  return planar(0.0, kPi / 2.0, kPi / 4.0, -kPi / 4.0);
}

ChshSettings ChshSettings::planar(double a, double a_prime, double b, double b_prime) {
  return {Direction(a), Direction(a_prime), Direction(b), Direction(b_prime)};
}

ComplexMatrix dot_sigma(const std::array<double, 3>& v) {
  return ComplexMatrix{{v[2], Complex(v[0], -v[1])}, {Complex(v[0], v[1]), -v[2]}};
}

ComplexMatrix spin_observable(const Direction& n) { return dot_sigma(n.unit_vector()); }

ComplexMatrix chsh_combination(const ComplexMatrix& a, const ComplexMatrix& a_prime,
                               const ComplexMatrix& b, const ComplexMatrix& b_prime) {
  return kron(a, b + b_prime) + kron(a_prime, b - b_prime);
}

ComplexMatrix bell_operator(const ChshSettings& s) {
  return chsh_combination(spin_observable(s.a), spin_observable(s.a_prime),
                          spin_observable(s.b), spin_observable(s.b_prime));
}

double chsh_value(const PureState& state, const ChshSettings& s) {
  return expect(state.span(), bell_operator(s));
}

}  // namespace gupbell
