#pragma once

#include <array>
#include <span>

#include "core/tensor.hpp"

namespace gupbell {

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kClassicalBound = 2.0;
// 2*sqrt(2) correctly rounded.
inline constexpr double kTsirelsonBound = 2.8284271247461903;
inline constexpr double kBoxworldBound = 4.0;

/// Normalized two-qubit pure state in the basis |00>, |01>, |10>, |11>.
class PureState {
 public:
  using Amplitudes = std::array<Complex, 4>;

  /// Throws unless the amplitudes are normalized within 1e-12.
  explicit PureState(const Amplitudes& amplitudes);
  /// Rescales any non-zero vector onto the unit sphere.
  static PureState normalized(std::span<const Complex> amplitudes);

  const Amplitudes& amplitudes() const noexcept { return amplitudes_; }
  std::span<const Complex> span() const noexcept { return amplitudes_; }

 private:
  Amplitudes amplitudes_;
};

enum class BellKind { PhiPlus, PhiMinus, PsiPlus, PsiMinus };

PureState bell_state(BellKind kind);
/// |00>.
PureState product_zero_state();

/// 4x4 density matrix; trace one and positive semidefinite.
class DensityMatrix {
 public:
  explicit DensityMatrix(ComplexMatrix rho);
  static DensityMatrix from_pure(const PureState& psi);

  const ComplexMatrix& matrix() const noexcept { return rho_; }

 private:
  ComplexMatrix rho_;
};

/// Measurement direction on the Bloch sphere; stored canonicalized to
/// theta in [0, pi], phi in [0, 2pi).
class Direction {
 public:
  Direction() = default;
  Direction(double theta, double phi = 0.0);

  double theta() const noexcept { return theta_; }
  double phi() const noexcept { return phi_; }
  std::array<double, 3> unit_vector() const;

 private:
  double theta_ = 0.0;
  double phi_ = 0.0;
};

struct ChshSettings {
  Direction a, a_prime, b, b_prime;

  /// a=0, a'=pi/2, b=pi/4, b'=-pi/4, all in the x-z plane.
  static ChshSettings canonical();
  /// Planar settings from four polar angles (phi = 0).
  static ChshSettings planar(double a, double a_prime, double b, double b_prime);
};

/// n.sigma for the direction's unit vector.
ComplexMatrix spin_observable(const Direction& n);
/// x.sigma for an arbitrary real 3-vector.
ComplexMatrix dot_sigma(const std::array<double, 3>& v);

/// a (x) (b + b') + a' (x) (b - b') for arbitrary single-party operators.
ComplexMatrix chsh_combination(const ComplexMatrix& a, const ComplexMatrix& a_prime,
                               const ComplexMatrix& b, const ComplexMatrix& b_prime);

ComplexMatrix bell_operator(const ChshSettings& s);

double chsh_value(const PureState& state, const ChshSettings& s);

}  // namespace gupbell
