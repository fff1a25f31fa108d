#pragma once

#include <cstddef>
#include <span>

#include "steklov/curves.hpp"
#include "steklov/lu.hpp"
#include "steklov/matrix.hpp"

namespace steklov {

/// Differentiation matrix of the trigonometric interpolant on n equidistant
/// nodes, D = F W F*. The Nyquist mode is annihilated. Throws on odd n.
RealMatrix fourier_diff_matrix(std::size_t n);

/// D * values via FFT.
RealVector apply_diff_fast(std::span<const double> values);
/// D * m applied to every column of m in place.
void apply_diff_columns(RealMatrix& m);

/// Discrete conjugation matrix: K_ij = (2/n) cot((i-j) pi/n) for odd i-j,
/// zero otherwise.
RealMatrix wittich_matrix(std::size_t n);

struct KernelValue {
  double n = 0.0;
  /// M(s,t) + cot((s-t)/2)/(2 pi), the continuous part of M.
  double m_tilde = 0.0;
};

/// Generalized Neumann kernel N and the regular part of M at (s, t).
/// Points closer than 1e-14 (after periodic wrapping) use the diagonal limit.
KernelValue kernel_values(const BoundaryCurve& curve, double s, double t);

struct NystromMatrices {
  RealMatrix b;
  RealMatrix c;
};

/// B_ij = (2 pi/n) N(t_i, t_j), C_ij = -K_ij + (2 pi/n) Mtilde(t_i, t_j).
NystromMatrices nystrom_matrices(const Grid& grid, const BoundaryCurve& curve);

namespace reference {
/// Serial assembly through kernel_values; baseline for tests and benchmarks.
NystromMatrices nystrom_matrices(const Grid& grid, const BoundaryCurve& curve);
}  // namespace reference

/// Discrete operator stack for one (curve, n) pair. Immutable after build.
class DtnDiscretization {
 public:
  /// Throws DiscretizationError when I - B is singular.
  DtnDiscretization(const BoundaryCurve& curve, std::size_t n);

  [[nodiscard]] const BoundaryCurve& curve() const noexcept { return curve_; }
  [[nodiscard]] const Grid& grid() const noexcept { return grid_; }
  [[nodiscard]] std::size_t n() const noexcept { return grid_.n; }
  [[nodiscard]] const RealMatrix& k() const noexcept { return k_; }
  [[nodiscard]] const RealMatrix& b() const noexcept { return b_; }
  [[nodiscard]] const RealMatrix& c() const noexcept { return c_; }
  /// E = -(I - B)^{-1} C.
  [[nodiscard]] const RealMatrix& e() const noexcept { return e_; }
  [[nodiscard]] const LuFactorization& lu_i_minus_b() const noexcept { return lu_; }
  [[nodiscard]] const RealVector& rho() const noexcept { return grid_.rho; }

  /// Dense differentiation matrix (built on demand).
  RealMatrix d() const;

  /// mu solving (I - B) mu = -C gamma with the retained factorization.
  RealVector solve_conjugate(std::span<const double> gamma) const;

 private:
  BoundaryCurve curve_;
  Grid grid_;
  RealMatrix k_;
  RealMatrix b_;
  RealMatrix c_;
  RealMatrix e_;
  LuFactorization lu_;
};

/// E for the given curve at n nodes.
RealMatrix conjugation_matrix(const BoundaryCurve& curve, std::size_t n);

}  // namespace steklov
