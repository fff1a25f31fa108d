#pragma once

#include <cstddef>
#include <span>
#include <string>

#include "steklov/curves.hpp"
#include "steklov/eigensolver.hpp"
#include "steklov/operators.hpp"

namespace steklov {

/// Q = P D E with P = diag(rho). D is applied to the columns of E by FFT.
RealMatrix assemble_q(const DtnDiscretization& dtn);

namespace reference {
/// Same product through the dense differentiation matrix.
RealMatrix assemble_q(const DtnDiscretization& dtn);
}  // namespace reference

/// rho .* D (E gamma), matrix-free.
RealVector apply_dtn(const DtnDiscretization& dtn, std::span<const double> gamma);

struct SolveOptions {
  /// Eigenvalues with |lambda| <= zero_tol * max(1, lambda_k) are null modes.
  double zero_tol = 1e-8;
  /// Residual bound: ||Q g - lambda g|| <= residual_tol * (1 + lambda).
  double residual_tol = 1e-9;
  EigsOptions eigs;
};

struct SteklovSpectrum {
  std::string curve;
  std::string family;
  FamilyParams params;
  DomainKind kind = DomainKind::BoundedInterior;
  complex alpha{0.0, 0.0};
  std::size_t n = 0;
  std::size_t k = 0;
  /// Ascending nonzero eigenvalues.
  RealVector lambdas;
  /// lambda * sqrt(area); empty for exterior problems.
  RealVector lambdas_scaled;
  /// Grid nodes t_j.
  RealVector t;
  /// n x k boundary traces, weighted norm (2 pi/n) sum |eta'| g^2 = 1.
  RealMatrix traces;
  /// n x k harmonic conjugates E g.
  RealMatrix conjugates;
  /// The two discarded near-zero eigenvalues.
  RealVector zero_modes;
  RealVector residuals;
  double area = 0.0;
  double perimeter = 0.0;
  std::size_t restarts = 0;
  bool dense = false;
};

/// The k smallest nonzero Steklov eigenpairs on n nodes.
SteklovSpectrum solve_spectrum(const BoundaryCurve& curve, std::size_t n, std::size_t k,
                               const SolveOptions& opts = {});
SteklovSpectrum solve_spectrum(const DtnDiscretization& dtn, std::size_t k,
                               const SolveOptions& opts = {});

}  // namespace steklov
