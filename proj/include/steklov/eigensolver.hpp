#pragma once

#include <cstddef>

#include "steklov/lu.hpp"
#include "steklov/matrix.hpp"

namespace steklov {

struct EigsOptions {
  /// Ritz residual tolerance, relative to the Ritz value of the inverse.
  double tol = 1e-14;
  std::size_t max_restarts = 500;
  /// Matrices up to this size use the dense Hessenberg/QR path.
  std::size_t dense_threshold = 256;
  /// Krylov subspace dimension; 0 selects max(2k + 4, 20).
  std::size_t krylov_dim = 0;
  std::size_t block_size = 2;
  /// Imaginary parts below imag_tol * |lambda| are dropped; larger ones are an error.
  double imag_tol = 1e-8;
  /// Use shift-invert Arnoldi even below dense_threshold.
  bool force_arnoldi = false;
};

/// Real eigenpairs sorted ascending by modulus.
struct EigenPairSet {
  RealVector values;
  /// n x k, one unit-norm eigenvector per column.
  RealMatrix vectors;
  /// ||A v - lambda v||_2 / ||A||_F per pair.
  RealVector residuals;
  std::size_t restarts = 0;
  std::size_t solves = 0;
  bool dense = false;
};

/// The k eigenpairs of smallest modulus of a real nonsymmetric matrix with
/// real wanted spectrum. Uses block Krylov-Schur on A^{-1} or, for small n,
/// a full dense eigendecomposition.
EigenPairSet smallest_magnitude_eigs(const RealMatrix& a, std::size_t k,
                                     const EigsOptions& opts = {});

/// Same, reusing an existing factorization of `a`.
EigenPairSet smallest_magnitude_eigs(const RealMatrix& a, const LuFactorization& lu,
                                     std::size_t k, const EigsOptions& opts = {});

/// All eigenvalues of a dense real matrix (Hessenberg reduction + shifted QR).
ComplexVector eigenvalues(const RealMatrix& a);

/// Singular values of a dense real matrix, descending.
RealVector singular_values(const RealMatrix& a);

}  // namespace steklov
