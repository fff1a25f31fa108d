#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "steklov/matrix.hpp"

namespace steklov {

/// LU factorization with partial pivoting, PA = LU.
///
/// L is unit lower triangular and U upper triangular; both are stored packed
/// in one matrix. The row permutation is kept as `perm`, where row i of PA is
/// row perm[i] of A. Throws SingularMatrix on an exactly zero pivot column.
class LuFactorization {
 public:
  LuFactorization() = default;

  /// Blocked right-looking factorization; the trailing updates run on the
  /// parallel GEMM kernel.
  explicit LuFactorization(RealMatrix a);

  /// Unblocked serial factorization kept as a test and benchmark baseline.
  static LuFactorization reference(RealMatrix a);

  [[nodiscard]] std::size_t size() const noexcept { return lu_.rows(); }
  [[nodiscard]] const RealMatrix& packed() const noexcept { return lu_; }
  [[nodiscard]] const std::vector<std::size_t>& perm() const noexcept { return perm_; }

  RealMatrix lower() const;
  RealMatrix upper() const;
  /// Rows of `a` reordered as P*a.
  RealMatrix permute_rows(const RealMatrix& a) const;

  void solve_in_place(std::span<double> b) const;
  RealVector solve(std::span<const double> b) const;
  /// Solves A X = B for a block of right-hand sides.
  RealMatrix solve(const RealMatrix& b) const;

 private:
  RealMatrix lu_;
  std::vector<std::size_t> perm_;
};

}  // namespace steklov
