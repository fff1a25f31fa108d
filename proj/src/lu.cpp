#include "steklov/lu.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>
#include <utility>

#include "steklov/kernels.hpp"

namespace steklov {

namespace {

constexpr std::size_t kPanel = 64;

void swap_rows(RealMatrix& a, std::size_t r1, std::size_t r2) {
  if (r1 == r2) return;
  std::swap_ranges(a.row(r1).begin(), a.row(r1).end(), a.row(r2).begin());
}

std::size_t pivot_row(const RealMatrix& a, std::size_t col) {
  std::size_t piv = col;
  double best = std::abs(a(col, col));
  for (std::size_t i = col + 1; i < a.rows(); ++i) {
    const double v = std::abs(a(i, col));
    if (v > best) {
      best = v;
      piv = i;
    }
  }
  if (best == 0.0)
    throw SingularMatrix("LU: zero pivot column " + std::to_string(col));
  return piv;
}

void check_square(const RealMatrix& a) {
  if (!a.is_square() || a.empty()) throw InvalidArgument("LU: matrix must be square");
}

}  // namespace

LuFactorization::LuFactorization(RealMatrix a) : lu_(std::move(a)) {
  check_square(lu_);
  const std::size_t n = lu_.rows();
  perm_.resize(n);
  std::iota(perm_.begin(), perm_.end(), std::size_t{0});
  RealMatrix& m = lu_;

  for (std::size_t k0 = 0; k0 < n; k0 += kPanel) {
    const std::size_t k1 = std::min(n, k0 + kPanel);

    for (std::size_t c = k0; c < k1; ++c) {
      const std::size_t piv = pivot_row(m, c);
      swap_rows(m, c, piv);
      std::swap(perm_[c], perm_[piv]);
      const double inv = 1.0 / m(c, c);
      const double* urow = &m(c, 0);
      const auto rows = static_cast<std::ptrdiff_t>(n);
#pragma omp parallel for schedule(static) if (n - c > 512)
      for (std::ptrdiff_t ii = static_cast<std::ptrdiff_t>(c) + 1; ii < rows; ++ii) {
        double* r = &m(static_cast<std::size_t>(ii), 0);
        const double l = (r[c] *= inv);
        if (l != 0.0)
          for (std::size_t j = c + 1; j < k1; ++j) r[j] -= l * urow[j];
      }
    }

    if (k1 == n) break;
    // U12 := L11^{-1} A12
    for (std::size_t i = k0 + 1; i < k1; ++i) {
      double* ri = &m(i, 0);
      for (std::size_t p = k0; p < i; ++p) {
        const double l = ri[p];
        if (l == 0.0) continue;
        const double* rp = &m(p, 0);
        for (std::size_t j = k1; j < n; ++j) ri[j] -= l * rp[j];
      }
    }
    // A22 -= L21 * U12
    kernels::gemm_update(n - k1, n - k1, k1 - k0, -1.0, &m(k1, k0), n, &m(k0, k1), n,
                         &m(k1, k1), n);
  }
}

LuFactorization LuFactorization::reference(RealMatrix a) {
  check_square(a);
  LuFactorization f;
  const std::size_t n = a.rows();
  f.perm_.resize(n);
  std::iota(f.perm_.begin(), f.perm_.end(), std::size_t{0});
  for (std::size_t c = 0; c < n; ++c) {
    const std::size_t piv = pivot_row(a, c);
    swap_rows(a, c, piv);
    std::swap(f.perm_[c], f.perm_[piv]);
    for (std::size_t i = c + 1; i < n; ++i) {
      const double l = (a(i, c) /= a(c, c));
      for (std::size_t j = c + 1; j < n; ++j) a(i, j) -= l * a(c, j);
    }
  }
  f.lu_ = std::move(a);
  return f;
}

RealMatrix LuFactorization::lower() const {
  const std::size_t n = size();
  RealMatrix l(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < i; ++j) l(i, j) = lu_(i, j);
    l(i, i) = 1.0;
  }
  return l;
}

RealMatrix LuFactorization::upper() const {
  const std::size_t n = size();
  RealMatrix u(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) u(i, j) = lu_(i, j);
  return u;
}

RealMatrix LuFactorization::permute_rows(const RealMatrix& a) const {
  RealMatrix p(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    std::copy(a.row(perm_[i]).begin(), a.row(perm_[i]).end(), p.row(i).begin());
  return p;
}

void LuFactorization::solve_in_place(std::span<double> b) const {
  const std::size_t n = size();
  if (b.size() != n) throw InvalidArgument("LU solve: dimension mismatch");
  RealVector x(n);
  for (std::size_t i = 0; i < n; ++i) x[i] = b[perm_[i]];
  for (std::size_t i = 0; i < n; ++i) {
    const double* r = &lu_(i, 0);
    double s = x[i];
    for (std::size_t j = 0; j < i; ++j) s -= r[j] * x[j];
    x[i] = s;
  }
  for (std::size_t i = n; i-- > 0;) {
    const double* r = &lu_(i, 0);
    double s = x[i];
    for (std::size_t j = i + 1; j < n; ++j) s -= r[j] * x[j];
    x[i] = s / r[i];
  }
  std::copy(x.begin(), x.end(), b.begin());
}

RealVector LuFactorization::solve(std::span<const double> b) const {
  RealVector x(b.begin(), b.end());
  solve_in_place(x);
  return x;
}

RealMatrix LuFactorization::solve(const RealMatrix& b) const {
  const std::size_t n = size();
  if (b.rows() != n) throw InvalidArgument("LU solve: dimension mismatch");
  const std::size_t r = b.cols();
  RealMatrix x = permute_rows(b);

  for (std::size_t i0 = 0; i0 < n; i0 += kPanel) {
    const std::size_t i1 = std::min(n, i0 + kPanel);
    kernels::gemm_update(i1 - i0, r, i0, -1.0, &lu_(i0, 0), n, x.data(), r, &x(i0, 0), r);
    for (std::size_t i = i0 + 1; i < i1; ++i) {
      double* xi = &x(i, 0);
      for (std::size_t p = i0; p < i; ++p) {
        const double l = lu_(i, p);
        const double* xp = &x(p, 0);
        for (std::size_t j = 0; j < r; ++j) xi[j] -= l * xp[j];
      }
    }
  }

  const std::size_t blocks = (n + kPanel - 1) / kPanel;
  for (std::size_t bi = blocks; bi-- > 0;) {
    const std::size_t i0 = bi * kPanel;
    const std::size_t i1 = std::min(n, i0 + kPanel);
    if (i1 < n)
      kernels::gemm_update(i1 - i0, r, n - i1, -1.0, &lu_(i0, i1), n, &x(i1, 0), r,
                           &x(i0, 0), r);
    for (std::size_t i = i1; i-- > i0;) {
      double* xi = &x(i, 0);
      for (std::size_t p = i + 1; p < i1; ++p) {
        const double u = lu_(i, p);
        const double* xp = &x(p, 0);
        for (std::size_t j = 0; j < r; ++j) xi[j] -= u * xp[j];
      }
      const double inv = 1.0 / lu_(i, i);
      for (std::size_t j = 0; j < r; ++j) xi[j] *= inv;
    }
  }
  return x;
}

}  // namespace steklov
