#include "steklov/operators.hpp"

#include <fftw3.h>

#include <cmath>
#include <memory>
#include <mutex>
#include <numbers>
#include <string>

namespace steklov {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * kPi;
constexpr double kDiagonalSwitch = 1e-14;

void check_even(std::size_t n, const char* what) {
  if (n < 4 || n % 2 != 0)
    throw InvalidArgument(std::string(what) + ": n must be even and at least 4");
}

// FFTW's planner is not thread-safe; execution is.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

struct FftwFree {
  void operator()(void* p) const noexcept { fftw_free(p); }
};
struct PlanFree {
  void operator()(fftw_plan_s* p) const noexcept {
    std::lock_guard lock(planner_mutex());
    fftw_destroy_plan(p);
  }
};
using PlanPtr = std::unique_ptr<fftw_plan_s, PlanFree>;

// Differentiates `howmany` real sequences of length n laid out with the given
// stride/dist, in place.
void differentiate(double* data, std::size_t n, std::size_t howmany, std::size_t stride,
                   std::size_t dist) {
  const std::size_t nc = n / 2 + 1;
  std::unique_ptr<fftw_complex, FftwFree> spec(
      static_cast<fftw_complex*>(fftw_malloc(sizeof(fftw_complex) * nc * howmany)));
  std::unique_ptr<double, FftwFree> buf(
      static_cast<double*>(fftw_malloc(sizeof(double) * n * howmany)));
  if (!spec || !buf) throw std::bad_alloc();

  const int len = static_cast<int>(n);
  const int hm = static_cast<int>(howmany);
  PlanPtr fwd, bwd;
  {
    std::lock_guard lock(planner_mutex());
    fwd.reset(fftw_plan_many_dft_r2c(1, &len, hm, buf.get(), nullptr, 1, len, spec.get(),
                                     nullptr, 1, static_cast<int>(nc), FFTW_ESTIMATE));
    bwd.reset(fftw_plan_many_dft_c2r(1, &len, hm, spec.get(), nullptr, 1, static_cast<int>(nc),
                                     buf.get(), nullptr, 1, len, FFTW_ESTIMATE));
  }
  if (!fwd || !bwd) throw Error("FFTW planning failed");

  double* b = buf.get();
  for (std::size_t c = 0; c < howmany; ++c)
    for (std::size_t j = 0; j < n; ++j) b[c * n + j] = data[c * dist + j * stride];

  fftw_execute(fwd.get());
  const double inv_n = 1.0 / static_cast<double>(n);
  fftw_complex* s = spec.get();
  for (std::size_t c = 0; c < howmany; ++c) {
    fftw_complex* col = s + c * nc;
    for (std::size_t k = 0; k + 1 < nc; ++k) {
      const double re = col[k][0], im = col[k][1];
      const double f = static_cast<double>(k) * inv_n;
      col[k][0] = -im * f;
      col[k][1] = re * f;
    }
    col[nc - 1][0] = 0.0;
    col[nc - 1][1] = 0.0;
  }
  fftw_execute(bwd.get());

  for (std::size_t c = 0; c < howmany; ++c)
    for (std::size_t j = 0; j < n; ++j) data[c * dist + j * stride] = b[c * n + j];
}

// cot(pi d / n) for d = 0..n-1 (entry 0 unused), exactly odd under d -> n-d.
RealVector cot_table(std::size_t n) {
  RealVector c(n, 0.0);
  for (std::size_t d = 1; d <= n / 2; ++d) {
    c[d] = 1.0 / std::tan(kPi * static_cast<double>(d) / static_cast<double>(n));
    c[n - d] = -c[d];
  }
  c[n / 2] = 0.0;
  return c;
}

complex a_prime_over_a(const BoundaryCurve& curve, complex eta, complex eta1) {
  return curve.bounded() ? eta1 / (eta - curve.alpha) : complex{0.0, 0.0};
}

complex diagonal_value(const BoundaryCurve& curve, complex eta, complex eta1, complex eta2) {
  return (0.5 * eta2 / eta1 - a_prime_over_a(curve, eta, eta1)) / kPi;
}

double wrap(double d) {
  d = std::remainder(d, kTwoPi);
  return d;
}

}  // namespace

RealMatrix fourier_diff_matrix(std::size_t n) {
  check_even(n, "fourier_diff_matrix");
  // Column 0 of F W F*: (1/n) sum_k (i k) e^{i k t_d}, |k| < n/2, Nyquist zeroed.
  RealVector cs(n), sn(n);
  for (std::size_t m = 0; m < n; ++m) {
    const double th = kTwoPi * static_cast<double>(m) / static_cast<double>(n);
    cs[m] = std::cos(th);
    sn[m] = std::sin(th);
  }
  const auto half = static_cast<long long>(n / 2);
  const auto nn = static_cast<long long>(n);
  RealVector col(n);
  double residue = 0.0;
  for (std::size_t d = 0; d < n; ++d) {
    complex s{0.0, 0.0};
    for (long long k = -half + 1; k < half; ++k) {
      const auto idx = static_cast<std::size_t>((((k * static_cast<long long>(d)) % nn) + nn) % nn);
      s += complex(0.0, static_cast<double>(k)) * complex(cs[idx], sn[idx]);
    }
    s /= static_cast<double>(n);
    col[d] = s.real();
    residue = std::max(residue, std::abs(s.imag()));
  }
  if (residue > 1e-12 * static_cast<double>(n))
    throw Error("fourier_diff_matrix: imaginary residue " + std::to_string(residue));
  // D is antisymmetric; enforce it to the last bit.
  col[0] = 0.0;
  col[n / 2] = 0.0;
  for (std::size_t d = 1; d < n / 2; ++d) {
    col[d] = 0.5 * (col[d] - col[n - d]);
    col[n - d] = -col[d];
  }

  RealMatrix dm(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) dm(i, j) = col[(i + n - j) % n];
  return dm;
}

RealVector apply_diff_fast(std::span<const double> values) {
  check_even(values.size(), "apply_diff_fast");
  RealVector out(values.begin(), values.end());
  differentiate(out.data(), out.size(), 1, 1, out.size());
  return out;
}

void apply_diff_columns(RealMatrix& m) {
  check_even(m.rows(), "apply_diff_columns");
  if (m.cols() == 0) return;
  differentiate(m.data(), m.rows(), m.cols(), m.cols(), 1);
}

RealMatrix wittich_matrix(std::size_t n) {
  check_even(n, "wittich_matrix");
  const RealVector cot = cot_table(n);
  const double f = 2.0 / static_cast<double>(n);
  RealMatrix k(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      const std::size_t d = (i + n - j) % n;
      if (d % 2 == 1) k(i, j) = f * cot[d];
    }
  return k;
}

KernelValue kernel_values(const BoundaryCurve& curve, double s, double t) {
  const double d = wrap(s - t);
  const complex et = curve.eta(t), e1t = curve.eta1(t);
  if (std::abs(d) < kDiagonalSwitch) {
    const complex z = diagonal_value(curve, et, e1t, curve.eta2(t));
    return {z.imag(), z.real()};
  }
  const complex es = curve.eta(s);
  const complex z = curve.a_of(es) / curve.a_of(et) * e1t / (et - es) / kPi;
  return {z.imag(), z.real() + 1.0 / (kTwoPi * std::tan(0.5 * d))};
}

NystromMatrices nystrom_matrices(const Grid& grid, const BoundaryCurve& curve) {
  const std::size_t n = grid.n;
  check_even(n, "nystrom_matrices");
  const double h = grid.h();
  const double inv_n = 1.0 / static_cast<double>(n);
  const RealVector cot = cot_table(n);

  ComplexVector a(n), w(n);
  for (std::size_t j = 0; j < n; ++j) {
    a[j] = curve.a_of(grid.eta[j]);
    w[j] = grid.eta1[j] / a[j] * (h / kPi);
  }

  NystromMatrices out{RealMatrix(n, n), RealMatrix(n, n)};
  const auto rows = static_cast<std::ptrdiff_t>(n);
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t ii = 0; ii < rows; ++ii) {
    const auto i = static_cast<std::size_t>(ii);
    double* brow = &out.b(i, 0);
    double* crow = &out.c(i, 0);
    const complex ai = a[i], ei = grid.eta[i];
    for (std::size_t j = 0; j < n; ++j) {
      if (j == i) continue;
      const complex z = ai * w[j] / (grid.eta[j] - ei);
      const std::size_t d = (i + n - j) % n;
      // h/(2 pi) cot((t_i - t_j)/2) = cot(pi d/n)/n; K_ij = 2 cot(pi d/n)/n for odd d.
      const double kij = (d % 2 == 1) ? 2.0 * inv_n * cot[d] : 0.0;
      brow[j] = z.imag();
      crow[j] = z.real() + inv_n * cot[d] - kij;
    }
    const complex zd = diagonal_value(curve, grid.eta[i], grid.eta1[i], grid.eta2[i]);
    brow[i] = h * zd.imag();
    crow[i] = h * zd.real();
  }
  return out;
}

namespace reference {

NystromMatrices nystrom_matrices(const Grid& grid, const BoundaryCurve& curve) {
  const std::size_t n = grid.n;
  const double h = grid.h();
  const RealMatrix k = wittich_matrix(n);
  NystromMatrices out{RealMatrix(n, n), RealMatrix(n, n)};
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      const KernelValue kv = kernel_values(curve, grid.t[i], grid.t[j]);
      out.b(i, j) = h * kv.n;
      out.c(i, j) = -k(i, j) + h * kv.m_tilde;
    }
  return out;
}

}  // namespace reference

DtnDiscretization::DtnDiscretization(const BoundaryCurve& curve, std::size_t n)
    : curve_(curve), grid_(Grid::build(curve, n)), k_(wittich_matrix(n)) {
  NystromMatrices bc = nystrom_matrices(grid_, curve_);
  b_ = std::move(bc.b);
  c_ = std::move(bc.c);

  RealMatrix i_minus_b(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) i_minus_b(i, j) = (i == j ? 1.0 : 0.0) - b_(i, j);
  try {
    lu_ = LuFactorization(std::move(i_minus_b));
  } catch (const SingularMatrix&) {
    throw DiscretizationError("I - B is singular at n = " + std::to_string(n) +
                              "; try a larger n");
  }
  e_ = lu_.solve(c_);
  for (std::size_t i = 0; i < e_.size(); ++i) e_.data()[i] = -e_.data()[i];
}

RealMatrix DtnDiscretization::d() const { return fourier_diff_matrix(n()); }

RealVector DtnDiscretization::solve_conjugate(std::span<const double> gamma) const {
  if (gamma.size() != n()) throw InvalidArgument("solve_conjugate: length mismatch");
  RealVector mu = matvec<double>(c_, gamma);
  for (double& v : mu) v = -v;
  lu_.solve_in_place(mu);
  return mu;
}

RealMatrix conjugation_matrix(const BoundaryCurve& curve, std::size_t n) {
  return DtnDiscretization(curve, n).e();
}

}  // namespace steklov
