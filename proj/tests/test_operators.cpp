#include <algorithm>
#include <cmath>
#include <numbers>

#include "doctest.h"
#include "steklov/eigensolver.hpp"
#include "steklov/kernels.hpp"
#include "steklov/operators.hpp"
#include "test_util.hpp"

using namespace steklov;

namespace {

constexpr double kPi = std::numbers::pi;

RealVector sample(std::size_t n, auto&& f) {
  RealVector v(n);
  for (std::size_t j = 0; j < n; ++j) v[j] = f(2 * kPi * static_cast<double>(j) / static_cast<double>(n));
  return v;
}

double max_diff(std::span<const double> a, std::span<const double> b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

BoundaryCurve interior(const std::string& f, FamilyParams p = {}) {
  return make_builtin(f, p, DomainKind::BoundedInterior);
}
BoundaryCurve exterior(const std::string& f, FamilyParams p = {}) {
  return make_builtin(f, p, DomainKind::UnboundedExterior);
}

}  // namespace

TEST_CASE("differentiation matrix on trigonometric data") {
  const RealMatrix d16 = fourier_diff_matrix(16);
  CHECK(max_diff(matvec<double>(d16, sample(16, [](double t) { return std::sin(t); })),
                 sample(16, [](double t) { return std::cos(t); })) <= 1e-13);
  CHECK(norm_inf(matvec<double>(d16, RealVector(16, 1.0))) <= 1e-13);
  const RealMatrix d8 = fourier_diff_matrix(8);
  CHECK(norm_inf(matvec<double>(d8, sample(8, [](double t) { return std::cos(4 * t); }))) <= 1e-13);
  for (int k = 1; k < 16; ++k) {
    const RealMatrix d = fourier_diff_matrix(32);
    CHECK(max_diff(matvec<double>(d, sample(32, [&](double t) { return std::sin(k * t); })),
                   sample(32, [&](double t) { return k * std::cos(k * t); })) <= 1e-12);
  }
  CHECK_THROWS_AS(fourier_diff_matrix(15), InvalidArgument);
}

TEST_CASE("differentiation matrix matches the closed-form cotangent entries") {
  for (std::size_t n : {8u, 32u, 1024u}) {
    const RealMatrix d = fourier_diff_matrix(n);
    const double h = 2 * kPi / static_cast<double>(n);
    double err = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const std::size_t dd = i;
      const double expect = dd == 0 ? 0.0 : 0.5 * ((dd % 2) ? -1.0 : 1.0) / std::tan(dd * h / 2);
      err = std::max(err, std::abs(d(i, 0) - expect));
    }
    CHECK(err <= 1e-12 * static_cast<double>(n));
    for (std::size_t i = 0; i < n; i += 7)
      for (std::size_t j = 0; j < n; j += 5) CHECK(d(i, j) == -d(j, i));
  }
}

TEST_CASE("fast differentiation") {
  CHECK(max_diff(apply_diff_fast(sample(16, [](double t) { return std::sin(t); })),
                 sample(16, [](double t) { return std::cos(t); })) <= 1e-13);
  CHECK(max_diff(apply_diff_fast(sample(32, [](double t) { return std::cos(3 * t); })),
                 sample(32, [](double t) { return -3 * std::sin(3 * t); })) <= 1e-12);
  const RealVector v = sample(64, [](double t) { return std::exp(std::sin(t)) * std::cos(2 * t); });
  CHECK(max_diff(apply_diff_fast(v), matvec<double>(fourier_diff_matrix(64), v)) <= 1e-12);
  const RealVector r = testing::random_vector(64, 3);
  CHECK(max_diff(apply_diff_fast(r), matvec<double>(fourier_diff_matrix(64), r)) <= 1e-12);
  CHECK_THROWS_AS(apply_diff_fast(RealVector(7, 1.0)), InvalidArgument);

  RealMatrix m = testing::random_matrix(128, 37, 8);
  const RealMatrix dense = kernels::multiply(fourier_diff_matrix(128), m);
  apply_diff_columns(m);
  CHECK(max_abs_diff(m, dense) <= 1e-11);
}

TEST_CASE("Wittich matrix") {
  const RealMatrix k = wittich_matrix(16);
  CHECK(max_diff(matvec<double>(k, sample(16, [](double t) { return std::cos(t); })),
                 sample(16, [](double t) { return std::sin(t); })) <= 1e-13);
  CHECK(norm_inf(matvec<double>(k, RealVector(16, 1.0))) <= 1e-13);
  CHECK(k(3, 1) == 0.0);
  CHECK(k(2, 1) == doctest::Approx(2.0 / 16 / std::tan(kPi / 16)));
  CHECK(max_abs_diff(k, RealMatrix(16, 16)) > 0.0);
  for (std::size_t i = 0; i < 16; ++i)
    for (std::size_t j = 0; j < 16; ++j) CHECK(k(i, j) == -k(j, i));

  const RealMatrix k32 = wittich_matrix(32);
  const RealVector c3 = sample(32, [](double t) { return std::cos(3 * t); });
  const RealVector kk = matvec<double>(k32, matvec<double>(k32, c3));
  for (std::size_t j = 0; j < 32; ++j) CHECK(std::abs(kk[j] + c3[j]) <= 1e-13);
  CHECK_THROWS_AS(wittich_matrix(9), InvalidArgument);
}

TEST_CASE("Wittich spectrum: double zero and +-i") {
  for (std::size_t n : {16u, 64u}) {
    const ComplexVector ev = eigenvalues(wittich_matrix(n));
    int zeros = 0, plus = 0, minus = 0;
    for (complex z : ev) {
      if (std::abs(z) <= 1e-12) ++zeros;
      else if (std::abs(z - complex(0, 1)) <= 1e-12) ++plus;
      else if (std::abs(z + complex(0, 1)) <= 1e-12) ++minus;
    }
    CHECK(zeros == 2);
    CHECK(plus == static_cast<int>(n / 2 - 1));
    CHECK(minus == static_cast<int>(n / 2 - 1));
  }
}

TEST_CASE("kernel values on circles") {
  const BoundaryCurve disk = interior("disk");
  for (auto [s, t] : {std::pair{0.3, 2.0}, {5.0, 0.1}, {1.0, 1.0}, {0.0, 6.2}}) {
    const KernelValue kv = kernel_values(disk, s, t);
    CHECK(kv.n == doctest::Approx(-1.0 / (2 * kPi)).epsilon(1e-13));
    CHECK(std::abs(kv.m_tilde) <= 1e-13);
  }
  const BoundaryCurve cw = exterior("disk");
  CHECK(kernel_values(cw, 0.4, 0.4).n == doctest::Approx(-1.0 / (2 * kPi)).epsilon(1e-14));
  // Points within the diagonal switch after periodic wrapping.
  const KernelValue wrapped = kernel_values(disk, 0.0, 2 * kPi);
  CHECK(wrapped.n == doctest::Approx(-1.0 / (2 * kPi)));
}

TEST_CASE("Nystrom matrices for the unit circle") {
  const BoundaryCurve disk = interior("disk");
  const Grid g = Grid::build(disk, 32);
  const NystromMatrices bc = nystrom_matrices(g, disk);
  // (2 pi/32) * (-1/(2 pi)) in every entry.
  for (std::size_t i = 0; i < bc.b.size(); ++i)
    CHECK(bc.b.data()[i] == doctest::Approx(-1.0 / 32).epsilon(1e-13));
  const RealMatrix k = wittich_matrix(32);
  double err = 0.0;
  for (std::size_t i = 0; i < k.size(); ++i) err = std::max(err, std::abs(bc.c.data()[i] + k.data()[i]));
  CHECK(err <= 1e-14);
}

TEST_CASE("Nystrom assembly agrees with the serial kernel evaluation") {
  for (const auto& c : {interior("kite"), exterior("kite"), interior("g2"), exterior("g1"),
                        interior("ellipse", {3.0, 0.5}), exterior("star2", {0.5, 1.0})}) {
    CAPTURE(c.name);
    const Grid g = Grid::build(c, 256);
    const NystromMatrices fast = nystrom_matrices(g, c);
    const NystromMatrices slow = reference::nystrom_matrices(g, c);
    CHECK(max_abs_diff(fast.b, slow.b) <= 1e-13);
    CHECK(max_abs_diff(fast.c, slow.c) <= 1e-13);
    // C annihilates constants up to the (spectrally small) quadrature error.
    CHECK(norm_inf(matvec<double>(fast.c, RealVector(256, 1.0))) <= 1e-12);
  }
}

TEST_CASE("conjugation matrix on the disk is Wittich's matrix") {
  const DtnDiscretization dtn(interior("disk"), 64);
  CHECK(max_abs_diff(dtn.e(), wittich_matrix(64)) <= 1e-12);
  const RealVector mu = dtn.solve_conjugate(sample(64, [](double t) { return std::cos(t); }));
  CHECK(max_diff(mu, sample(64, [](double t) { return std::sin(t); })) <= 1e-13);
  CHECK(norm_inf(dtn.solve_conjugate(RealVector(64, 1.0))) <= 1e-13);
}

TEST_CASE("conjugation matrix for g1") {
  const BoundaryCurve g1 = interior("g1");
  const DtnDiscretization dtn(g1, 256);
  const std::size_t n = 256;
  CHECK(norm_inf(matvec<double>(dtn.e(), RealVector(n, 1.0))) <= 1e-10);
  RealVector re(n), im(n);
  for (std::size_t j = 0; j < n; ++j) {
    const complex f = (dtn.grid().eta[j] - 8.0) * (dtn.grid().eta[j] - 8.0);
    re[j] = f.real();
    im[j] = f.imag();
  }
  CHECK(max_diff(matvec<double>(dtn.e(), re), im) <= 1e-10);
  CHECK(max_diff(dtn.solve_conjugate(re), matvec<double>(dtn.e(), re)) <= 1e-12);

  const ComplexVector ev = eigenvalues(dtn.e());
  int zeros = 0, unit = 0;
  for (complex z : ev) {
    if (std::abs(z) <= 1e-8) ++zeros;
    else if (std::min(std::abs(z - complex(0, 1)), std::abs(z + complex(0, 1))) <= 1e-8) ++unit;
  }
  CHECK(zeros == 2);
  CHECK(unit == static_cast<int>(n - 2));

  const RealVector sv = singular_values(dtn.e());
  const std::size_t small = static_cast<std::size_t>(
      std::count_if(sv.begin(), sv.end(), [&](double s) { return s < 1e-8 * sv.front(); }));
  CHECK(small == 2);
}

TEST_CASE("analytic conjugates on the kite") {
  const BoundaryCurve kite = interior("kite");
  const DtnDiscretization dtn(kite, 512);
  RealVector re(512), im(512);
  for (std::size_t j = 0; j < 512; ++j) {
    const complex z = dtn.grid().eta[j] - kite.alpha;
    re[j] = (z * z * z).real();
    im[j] = (z * z * z).imag();
  }
  CHECK(max_diff(dtn.solve_conjugate(re), im) <= 1e-9);
}

TEST_CASE("analytic conjugates for every builtin") {
  const std::size_t n = 256;
  for (auto kind : {DomainKind::BoundedInterior, DomainKind::UnboundedExterior}) {
    for (const auto& c : {make_builtin("disk", {}, kind), make_builtin("kite", {}, kind),
                          make_builtin("g1", {}, kind), make_builtin("g2", {}, kind),
                          make_builtin("ellipse", {2.0, 1.0}, kind),
                          make_builtin("star2", {0.3, 1.0}, kind)}) {
      CAPTURE(c.name);
      const DtnDiscretization dtn(c, n);
      const complex base = kind == DomainKind::BoundedInterior ? c.alpha : node_centroid(c);
      for (int m = 1; m <= 3; ++m) {
        RealVector re(n), im(n);
        for (std::size_t j = 0; j < n; ++j) {
          const complex z = dtn.grid().eta[j] - base;
          const complex f = kind == DomainKind::BoundedInterior ? std::pow(z, m) : std::pow(z, -m);
          re[j] = f.real();
          im[j] = f.imag();
        }
        CHECK(max_diff(matvec<double>(dtn.e(), re), im) <= 1e-8 * (1.0 + norm_inf(im)));
      }
    }
  }
}
