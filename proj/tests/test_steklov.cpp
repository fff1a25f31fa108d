#include <cmath>
#include <numbers>

#include "doctest.h"
#include "steklov/kernels.hpp"
#include "steklov/steklov.hpp"
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

const BoundaryCurve& disk() {
  static const BoundaryCurve c = make_builtin("disk", {}, DomainKind::BoundedInterior);
  return c;
}

}  // namespace

TEST_CASE("Q on the unit disk") {
  const DtnDiscretization dtn(disk(), 32);
  const RealMatrix q = assemble_q(dtn);
  const RealVector c1 = sample(32, [](double t) { return std::cos(t); });
  CHECK(max_diff(matvec<double>(q, c1), c1) <= 1e-13);
  CHECK(norm_inf(matvec<double>(q, RealVector(32, 1.0))) <= 1e-13);
  CHECK(norm_inf(matvec<double>(q, sample(32, [](double t) { return std::cos(16 * t); }))) <= 1e-12);
  const RealMatrix dk = kernels::multiply(fourier_diff_matrix(32), wittich_matrix(32));
  CHECK(max_abs_diff(q, dk) <= 1e-12);
}

TEST_CASE("FFT and dense assembly of Q agree") {
  for (auto kind : {DomainKind::BoundedInterior, DomainKind::UnboundedExterior}) {
    const DtnDiscretization dtn(make_builtin("kite", {}, kind), 128);
    const RealMatrix fast = assemble_q(dtn);
    const RealMatrix dense = reference::assemble_q(dtn);
    CHECK(max_abs_diff(fast, dense) <= 1e-12 * max_abs(dense));
  }
}

TEST_CASE("matrix-free Dirichlet-to-Neumann map") {
  const DtnDiscretization d(disk(), 32);
  CHECK(max_diff(apply_dtn(d, sample(32, [](double t) { return std::cos(2 * t); })),
                 sample(32, [](double t) { return 2 * std::cos(2 * t); })) <= 1e-12);
  CHECK(norm_inf(apply_dtn(d, RealVector(32, 1.0))) <= 1e-13);

  const DtnDiscretization g1(make_builtin("g1", {}, DomainKind::BoundedInterior), 256);
  const RealVector gamma = testing::random_vector(256, 12);
  CHECK(max_diff(apply_dtn(g1, gamma), matvec<double>(assemble_q(g1), gamma)) <= 1e-11);
}

TEST_CASE("disk spectrum is exact for every even n from 24 to 64") {
  const double expect[] = {1, 1, 2, 2, 3, 3, 4, 4, 5, 5};
  for (std::size_t n = 24; n <= 64; n += 2) {
    CAPTURE(n);
    const SteklovSpectrum s = solve_spectrum(disk(), n, 10);
    REQUIRE(s.lambdas.size() == 10);
    for (std::size_t i = 0; i < 10; ++i)
      CHECK(std::abs(s.lambdas[i] - expect[i]) <= 1e-12 * expect[i]);
    for (double z : s.zero_modes) CHECK(std::abs(z) <= 1e-8);
  }
}

TEST_CASE("spectrum normalization, sign, residuals and conjugates") {
  const BoundaryCurve kite = make_builtin("kite", {}, DomainKind::BoundedInterior);
  const DtnDiscretization dtn(kite, 256);
  const SteklovSpectrum s = solve_spectrum(dtn, 8);
  const Grid& g = dtn.grid();
  const RealMatrix q = assemble_q(dtn);
  CHECK(s.n == 256);
  CHECK(s.k == 8);
  CHECK(s.lambdas_scaled.size() == 8);
  CHECK(s.zero_modes.size() == 2);
  for (std::size_t c = 0; c < 8; ++c) {
    const RealVector gamma = s.traces.column(c);
    double w = 0.0;
    std::size_t big = 0;
    for (std::size_t j = 0; j < 256; ++j) {
      w += g.speed[j] * gamma[j] * gamma[j];
      if (std::abs(gamma[j]) > std::abs(gamma[big])) big = j;
    }
    CHECK(std::abs(g.h() * w - 1.0) <= 1e-12);
    CHECK(gamma[big] > 0.0);
    if (c > 0) CHECK(s.lambdas[c] >= s.lambdas[c - 1]);
    CHECK(s.lambdas[c] > 0.0);
    CHECK(s.residuals[c] <= 1e-9 * (1.0 + s.lambdas[c]));
    RealVector r = matvec<double>(q, gamma);
    for (std::size_t j = 0; j < 256; ++j) r[j] -= s.lambdas[c] * gamma[j];
    CHECK(norm2(r) == doctest::Approx(s.residuals[c]).epsilon(1e-6));
    CHECK(max_diff(s.conjugates.column(c), matvec<double>(dtn.e(), gamma)) <= 1e-12);
    CHECK(s.lambdas_scaled[c] == doctest::Approx(s.lambdas[c] * std::sqrt(s.area)));
  }
}

TEST_CASE("exterior spectra carry no scaled values") {
  const SteklovSpectrum s =
      solve_spectrum(make_builtin("ellipse", {2.0, 1.0}, DomainKind::UnboundedExterior), 128, 6);
  CHECK(s.lambdas_scaled.empty());
  CHECK(s.kind == DomainKind::UnboundedExterior);
  CHECK(s.area == doctest::Approx(2 * kPi));
}

TEST_CASE("spectrum does not depend on alpha") {
  const auto a = solve_spectrum(make_builtin("g1", {}, DomainKind::BoundedInterior, 8.0), 512, 10);
  const auto b = solve_spectrum(make_builtin("g1", {}, DomainKind::BoundedInterior, 8.5), 512, 10);
  for (std::size_t i = 0; i < 10; ++i) CHECK(std::abs(a.lambdas[i] - b.lambdas[i]) <= 1e-10);
}

TEST_CASE("disk maximizes the first eigenvalue at fixed perimeter") {
  for (const auto& c : {scale_to_perimeter("ellipse", 1.7, 2 * kPi, 512),
                        scale_to_perimeter("ellipse", 4.0, 2 * kPi, 512),
                        scale_to_perimeter("star2", 0.4, 2 * kPi, 512)}) {
    CAPTURE(c.name);
    const SteklovSpectrum s = solve_spectrum(c, 512, 2);
    CHECK(s.lambdas[0] <= 1.0 + 1e-10);
    CHECK(s.lambdas[0] < 0.99);
  }
}

TEST_CASE("arguments are checked") {
  CHECK_THROWS_AS(solve_spectrum(disk(), 32, 15), InvalidArgument);
  CHECK_THROWS_AS(solve_spectrum(disk(), 32, 0), InvalidArgument);
  CHECK_THROWS_AS(solve_spectrum(disk(), 31, 4), InvalidArgument);
}

TEST_CASE("unresolved discretizations are reported") {
  // A thin ellipse on eight nodes gives a negative eigenvalue.
  const BoundaryCurve thin = make_builtin("ellipse", {10.0, 1.0}, DomainKind::BoundedInterior);
  CHECK_THROWS_AS(solve_spectrum(thin, 8, 2), DiscretizationError);
  CHECK_NOTHROW(make_builtin("ellipse", {30.0, 1.0}, DomainKind::BoundedInterior));
}
