#include "steklov/steklov.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <string>

#include "steklov/kernels.hpp"

namespace steklov {

namespace {

void scale_rows(RealMatrix& q, const RealVector& rho) {
  for (std::size_t i = 0; i < q.rows(); ++i)
    for (double& v : q.row(i)) v *= rho[i];
}

}  // namespace

RealMatrix assemble_q(const DtnDiscretization& dtn) {
  RealMatrix q = dtn.e();
  apply_diff_columns(q);
  scale_rows(q, dtn.rho());
  return q;
}

namespace reference {

RealMatrix assemble_q(const DtnDiscretization& dtn) {
  RealMatrix q = kernels::multiply(dtn.d(), dtn.e());
  scale_rows(q, dtn.rho());
  return q;
}

}  // namespace reference

RealVector apply_dtn(const DtnDiscretization& dtn, std::span<const double> gamma) {
  RealVector v = apply_diff_fast(dtn.solve_conjugate(gamma));
  for (std::size_t i = 0; i < v.size(); ++i) v[i] *= dtn.rho()[i];
  return v;
}

SteklovSpectrum solve_spectrum(const BoundaryCurve& curve, std::size_t n, std::size_t k,
                               const SolveOptions& opts) {
  if (n < 4 || n % 2 != 0) throw InvalidArgument("n must be even and at least 4");
  if (k == 0 || k + 2 > n / 2)
    throw InvalidArgument("need 1 <= k and k + 2 <= n/2 (n = " + std::to_string(n) +
                          ", k = " + std::to_string(k) + ")");
  return solve_spectrum(DtnDiscretization(curve, n), k, opts);
}

SteklovSpectrum solve_spectrum(const DtnDiscretization& dtn, std::size_t k,
                               const SolveOptions& opts) {
  const std::size_t n = dtn.n();
  if (k == 0 || k + 2 > n / 2)
    throw InvalidArgument("need 1 <= k and k + 2 <= n/2 (n = " + std::to_string(n) +
                          ", k = " + std::to_string(k) + ")");
  const Grid& grid = dtn.grid();
  const RealMatrix q = assemble_q(dtn);
  RealMatrix shifted = q;
  for (std::size_t i = 0; i < n; ++i) shifted(i, i) += 1.0;

  const EigenPairSet eps = smallest_magnitude_eigs(shifted, k + 2, opts.eigs);
  RealVector values = eps.values;
  for (double& v : values) v -= 1.0;

  const double top = *std::max_element(values.begin(), values.end());
  const double zero_tol = opts.zero_tol * std::max(1.0, top);
  std::vector<std::size_t> zeros, keep;
  for (std::size_t i = 0; i < values.size(); ++i)
    (std::abs(values[i]) <= zero_tol ? zeros : keep).push_back(i);
  if (zeros.size() != 2)
    throw DiscretizationError("expected exactly two null modes, found " +
                              std::to_string(zeros.size()) + " at n = " + std::to_string(n) +
                              "; the discretization is not resolved");
  std::stable_sort(keep.begin(), keep.end(),
                   [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });

  SteklovSpectrum s;
  const BoundaryCurve& curve = dtn.curve();
  s.curve = curve.name;
  s.family = curve.family;
  s.params = curve.params;
  s.kind = curve.kind;
  s.alpha = curve.alpha;
  s.n = n;
  s.k = k;
  s.t = grid.t;
  s.restarts = eps.restarts;
  s.dense = eps.dense;
  for (std::size_t z : zeros) s.zero_modes.push_back(values[z]);
  s.traces = RealMatrix(n, k);
  s.conjugates = RealMatrix(n, k);

  const double h = grid.h();
  for (std::size_t c = 0; c < k; ++c) {
    const std::size_t src = keep[c];
    const double lambda = values[src];
    if (!(lambda > 0.0))
      throw DiscretizationError("negative eigenvalue " + std::to_string(lambda) +
                                "; the discretization is not resolved");
    RealVector g = eps.vectors.column(src);
    double w = 0.0;
    for (std::size_t j = 0; j < n; ++j) w += grid.speed[j] * g[j] * g[j];
    const double scale = 1.0 / std::sqrt(h * w);
    std::size_t big = 0;
    for (std::size_t j = 1; j < n; ++j)
      if (std::abs(g[j]) > std::abs(g[big])) big = j;
    const double sign = g[big] < 0.0 ? -1.0 : 1.0;
    for (double& v : g) v *= sign * scale;

    const RealVector qg = matvec<double>(q, g);
    double r = 0.0;
    for (std::size_t j = 0; j < n; ++j) r += (qg[j] - lambda * g[j]) * (qg[j] - lambda * g[j]);
    r = std::sqrt(r);
    if (!(r <= opts.residual_tol * (1.0 + lambda)))
      throw ConvergenceError("eigenpair " + std::to_string(c + 1) + " residual " +
                             std::to_string(r) + " exceeds the bound");

    s.lambdas.push_back(lambda);
    s.residuals.push_back(r);
    s.traces.set_column(c, g);
    s.conjugates.set_column(c, matvec<double>(dtn.e(), g));
  }

  s.area = area(curve, n);
  s.perimeter = perimeter(curve, std::max<std::size_t>(n, 16));
  if (curve.bounded())
    for (double l : s.lambdas) s.lambdas_scaled.push_back(l * std::sqrt(s.area));
  return s;
}

}  // namespace steklov
