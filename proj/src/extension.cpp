#include "steklov/extension.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

namespace steklov {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr complex kI{0.0, 1.0};

double segment_distance2(complex a, complex b, complex z) {
  const complex ab = b - a;
  const double len2 = std::norm(ab);
  double s = len2 > 0.0 ? ((z - a) * std::conj(ab)).real() / len2 : 0.0;
  s = std::clamp(s, 0.0, 1.0);
  return std::norm(z - (a + s * ab));
}

// Winding number of the closed polygon through eta about z (crossing rule).
int polygon_winding(std::span<const complex> eta, complex z) {
  int w = 0;
  const std::size_t n = eta.size();
  for (std::size_t j = 0; j < n; ++j) {
    const complex a = eta[j], b = eta[(j + 1) % n];
    const double cross = (b.real() - a.real()) * (z.imag() - a.imag()) -
                         (z.real() - a.real()) * (b.imag() - a.imag());
    if (a.imag() <= z.imag()) {
      if (b.imag() > z.imag() && cross > 0) ++w;
    } else if (b.imag() <= z.imag() && cross < 0) {
      --w;
    }
  }
  return w;
}

// `nearest2` receives the squared distance to the closest node. Kept out of line so
// every caller runs the same instruction sequence.
[[gnu::noinline]] complex evaluate(const BoundaryFunction& bf, complex z, double& nearest2) {
  const std::size_t n = bf.eta.size();
  nearest2 = std::numeric_limits<double>::infinity();
  if (bf.kind == DomainKind::BoundedInterior) {
    complex num{0.0, 0.0}, den{0.0, 0.0};
    for (std::size_t j = 0; j < n; ++j) {
      const complex d = bf.eta[j] - z;
      nearest2 = std::min(nearest2, std::norm(d));
      if (d == complex{0.0, 0.0}) return bf.values[j];
      const complex w = bf.eta1[j] / d;
      num += bf.values[j] * w;
      den += w;
    }
    return num / den;
  }
  // Normalized by the discrete version of (1/2 pi i) int (z - beta)/((eta - z)(eta - beta)) = 1,
  // which keeps the rule accurate close to the boundary.
  complex num{0.0, 0.0}, den{0.0, 0.0};
  for (std::size_t j = 0; j < n; ++j) {
    const complex d = bf.eta[j] - z;
    nearest2 = std::min(nearest2, std::norm(d));
    if (d == complex{0.0, 0.0}) return bf.values[j];
    const complex w = bf.eta1[j] / d;
    num += (bf.values[j] - bf.f_infinity) * w;
    den += w / (bf.eta[j] - bf.beta);
  }
  return bf.f_infinity + num / ((z - bf.beta) * den);
}

double max_half_segment(std::span<const complex> eta) {
  double h = 0.0;
  for (std::size_t j = 0; j < eta.size(); ++j)
    h = std::max(h, std::abs(eta[(j + 1) % eta.size()] - eta[j]));
  return 0.5 * h;
}

// The polygon is within `tol` of z only if some node is within tol + half a segment.
bool near_boundary(const BoundaryFunction& bf, complex z, double nearest2, double half,
                   double tol) {
  if (std::sqrt(nearest2) - half > tol) return false;
  return boundary_distance(bf.eta, z) < tol;
}

}  // namespace

complex estimate_f_infinity(const Grid& grid, std::span<const complex> values, complex beta) {
  if (values.size() != grid.n) throw InvalidArgument("estimate_f_infinity: length mismatch");
  if (polygon_winding(grid.eta, beta) == 0)
    throw InvalidArgument("beta must lie inside the bounded complement");
  complex s{0.0, 0.0};
  for (std::size_t j = 0; j < grid.n; ++j) s += values[j] * grid.eta1[j] / (grid.eta[j] - beta);
  return -s * grid.h() / (kTwoPi * kI);
}

BoundaryFunction BoundaryFunction::make(const Grid& grid, DomainKind kind, ComplexVector values,
                                        std::optional<complex> beta) {
  if (values.size() != grid.n) throw InvalidArgument("boundary function: length mismatch");
  BoundaryFunction bf;
  bf.kind = kind;
  bf.eta = grid.eta;
  bf.eta1 = grid.eta1;
  bf.values = std::move(values);
  if (kind == DomainKind::UnboundedExterior) {
    complex b{0.0, 0.0};
    if (beta) {
      b = *beta;
    } else {
      for (complex e : grid.eta) b += e;
      b /= static_cast<double>(grid.n);
    }
    bf.beta = b;
    bf.f_infinity = estimate_f_infinity(grid, bf.values, b);
  }
  return bf;
}

BoundaryFunction BoundaryFunction::make(const Grid& grid, DomainKind kind,
                                        std::span<const double> re, std::span<const double> im,
                                        std::optional<complex> beta) {
  if (re.size() != im.size()) throw InvalidArgument("boundary function: length mismatch");
  ComplexVector v(re.size());
  for (std::size_t j = 0; j < v.size(); ++j) v[j] = {re[j], im[j]};
  return make(grid, kind, std::move(v), beta);
}

double boundary_distance(std::span<const complex> eta, complex z) {
  double d = std::numeric_limits<double>::infinity();
  for (std::size_t j = 0; j < eta.size(); ++j)
    d = std::min(d, segment_distance2(eta[j], eta[(j + 1) % eta.size()], z));
  return std::sqrt(d);
}

bool in_domain(const BoundaryFunction& bf, complex z) {
  const int w = polygon_winding(bf.eta, z);
  return bf.kind == DomainKind::BoundedInterior ? w != 0 : w == 0;
}

FieldSample cauchy_eval(const BoundaryFunction& bf, std::span<const complex> z, double near_tol) {
  for (complex p : z)
    if (!in_domain(bf, p) && boundary_distance(bf.eta, p) > near_tol)
      throw InvalidArgument("evaluation point (" + std::to_string(p.real()) + ", " +
                            std::to_string(p.imag()) + ") is outside the domain");
  FieldSample out;
  out.points.assign(z.begin(), z.end());
  out.values.resize(z.size());
  out.u.resize(z.size());
  out.flags.assign(z.size(), kSampleOk);
  const double half = max_half_segment(bf.eta);
  const auto m = static_cast<std::ptrdiff_t>(z.size());
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t ii = 0; ii < m; ++ii) {
    const auto i = static_cast<std::size_t>(ii);
    double nearest2 = 0.0;
    out.values[i] = evaluate(bf, z[i], nearest2);
    out.u[i] = out.values[i].real();
    if (near_boundary(bf, z[i], nearest2, half, near_tol)) out.flags[i] = kSampleNearBoundary;
  }
  return out;
}

namespace reference {

ComplexVector cauchy_eval(const BoundaryFunction& bf, std::span<const complex> z) {
  ComplexVector v(z.size());
  double nearest2 = 0.0;
  for (std::size_t i = 0; i < z.size(); ++i) v[i] = evaluate(bf, z[i], nearest2);
  return v;
}

}  // namespace reference

BoundaryFunction mode_boundary_function(const BoundaryCurve& curve, const SteklovSpectrum& s,
                                        std::size_t mode) {
  if (mode == 0)
    throw InvalidArgument("mode 0 is a discarded null mode; modes are numbered from 1");
  if (mode > s.lambdas.size())
    throw InvalidArgument("mode " + std::to_string(mode) + " was not computed");
  if (curve.kind != s.kind || curve.name != s.curve)
    throw InvalidArgument("spectrum was computed for a different curve");
  const Grid grid = Grid::build(curve, s.n);
  return BoundaryFunction::make(grid, s.kind, s.traces.column(mode - 1),
                                s.conjugates.column(mode - 1));
}

FieldSample eigenmode_field(const BoundaryCurve& curve, const SteklovSpectrum& s,
                            std::size_t mode, std::span<const complex> points) {
  return cauchy_eval(mode_boundary_function(curve, s, mode), points);
}

FieldSample eigenmode_field(const BoundaryCurve& curve, const SteklovSpectrum& s,
                            std::size_t mode, const RasterSpec& raster) {
  if (raster.nx < 2 || raster.ny < 2) throw InvalidArgument("raster needs at least 2x2 points");
  const BoundaryFunction bf = mode_boundary_function(curve, s, mode);
  std::array<double, 4> box{};
  if (raster.box) {
    box = *raster.box;
  } else {
    box = {bf.eta[0].real(), bf.eta[0].real(), bf.eta[0].imag(), bf.eta[0].imag()};
    for (complex e : bf.eta) {
      box[0] = std::min(box[0], e.real());
      box[1] = std::max(box[1], e.real());
      box[2] = std::min(box[2], e.imag());
      box[3] = std::max(box[3], e.imag());
    }
    if (s.kind == DomainKind::UnboundedExterior) {
      const double px = raster.pad * (box[1] - box[0]), py = raster.pad * (box[3] - box[2]);
      box = {box[0] - px, box[1] + px, box[2] - py, box[3] + py};
    }
  }
  if (!(box[1] > box[0] && box[3] > box[2])) throw InvalidArgument("raster box is empty");

  double vmax = 0.0;
  for (complex e : bf.eta1) vmax = std::max(vmax, std::abs(e));
  const double margin = 2.0 * (kTwoPi / static_cast<double>(s.n)) * vmax;

  FieldSample out;
  const std::size_t total = raster.nx * raster.ny;
  out.points.resize(total);
  out.values.assign(total, complex(std::nan(""), std::nan("")));
  out.u.assign(total, std::nan(""));
  out.flags.assign(total, kSampleOutside);
  const double half = max_half_segment(bf.eta);
  const auto m = static_cast<std::ptrdiff_t>(total);
#pragma omp parallel for schedule(dynamic, 64)
  for (std::ptrdiff_t ii = 0; ii < m; ++ii) {
    const auto i = static_cast<std::size_t>(ii);
    const std::size_t iy = i / raster.nx, ix = i % raster.nx;
    const complex z(box[0] + (box[1] - box[0]) * static_cast<double>(ix) / static_cast<double>(raster.nx - 1),
                    box[2] + (box[3] - box[2]) * static_cast<double>(iy) / static_cast<double>(raster.ny - 1));
    out.points[i] = z;
    if (!in_domain(bf, z)) continue;
    double nearest2 = 0.0;
    out.values[i] = evaluate(bf, z, nearest2);
    out.u[i] = out.values[i].real();
    out.flags[i] = near_boundary(bf, z, nearest2, half, margin) ? kSampleNearBoundary : kSampleOk;
  }
  return out;
}

}  // namespace steklov
