#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>

#include "steklov/curves.hpp"
#include "steklov/steklov.hpp"

namespace steklov {

/// Boundary values f(eta(t_j)) = gamma_j + i mu_j of an analytic function.
struct BoundaryFunction {
  DomainKind kind = DomainKind::BoundedInterior;
  ComplexVector eta;
  ComplexVector eta1;
  ComplexVector values;
  /// f at infinity (exterior only).
  complex f_infinity{0.0, 0.0};
  /// Point of the bounded complement (exterior only).
  complex beta{0.0, 0.0};

  /// For exterior problems f_infinity is estimated with beta (default: the
  /// node centroid, which lies in the bounded complement for the builtins).
  static BoundaryFunction make(const Grid& grid, DomainKind kind, ComplexVector values,
                               std::optional<complex> beta = std::nullopt);
  static BoundaryFunction make(const Grid& grid, DomainKind kind,
                               std::span<const double> re, std::span<const double> im,
                               std::optional<complex> beta = std::nullopt);
};

/// -(1/(2 pi i)) (2 pi/n) sum f_j eta'_j / (eta_j - beta) for a clockwise curve.
/// Throws if beta is not enclosed by the curve.
complex estimate_f_infinity(const Grid& grid, std::span<const complex> values, complex beta);

enum SampleFlag : std::uint8_t {
  kSampleOk = 0,
  /// Closer to the boundary than the flag distance; accuracy degrades.
  kSampleNearBoundary = 1,
  /// Outside the domain (raster output only; the value is NaN).
  kSampleOutside = 2,
};

struct FieldSample {
  ComplexVector points;
  ComplexVector values;
  /// Re f.
  RealVector u;
  std::vector<std::uint8_t> flags;
};

/// Cauchy-integral evaluation at points inside the domain. Bounded domains use
/// the normalized rule; exterior domains subtract f(infinity) and normalize
/// with a kernel that integrates to one. Points outside
/// the domain throw; points within near_tol of the boundary are flagged.
FieldSample cauchy_eval(const BoundaryFunction& bf, std::span<const complex> z,
                        double near_tol = 1e-6);

namespace reference {
/// Serial evaluation without the domain and distance checks.
ComplexVector cauchy_eval(const BoundaryFunction& bf, std::span<const complex> z);
}  // namespace reference

/// True if z lies in the domain bounded (or, for exterior kinds, not enclosed)
/// by the sampled boundary polygon.
bool in_domain(const BoundaryFunction& bf, complex z);
/// Distance from z to the sampled boundary polygon.
double boundary_distance(std::span<const complex> eta, complex z);

struct RasterSpec {
  std::size_t nx = 101;
  std::size_t ny = 101;
  /// xmin, xmax, ymin, ymax; default is the boundary bounding box, enlarged
  /// by `pad` times its size for exterior domains.
  std::optional<std::array<double, 4>> box;
  double pad = 0.5;
};

/// Boundary function of mode `mode` (1-based, lambda_1 first).
BoundaryFunction mode_boundary_function(const BoundaryCurve& curve, const SteklovSpectrum& s,
                                        std::size_t mode);

/// u = Re f for mode `mode` at the given points.
FieldSample eigenmode_field(const BoundaryCurve& curve, const SteklovSpectrum& s,
                            std::size_t mode, std::span<const complex> points);

/// Row-major raster (y outer, x inner). Points outside the domain carry NaN and
/// kSampleOutside; points closer than 2 (2 pi/n) max|eta'| are flagged.
FieldSample eigenmode_field(const BoundaryCurve& curve, const SteklovSpectrum& s,
                            std::size_t mode, const RasterSpec& raster);

}  // namespace steklov
