#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "steklov/matrix.hpp"

namespace steklov {

enum class DomainKind { BoundedInterior, UnboundedExterior };

std::string to_string(DomainKind kind);
DomainKind parse_domain_kind(const std::string& text);

/// Parameters of the builtin families. `r` is the shape parameter (ellipse
/// axis ratio, star depth); `a` is the linear scale.
struct FamilyParams {
  double r = 1.0;
  double a = 1.0;
};

/// A smooth closed curve given analytically on [0, 2*pi).
///
/// Bounded domains lie to the left of a counterclockwise curve; for the
/// unbounded domain the same boundary is traversed clockwise.
struct BoundaryCurve {
  using Map = std::function<complex(double)>;

  std::string name;
  /// Builtin family id, empty for user-supplied curves.
  std::string family;
  FamilyParams params;
  DomainKind kind = DomainKind::BoundedInterior;
  Map eta;
  Map eta1;
  Map eta2;
  /// Base point inside the bounded domain; only used for BoundedInterior.
  complex alpha{0.0, 0.0};

  [[nodiscard]] bool bounded() const noexcept { return kind == DomainKind::BoundedInterior; }
  /// A(t) = eta(t) - alpha for bounded domains, 1 otherwise.
  complex a_of(complex eta_t) const noexcept { return bounded() ? eta_t - alpha : complex{1.0}; }
};

/// n equidistant nodes t_j = j*2*pi/n with cached samples.
struct Grid {
  std::size_t n = 0;
  RealVector t;
  ComplexVector eta;
  ComplexVector eta1;
  ComplexVector eta2;
  RealVector speed;
  RealVector rho;

  /// Throws InvalidArgument for odd n and DiscretizationError if eta' vanishes.
  static Grid build(const BoundaryCurve& curve, std::size_t n);

  [[nodiscard]] double h() const noexcept;
};

const std::vector<std::string>& builtin_families();
/// True for families with a linear scale parameter a.
bool family_is_scalable(const std::string& family);

/// Builtin curve with the orientation required by `kind`. For the exterior
/// the parametrization is t -> eta(-t). `alpha` overrides the default base
/// point (disk 0, g1 8, g2 0, others the node centroid).
BoundaryCurve make_builtin(const std::string& family, FamilyParams params, DomainKind kind,
                           std::optional<complex> alpha = std::nullopt);

/// User-supplied curve; validated like the builtins.
BoundaryCurve make_curve(std::string name, DomainKind kind, BoundaryCurve::Map eta,
                         BoundaryCurve::Map eta1, BoundaryCurve::Map eta2,
                         complex alpha = {});

/// Orientation, periodicity, nonvanishing speed, and (bounded) alpha inside.
void validate(const BoundaryCurve& curve, std::size_t n = 1024);

double perimeter(const BoundaryCurve& curve, std::size_t n);
/// (1/2) * integral of Im(conj(eta) eta'), positive for counterclockwise curves.
double signed_area(const BoundaryCurve& curve, std::size_t n);
/// Area of the bounded component of the plane cut by the curve.
double area(const BoundaryCurve& curve, std::size_t n);

/// Trapezoidal winding number of the sampled curve about z.
double winding_number(const Grid& grid, complex z);
double winding_number(const BoundaryCurve& curve, complex z, std::size_t n = 256);

/// Centroid of the node samples, the default interior point.
complex node_centroid(const BoundaryCurve& curve, std::size_t n = 256);

/// Family member with scale a = length / I, where I is the perimeter of the
/// a = 1 member at n nodes.
BoundaryCurve scale_to_perimeter(const std::string& family, double r, double length,
                                 std::size_t n,
                                 DomainKind kind = DomainKind::BoundedInterior);

/// Curve description as found in config files.
struct CurveSpec {
  std::string family;
  FamilyParams params;
  DomainKind kind = DomainKind::BoundedInterior;
  std::optional<complex> alpha;
  /// Target perimeter; rescales the family member when set.
  std::optional<double> perimeter_normalize;
  /// Nodes used by perimeter normalization.
  std::size_t normalize_n = 1024;
};

BoundaryCurve make_curve(const CurveSpec& spec);

}  // namespace steklov
