#include "steklov/curves.hpp"

#include <cmath>
#include <numbers>
#include <sstream>
#include <utility>

namespace steklov {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr complex kI{0.0, 1.0};

struct Triple {
  BoundaryCurve::Map eta, eta1, eta2;
};

Triple disk_triple() {
  return {[](double t) { return std::exp(kI * t); },
          [](double t) { return kI * std::exp(kI * t); },
          [](double t) { return -std::exp(kI * t); }};
}

Triple ellipse_triple(double a, double r) {
  return {[=](double t) { return a * complex(std::cos(t), r * std::sin(t)); },
          [=](double t) { return a * complex(-std::sin(t), r * std::cos(t)); },
          [=](double t) { return a * complex(-std::cos(t), -r * std::sin(t)); }};
}

// a (1 + r cos 2t) e^{it}
Triple star2_triple(double a, double r) {
  return {[=](double t) { return a * (1.0 + r * std::cos(2 * t)) * std::exp(kI * t); },
          [=](double t) {
            const double p = 1.0 + r * std::cos(2 * t), p1 = -2.0 * r * std::sin(2 * t);
            return a * (p1 + kI * p) * std::exp(kI * t);
          },
          [=](double t) {
            const double p = 1.0 + r * std::cos(2 * t), p1 = -2.0 * r * std::sin(2 * t),
                         p2 = -4.0 * r * std::cos(2 * t);
            return a * (p2 - p + 2.0 * kI * p1) * std::exp(kI * t);
          }};
}

Triple kite_triple() {
  return {[](double t) {
            return complex(1.5 * std::cos(t) + 0.7 * std::cos(2 * t) - 0.4,
                           1.5 * std::sin(t) - 0.3 * std::cos(t));
          },
          [](double t) {
            return complex(-1.5 * std::sin(t) - 1.4 * std::sin(2 * t),
                           1.5 * std::cos(t) + 0.3 * std::sin(t));
          },
          [](double t) {
            return complex(-1.5 * std::cos(t) - 2.8 * std::cos(2 * t),
                           -1.5 * std::sin(t) + 0.3 * std::cos(t));
          }};
}

Triple g1_triple() {
  return {[](double t) { return 8.0 + 5.0 * std::exp(kI * t) + 0.5 * std::exp(6.0 * kI * t); },
          [](double t) { return 5.0 * kI * std::exp(kI * t) + 3.0 * kI * std::exp(6.0 * kI * t); },
          [](double t) { return -5.0 * std::exp(kI * t) - 18.0 * std::exp(6.0 * kI * t); }};
}

// 0.4 i w s(t), w = e^{it}, s = sqrt(2/g), g = 1.16 - 0.84 w^2.
struct G2Terms {
  complex w, s, s1, s2;
};

G2Terms g2_terms(double t) {
  const complex w = std::exp(kI * t);
  const complex w2 = w * w;
  const complex g = 1.16 - 0.84 * w2;
  const complex g1 = -1.68 * kI * w2;
  const complex g2 = 3.36 * w2;
  const complex s = std::sqrt(2.0 / g);
  const complex s1 = -0.5 * s * g1 / g;
  const complex s2 = -0.5 * (s1 * g1 / g + s * (g2 * g - g1 * g1) / (g * g));
  return {w, s, s1, s2};
}

Triple g2_triple() {
  return {[](double t) {
            const auto q = g2_terms(t);
            return 0.4 * kI * q.w * q.s;
          },
          [](double t) {
            const auto q = g2_terms(t);
            return 0.4 * kI * q.w * (kI * q.s + q.s1);
          },
          [](double t) {
            const auto q = g2_terms(t);
            const complex h = kI * q.s + q.s1;
            const complex h1 = kI * q.s1 + q.s2;
            return 0.4 * kI * q.w * (kI * h + h1);
          }};
}

Triple reversed(Triple f) {
  return {[e = std::move(f.eta)](double t) { return e(-t); },
          [e = std::move(f.eta1)](double t) { return -e(-t); },
          [e = std::move(f.eta2)](double t) { return e(-t); }};
}

std::string format_params(const std::string& family, const FamilyParams& p) {
  if (!family_is_scalable(family)) return family;
  std::ostringstream os;
  os.precision(15);
  os << family << "(r=" << p.r << ",a=" << p.a << ")";
  return os.str();
}

}  // namespace

std::string to_string(DomainKind kind) {
  return kind == DomainKind::BoundedInterior ? "interior" : "exterior";
}

DomainKind parse_domain_kind(const std::string& text) {
  if (text == "interior" || text == "bounded" || text == "BoundedInterior")
    return DomainKind::BoundedInterior;
  if (text == "exterior" || text == "unbounded" || text == "UnboundedExterior")
    return DomainKind::UnboundedExterior;
  throw InvalidArgument("unknown domain kind '" + text + "'");
}

double Grid::h() const noexcept { return kTwoPi / static_cast<double>(n); }

Grid Grid::build(const BoundaryCurve& curve, std::size_t n) {
  if (n < 4 || n % 2 != 0) throw InvalidArgument("grid size must be even and at least 4");
  Grid g;
  g.n = n;
  g.t.resize(n);
  g.eta.resize(n);
  g.eta1.resize(n);
  g.eta2.resize(n);
  g.speed.resize(n);
  g.rho.resize(n);
  for (std::size_t j = 0; j < n; ++j) {
    const double t = kTwoPi * static_cast<double>(j) / static_cast<double>(n);
    g.t[j] = t;
    g.eta[j] = curve.eta(t);
    g.eta1[j] = curve.eta1(t);
    g.eta2[j] = curve.eta2(t);
    g.speed[j] = std::abs(g.eta1[j]);
    if (!(g.speed[j] > 0.0) || !std::isfinite(g.speed[j]))
      throw DiscretizationError("curve '" + curve.name + "': eta' vanishes at node " +
                                std::to_string(j));
    g.rho[j] = 1.0 / g.speed[j];
  }
  return g;
}

const std::vector<std::string>& builtin_families() {
  static const std::vector<std::string> names{"disk", "ellipse", "star2", "kite", "g1", "g2"};
  return names;
}

bool family_is_scalable(const std::string& family) {
  return family == "ellipse" || family == "star2";
}

BoundaryCurve make_builtin(const std::string& family, FamilyParams params, DomainKind kind,
                           std::optional<complex> alpha) {
  Triple f;
  complex default_alpha{0.0, 0.0};
  bool centroid = false;
  if (family == "disk") {
    f = disk_triple();
  } else if (family == "ellipse") {
    if (!(params.r >= 1.0)) throw InvalidArgument("ellipse requires r >= 1");
    if (!(params.a > 0.0)) throw InvalidArgument("ellipse requires a > 0");
    f = ellipse_triple(params.a, params.r);
    centroid = true;
  } else if (family == "star2") {
    if (!(params.r >= 0.0 && params.r < 1.0)) throw InvalidArgument("star2 requires 0 <= r < 1");
    if (!(params.a > 0.0)) throw InvalidArgument("star2 requires a > 0");
    f = star2_triple(params.a, params.r);
    centroid = true;
  } else if (family == "kite") {
    f = kite_triple();
    centroid = true;
  } else if (family == "g1") {
    f = g1_triple();
    default_alpha = 8.0;
  } else if (family == "g2") {
    f = g2_triple();
  } else {
    throw InvalidArgument("unknown curve family '" + family + "'");
  }
  if (!family_is_scalable(family)) params = FamilyParams{};

  if (kind == DomainKind::UnboundedExterior) f = reversed(std::move(f));

  BoundaryCurve c;
  c.name = format_params(family, params);
  c.family = family;
  c.params = params;
  c.kind = kind;
  c.eta = std::move(f.eta);
  c.eta1 = std::move(f.eta1);
  c.eta2 = std::move(f.eta2);
  if (alpha) {
    c.alpha = *alpha;
  } else {
    c.alpha = centroid ? node_centroid(c) : default_alpha;
    // Nodes of a symmetric curve average to the exact center up to rounding.
    if (std::abs(c.alpha.real()) < 1e-14) c.alpha.real(0.0);
    if (std::abs(c.alpha.imag()) < 1e-14) c.alpha.imag(0.0);
  }
  validate(c);
  return c;
}

BoundaryCurve make_curve(std::string name, DomainKind kind, BoundaryCurve::Map eta,
                         BoundaryCurve::Map eta1, BoundaryCurve::Map eta2, complex alpha) {
  if (!eta || !eta1 || !eta2) throw InvalidArgument("curve maps must all be set");
  BoundaryCurve c;
  c.name = std::move(name);
  c.kind = kind;
  c.eta = std::move(eta);
  c.eta1 = std::move(eta1);
  c.eta2 = std::move(eta2);
  c.alpha = alpha;
  validate(c);
  return c;
}

void validate(const BoundaryCurve& curve, std::size_t n) {
  const Grid g = Grid::build(curve, n);
  const complex start = curve.eta(0.0);
  const double scale = 1.0 + std::abs(start);
  if (std::abs(start - curve.eta(kTwoPi)) > 1e-12 * scale ||
      std::abs(curve.eta1(0.0) - curve.eta1(kTwoPi)) > 1e-12 * (1.0 + std::abs(curve.eta1(0.0))))
    throw InvalidArgument("curve '" + curve.name + "' is not 2*pi-periodic");

  double sa = 0.0;
  for (std::size_t j = 0; j < n; ++j) sa += (std::conj(g.eta[j]) * g.eta1[j]).imag();
  const bool ccw = sa > 0.0;
  if (curve.bounded() && !ccw)
    throw InvalidArgument("curve '" + curve.name +
                          "': bounded domains need a counterclockwise boundary");
  if (!curve.bounded() && ccw)
    throw InvalidArgument("curve '" + curve.name +
                          "': unbounded domains need a clockwise boundary");

  if (curve.bounded()) {
    const double w = winding_number(g, curve.alpha);
    if (std::abs(w - 1.0) >= 1e-6)
      throw InvalidArgument("curve '" + curve.name + "': alpha is not inside the domain");
  }
}

double perimeter(const BoundaryCurve& curve, std::size_t n) {
  if (n < 16) throw InvalidArgument("perimeter needs n >= 16");
  const Grid g = Grid::build(curve, n);
  double s = 0.0;
  for (double v : g.speed) s += v;
  return g.h() * s;
}

double signed_area(const BoundaryCurve& curve, std::size_t n) {
  const Grid g = Grid::build(curve, n);
  double s = 0.0;
  for (std::size_t j = 0; j < n; ++j) s += (std::conj(g.eta[j]) * g.eta1[j]).imag();
  return 0.5 * g.h() * s;
}

double area(const BoundaryCurve& curve, std::size_t n) { return std::abs(signed_area(curve, n)); }

double winding_number(const Grid& grid, complex z) {
  complex s{0.0, 0.0};
  for (std::size_t j = 0; j < grid.n; ++j) s += grid.eta1[j] / (grid.eta[j] - z);
  return (s * grid.h() / (kTwoPi * kI)).real();
}

double winding_number(const BoundaryCurve& curve, complex z, std::size_t n) {
  return winding_number(Grid::build(curve, n), z);
}

complex node_centroid(const BoundaryCurve& curve, std::size_t n) {
  complex s{0.0, 0.0};
  for (std::size_t j = 0; j < n; ++j)
    s += curve.eta(kTwoPi * static_cast<double>(j) / static_cast<double>(n));
  return s / static_cast<double>(n);
}

BoundaryCurve scale_to_perimeter(const std::string& family, double r, double length,
                                 std::size_t n, DomainKind kind) {
  if (!family_is_scalable(family))
    throw InvalidArgument("family '" + family + "' has no scale parameter");
  if (!(length > 0.0)) throw InvalidArgument("target perimeter must be positive");
  const double unit = perimeter(make_builtin(family, {r, 1.0}, kind), n);
  return make_builtin(family, {r, length / unit}, kind);
}

BoundaryCurve make_curve(const CurveSpec& spec) {
  FamilyParams params = spec.params;
  if (spec.perimeter_normalize) {
    const double a = scale_to_perimeter(spec.family, params.r, *spec.perimeter_normalize,
                                        spec.normalize_n, spec.kind)
                         .params.a;
    params.a = a;
  }
  return make_builtin(spec.family, params, spec.kind, spec.alpha);
}

}  // namespace steklov
