#pragma once

#include <cstddef>
#include <numbers>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "steklov/curves.hpp"
#include "steklov/steklov.hpp"

namespace steklov {

struct ConvergenceRecord {
  std::size_t n = 0;
  RealVector lambdas;
  /// |lambda_{k,n} - lambda_{k,ref}| / lambda_{k,ref}.
  RealVector rel_errors;
};

/// Errors against a spectrum computed on n_ref > max(n_list) nodes.
std::vector<ConvergenceRecord> convergence_study(const BoundaryCurve& curve,
                                                 std::span<const std::size_t> n_list,
                                                 std::size_t k, std::size_t n_ref,
                                                 const SolveOptions& opts = {});
/// Errors against known eigenvalues (k = reference.size()).
std::vector<ConvergenceRecord> convergence_study(const BoundaryCurve& curve,
                                                 std::span<const std::size_t> n_list,
                                                 std::span<const double> reference,
                                                 const SolveOptions& opts = {});

/// 1, 1, 2, 2, ... scaled by 1/radius.
RealVector disk_spectrum(std::size_t k, double radius = 1.0);

/// n = n_low for r <= split, n_high above.
struct NPolicy {
  double split = 5.0;
  std::size_t n_low = 1024;
  std::size_t n_high = 2048;

  [[nodiscard]] std::size_t at(double r) const noexcept { return r <= split ? n_low : n_high; }
  /// Ellipse splits at r = 5, star2 at r = 0.6.
  static NPolicy for_family(const std::string& family);
  static NPolicy fixed(std::size_t n) { return {0.0, n, n}; }
};

struct SweepRecord {
  double r = 0.0;
  double a = 0.0;
  double perimeter = 0.0;
  /// Area of the bounded component.
  double area = 0.0;
  RealVector lambdas;
  std::size_t n = 0;
};

/// Perimeter-normalized family members, one spectrum per r. Points run
/// concurrently.
std::vector<SweepRecord> parameter_sweep(const std::string& family, DomainKind kind,
                                         std::span<const double> r_values, std::size_t k,
                                         double length = 2.0 * std::numbers::pi,
                                         std::optional<NPolicy> policy = std::nullopt,
                                         const SolveOptions& opts = {});

struct CrossingResult {
  std::string family;
  DomainKind kind = DomainKind::BoundedInterior;
  std::size_t k = 0;
  double r = 0.0;
  double a = 0.0;
  double lambda_k = 0.0;
  double lambda_k1 = 0.0;
  /// lambda_{k+1} - lambda_k at r.
  double gap = 0.0;
  std::size_t n = 0;
  std::size_t evaluations = 0;
};

/// Golden-section minimization of lambda_{k+1}(r) - lambda_k(r) on [lo, hi].
/// Throws if the minimum sits on the bracket boundary.
CrossingResult find_crossing(const std::string& family, DomainKind kind, std::size_t k,
                             double lo, double hi, double length = 2.0 * std::numbers::pi,
                             double tol = 1e-8, std::optional<NPolicy> policy = std::nullopt,
                             const SolveOptions& opts = {});

struct InequalityRecord {
  double r = 0.0;
  double a = 0.0;
  double lambda1 = 0.0;
  double lambda2 = 0.0;
  /// Bounded: 1/l1 + 1/l2 and l1 l2.
  double inverse_sum = 0.0;
  double product = 0.0;
  /// Exterior: sqrt(pi / area).
  double bound = 0.0;
  /// Margin by which each inequality holds (negative if violated).
  double slack_sum = 0.0;
  double slack_product = 0.0;
  double slack_bound = 0.0;
  bool holds = false;
};

struct InequalityReport {
  DomainKind kind = DomainKind::BoundedInterior;
  double tol = 0.0;
  std::vector<InequalityRecord> rows;
  bool all_hold = false;
};

/// Bounded: 1/l1 + 1/l2 >= 2 and l1 l2 <= 1 (requires perimeter 2 pi).
/// Exterior: l1 <= sqrt(pi/|G|).
InequalityReport check_inequalities(std::span<const SweepRecord> sweep, DomainKind kind,
                                    double tol = 1e-10);

struct GapRecord {
  std::size_t k = 0;
  double eps = 0.0;
  double eps_prime = 0.0;
};

/// eps_k = lambda_{2k-1} - 2 pi k/L, eps'_k = lambda_{2k} - 2 pi k/L for k = 1..k_max.
std::vector<GapRecord> asymptotic_gaps(std::span<const double> lambdas, double perimeter,
                                       std::size_t k_max);
std::vector<GapRecord> asymptotic_gaps(const SteklovSpectrum& s, std::size_t k_max);

/// max |eps|, |eps'| over k in [k_lo, k_hi].
double max_gap(std::span<const GapRecord> gaps, std::size_t k_lo, std::size_t k_hi);

}  // namespace steklov
