#include "steklov/studies.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <limits>

namespace steklov {

namespace {

constexpr double kPi = std::numbers::pi;

void check_n_list(std::span<const std::size_t> n_list) {
  if (n_list.empty()) throw InvalidArgument("convergence study needs at least one n");
  for (std::size_t n : n_list)
    if (n % 2 != 0) throw InvalidArgument("convergence study: n must be even");
}

std::vector<ConvergenceRecord> compare(const BoundaryCurve& curve,
                                       std::span<const std::size_t> n_list,
                                       std::span<const double> ref, const SolveOptions& opts) {
  std::vector<ConvergenceRecord> out;
  for (std::size_t n : n_list) {
    const SteklovSpectrum s = solve_spectrum(curve, n, ref.size(), opts);
    ConvergenceRecord rec;
    rec.n = n;
    rec.lambdas = s.lambdas;
    for (std::size_t i = 0; i < ref.size(); ++i)
      rec.rel_errors.push_back(std::abs(s.lambdas[i] - ref[i]) / std::abs(ref[i]));
    out.push_back(std::move(rec));
  }
  return out;
}

void check_family_range(const std::string& family, double r) {
  (void)make_builtin(family, {r, 1.0}, DomainKind::BoundedInterior);
}

}  // namespace

RealVector disk_spectrum(std::size_t k, double radius) {
  RealVector v(k);
  for (std::size_t i = 0; i < k; ++i) v[i] = static_cast<double>(i / 2 + 1) / radius;
  return v;
}

std::vector<ConvergenceRecord> convergence_study(const BoundaryCurve& curve,
                                                 std::span<const std::size_t> n_list,
                                                 std::size_t k, std::size_t n_ref,
                                                 const SolveOptions& opts) {
  check_n_list(n_list);
  if (n_ref % 2 != 0) throw InvalidArgument("convergence study: n_ref must be even");
  if (n_ref <= *std::max_element(n_list.begin(), n_list.end()))
    throw InvalidArgument("convergence study: n_ref must exceed every n in the list");
  const SteklovSpectrum ref = solve_spectrum(curve, n_ref, k, opts);
  return compare(curve, n_list, ref.lambdas, opts);
}

std::vector<ConvergenceRecord> convergence_study(const BoundaryCurve& curve,
                                                 std::span<const std::size_t> n_list,
                                                 std::span<const double> reference,
                                                 const SolveOptions& opts) {
  check_n_list(n_list);
  if (reference.empty()) throw InvalidArgument("convergence study: empty reference");
  return compare(curve, n_list, reference, opts);
}

NPolicy NPolicy::for_family(const std::string& family) {
  if (family == "star2") return {0.6, 1024, 2048};
  return {5.0, 1024, 2048};
}

std::vector<SweepRecord> parameter_sweep(const std::string& family, DomainKind kind,
                                         std::span<const double> r_values, std::size_t k,
                                         double length, std::optional<NPolicy> policy,
                                         const SolveOptions& opts) {
  if (!family_is_scalable(family))
    throw InvalidArgument("family '" + family + "' has no shape parameter to sweep");
  if (!(length > 0.0)) throw InvalidArgument("sweep length must be positive");
  for (double r : r_values) check_family_range(family, r);
  const NPolicy pol = policy.value_or(NPolicy::for_family(family));

  std::vector<SweepRecord> out(r_values.size());
  std::vector<std::exception_ptr> errors(r_values.size());
  const auto m = static_cast<std::ptrdiff_t>(r_values.size());
#pragma omp parallel for schedule(dynamic, 1)
  for (std::ptrdiff_t ii = 0; ii < m; ++ii) {
    const auto i = static_cast<std::size_t>(ii);
    try {
      const double r = r_values[i];
      const std::size_t n = pol.at(r);
      const BoundaryCurve c = scale_to_perimeter(family, r, length, n, kind);
      const SteklovSpectrum s = solve_spectrum(c, n, k, opts);
      out[i] = {r, c.params.a, s.perimeter, s.area, s.lambdas, n};
    } catch (...) {
      errors[i] = std::current_exception();
    }
  }
  for (const auto& e : errors)
    if (e) std::rethrow_exception(e);
  return out;
}

CrossingResult find_crossing(const std::string& family, DomainKind kind, std::size_t k,
                             double lo, double hi, double length, double tol,
                             std::optional<NPolicy> policy, const SolveOptions& opts) {
  if (!family_is_scalable(family))
    throw InvalidArgument("family '" + family + "' has no shape parameter to search");
  if (k == 0) throw InvalidArgument("crossing index k must be at least 1");
  if (!(lo < hi)) throw InvalidArgument("crossing bracket must satisfy lo < hi");
  if (!(tol > 0.0)) throw InvalidArgument("crossing tolerance must be positive");
  check_family_range(family, lo);
  check_family_range(family, hi);
  const NPolicy pol = policy.value_or(NPolicy::for_family(family));

  CrossingResult best;
  best.family = family;
  best.kind = kind;
  best.k = k;
  best.gap = std::numeric_limits<double>::infinity();
  std::size_t evals = 0;
  auto gap = [&](double r) {
    const std::size_t n = pol.at(r);
    const BoundaryCurve c = scale_to_perimeter(family, r, length, n, kind);
    const SteklovSpectrum s = solve_spectrum(c, n, k + 1, opts);
    ++evals;
    const double g = s.lambdas[k] - s.lambdas[k - 1];
    if (g < best.gap) {
      best.r = r;
      best.a = c.params.a;
      best.lambda_k = s.lambdas[k - 1];
      best.lambda_k1 = s.lambdas[k];
      best.gap = g;
      best.n = n;
    }
    return g;
  };

  const double ratio = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = lo, b = hi;
  double c = b - ratio * (b - a), d = a + ratio * (b - a);
  double fc = gap(c), fd = gap(d);
  while (b - a > tol) {
    if (fc < fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - ratio * (b - a);
      fc = gap(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + ratio * (b - a);
      fd = gap(d);
    }
  }
  best.evaluations = evals;
  const double edge = 10.0 * tol;
  if (best.r - lo < edge || hi - best.r < edge)
    throw InvalidArgument("no interior minimum of lambda_" + std::to_string(k + 1) +
                          " - lambda_" + std::to_string(k) + " in the bracket");
  return best;
}

InequalityReport check_inequalities(std::span<const SweepRecord> sweep, DomainKind kind,
                                    double tol) {
  InequalityReport rep;
  rep.kind = kind;
  rep.tol = tol;
  rep.all_hold = true;
  for (const SweepRecord& s : sweep) {
    if (s.lambdas.size() < 2) throw InvalidArgument("inequality check needs two eigenvalues");
    if (!(s.area > 0.0) || !std::isfinite(s.area))
      throw InvalidArgument("inequality check needs the enclosed area");
    InequalityRecord row;
    row.r = s.r;
    row.a = s.a;
    row.lambda1 = s.lambdas[0];
    row.lambda2 = s.lambdas[1];
    if (kind == DomainKind::BoundedInterior) {
      if (std::abs(s.perimeter - 2.0 * kPi) > 1e-8)
        throw InvalidArgument("bounded inequalities assume perimeter 2 pi");
      row.inverse_sum = 1.0 / row.lambda1 + 1.0 / row.lambda2;
      row.product = row.lambda1 * row.lambda2;
      row.slack_sum = row.inverse_sum - 2.0;
      row.slack_product = 1.0 - row.product;
      row.holds = row.slack_sum >= -tol && row.slack_product >= -tol;
    } else {
      row.bound = std::sqrt(kPi / s.area);
      row.slack_bound = row.bound - row.lambda1;
      row.holds = row.slack_bound >= -tol;
    }
    rep.all_hold = rep.all_hold && row.holds;
    rep.rows.push_back(row);
  }
  return rep;
}

std::vector<GapRecord> asymptotic_gaps(std::span<const double> lambdas, double perimeter,
                                       std::size_t k_max) {
  if (k_max == 0) throw InvalidArgument("asymptotic gaps: k_max must be positive");
  if (lambdas.size() < 2 * k_max)
    throw InvalidArgument("asymptotic gaps up to k = " + std::to_string(k_max) + " need " +
                          std::to_string(2 * k_max) + " eigenvalues, have " +
                          std::to_string(lambdas.size()));
  if (!(perimeter > 0.0)) throw InvalidArgument("asymptotic gaps: perimeter must be positive");
  std::vector<GapRecord> out;
  for (std::size_t k = 1; k <= k_max; ++k) {
    const double base = 2.0 * kPi * static_cast<double>(k) / perimeter;
    out.push_back({k, lambdas[2 * k - 2] - base, lambdas[2 * k - 1] - base});
  }
  return out;
}

std::vector<GapRecord> asymptotic_gaps(const SteklovSpectrum& s, std::size_t k_max) {
  return asymptotic_gaps(s.lambdas, s.perimeter, k_max);
}

double max_gap(std::span<const GapRecord> gaps, std::size_t k_lo, std::size_t k_hi) {
  double m = 0.0;
  bool any = false;
  for (const GapRecord& g : gaps) {
    if (g.k < k_lo || g.k > k_hi) continue;
    m = std::max({m, std::abs(g.eps), std::abs(g.eps_prime)});
    any = true;
  }
  if (!any) throw InvalidArgument("max_gap: no records in the requested range");
  return m;
}

}  // namespace steklov
