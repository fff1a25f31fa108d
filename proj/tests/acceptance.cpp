// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on failure.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <exception>
#include <functional>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "steklov/eigensolver.hpp"
#include "steklov/extension.hpp"
#include "steklov/operators.hpp"
#include "steklov/steklov.hpp"
#include "steklov/studies.hpp"

using namespace steklov;

namespace {

constexpr double kPi = std::numbers::pi;

struct Outcome {
  bool pass = true;
  std::string detail;
};

// Records the worst value of a quantity and whether it stayed within bound.
struct Worst {
  double value = 0.0;
  void add(double v) { value = std::max(value, v); }
};

std::string sci(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2e", v);
  return buf;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

Outcome disk_exactness() {
  const auto t0 = std::chrono::steady_clock::now();
  const auto disk = make_builtin("disk", {}, DomainKind::BoundedInterior);
  const RealVector exact = disk_spectrum(10);
  Worst err;
  for (std::size_t n = 24; n <= 64; n += 2) {
    const SteklovSpectrum s = solve_spectrum(disk, n, 10);
    for (std::size_t i = 0; i < 10; ++i) err.add(std::abs(s.lambdas[i] - exact[i]) / exact[i]);
  }
  const double t = seconds_since(t0);
  return {err.value <= 1e-12 && t < 1.0,
          "max rel. error " + sci(err.value) + ", " + sci(t) + " s"};
}

Outcome table2() {
  const double g1[] = {1.61465185265077, 1.61465185265086, 2.97737736702950, 2.97737736702974,
                       5.48337898612383, 5.48337898612393, 6.70773879741621, 6.70773879741642,
                       7.65773980917837, 9.01958292273808};
  const double g2[] = {0.82158389917705, 2.88853778576938, 2.94484661549781, 3.34172628966417,
                       4.55074794910963, 5.03673963982603, 6.23305352696130, 6.32549098892433,
                       7.80580771944321, 7.90841610595226};
  Worst err;
  for (const auto& [name, ref] : {std::pair{"g1", g1}, std::pair{"g2", g2}}) {
    const SteklovSpectrum s = solve_spectrum(make_builtin(name, {}, DomainKind::BoundedInterior), 1024, 10);
    for (std::size_t i = 0; i < 10; ++i) err.add(std::abs(s.lambdas_scaled[i] - ref[i]));
  }
  return {err.value <= 1e-9, "max abs. error " + sci(err.value)};
}

Outcome table3() {
  const double in[] = {0.40305996416748, 0.52424200142763, 1.18270198665242,
                       1.38370805250322, 1.72113574153495, 2.01779563230560,
                       2.20083979220023, 2.70613635836981, 2.78466524903348};
  const double ex[] = {0.54467770056080, 0.57081699412402, 1.12953414359678,
                       1.30930577399346, 1.74564067269481, 1.82146960379857,
                       2.29287781627365, 2.44997484632459, 2.90350756743372};
  Worst err;
  for (const auto& [kind, ref] : {std::pair{DomainKind::BoundedInterior, in},
                                  std::pair{DomainKind::UnboundedExterior, ex}}) {
    const SteklovSpectrum s = solve_spectrum(make_builtin("kite", {}, kind), 1024, 9);
    for (std::size_t i = 0; i < 9; ++i) err.add(std::abs(s.lambdas[i] - ref[i]));
  }
  return {err.value <= 1e-9, "max abs. error " + sci(err.value)};
}

Outcome convergence_shape() {
  std::vector<std::size_t> ns;
  for (std::size_t n = 160; n <= 400; n += 40) ns.push_back(n);
  Worst err;
  for (auto kind : {DomainKind::BoundedInterior, DomainKind::UnboundedExterior}) {
    const auto rows = convergence_study(make_builtin("kite", {}, kind), ns, 10, 1024);
    for (const auto& r : rows)
      for (double e : r.rel_errors) err.add(e);
  }
  return {err.value < 1e-12, "max rel. error over n >= 160: " + sci(err.value)};
}

Outcome operator_structure() {
  const DtnDiscretization dtn(make_builtin("g1", {}, DomainKind::BoundedInterior), 256);
  const auto count = [](const ComplexVector& ev, double tol, std::size_t& zeros, double& off) {
    zeros = 0;
    off = 0.0;
    for (complex z : ev) {
      if (std::abs(z) <= tol) {
        ++zeros;
        continue;
      }
      off = std::max(off, std::min(std::abs(z - complex(0, 1)), std::abs(z + complex(0, 1))));
    }
  };
  std::size_t zeros = 0;
  double off = 0.0;
  count(eigenvalues(dtn.e()), 1e-8, zeros, off);
  bool pass = zeros == 2 && off <= 1e-8;
  std::string detail = "E(g1): " + std::to_string(zeros) + " zeros, max dist to +-i " + sci(off);
  double koff = 0.0;
  for (std::size_t n : {8, 32, 64, 128, 256}) {
    std::size_t kz = 0;
    double o = 0.0;
    count(eigenvalues(wittich_matrix(n)), 1e-12, kz, o);
    pass = pass && kz == 2 && o <= 1e-12;
    koff = std::max(koff, o);
  }
  return {pass, detail + "; K: max dist " + sci(koff)};
}

Outcome conjugation_oracle() {
  const std::vector<std::pair<std::string, FamilyParams>> curves = {
      {"disk", {}}, {"ellipse", {2.0, 1.0}}, {"star2", {0.5, 1.0}},
      {"kite", {}}, {"g1", {}},              {"g2", {}}};
  Worst err;
  std::string worst_case;
  for (const auto& [family, params] : curves) {
    for (auto kind : {DomainKind::BoundedInterior, DomainKind::UnboundedExterior}) {
      const BoundaryCurve c = make_builtin(family, params, kind);
      const DtnDiscretization dtn(c, 512);
      const Grid& g = dtn.grid();
      const complex beta = node_centroid(c);
      for (int m = 1; m <= 5; ++m) {
        RealVector re(512), im(512);
        for (std::size_t j = 0; j < 512; ++j) {
          const complex f = kind == DomainKind::BoundedInterior ? std::pow(g.eta[j] - c.alpha, m)
                                                                : std::pow(g.eta[j] - beta, -m);
          re[j] = f.real();
          im[j] = f.imag();
        }
        const RealVector mu = matvec<double>(dtn.e(), re);
        double e = 0.0;
        for (std::size_t j = 0; j < 512; ++j) e = std::max(e, std::abs(mu[j] - im[j]));
        if (e > err.value) worst_case = c.name + " " + to_string(kind) + " m=" + std::to_string(m);
        err.add(e);
      }
    }
  }
  return {err.value <= 1e-9, "max error " + sci(err.value) + " (" + worst_case + ")"};
}

Outcome crossings() {
  const auto c2 = find_crossing("ellipse", DomainKind::BoundedInterior, 2, 1.5, 2.5);
  const auto c3 = find_crossing("ellipse", DomainKind::BoundedInterior, 3, 2.5, 3.5);
  const double r2 = std::abs(c2.r - 1.983873708359900) / 1.983873708359900;
  const double r3 = std::abs(c3.r - 3.117811741879000) / 3.117811741879000;
  const double l2 = std::abs(c2.lambda_k - 1.679239176823);
  return {r2 <= 1e-6 && r3 <= 1e-6 && l2 <= 1e-8,
          "rel. error r*: " + sci(r2) + ", " + sci(r3) + "; lambda error " + sci(l2)};
}

Outcome inequalities() {
  std::vector<double> rs;
  for (int i = 0; i <= 18; ++i) rs.push_back(1.0 + 0.5 * i);
  const auto b = parameter_sweep("ellipse", DomainKind::BoundedInterior, rs, 2);
  const auto e = parameter_sweep("ellipse", DomainKind::UnboundedExterior, rs, 2);
  const InequalityReport rb = check_inequalities(b, DomainKind::BoundedInterior, 1e-10);
  const InequalityReport re = check_inequalities(e, DomainKind::UnboundedExterior, 1e-10);
  bool pass = rb.all_hold && re.all_hold;
  double bound_err = 0.0;
  for (const auto& row : re.rows)
    bound_err = std::max(bound_err, std::abs(row.bound - 1.0 / (row.a * std::sqrt(row.r))));
  pass = pass && bound_err <= 1e-10;
  const double eq = std::max({std::abs(rb.rows[0].inverse_sum - 2.0),
                              std::abs(rb.rows[0].product - 1.0),
                              std::abs(re.rows[0].lambda1 - re.rows[0].bound)});
  pass = pass && eq <= 1e-10;
  double min_slack = std::numeric_limits<double>::infinity();
  for (const auto& row : rb.rows) min_slack = std::min({min_slack, row.slack_sum, row.slack_product});
  for (const auto& row : re.rows) min_slack = std::min(min_slack, row.slack_bound);
  return {pass, "19 shapes per kind, min slack " + sci(min_slack) + ", r=1 equality " + sci(eq)};
}

Outcome asymptotics() {
  double g20[2], g50[2];
  int i = 0;
  for (auto kind : {DomainKind::BoundedInterior, DomainKind::UnboundedExterior}) {
    const SteklovSpectrum s = solve_spectrum(make_builtin("kite", {}, kind), 1024, 100);
    const auto gaps = asymptotic_gaps(s, 50);
    g20[i] = std::abs(gaps[19].eps_prime);
    g50[i] = std::abs(gaps[49].eps_prime);
    ++i;
  }
  return {g50[0] < g20[0] && g50[1] < g20[1] && g20[1] < g20[0],
          "interior " + sci(g20[0]) + " -> " + sci(g50[0]) + ", exterior " + sci(g20[1]) +
              " -> " + sci(g50[1])};
}

Outcome harmonic_extension() {
  Worst err;
  const auto eval = [](const BoundaryCurve& c, std::size_t n, auto f, complex z) {
    const Grid g = Grid::build(c, n);
    ComplexVector v(n);
    for (std::size_t j = 0; j < n; ++j) v[j] = f(g.eta[j]);
    const BoundaryFunction bf = BoundaryFunction::make(g, c.kind, std::move(v));
    const complex pts[] = {z};
    return std::pair{cauchy_eval(bf, pts).values[0], bf.f_infinity};
  };
  const auto disk = make_builtin("disk", {}, DomainKind::BoundedInterior);
  const auto circle = make_builtin("disk", {}, DomainKind::UnboundedExterior);
  const auto g1 = make_builtin("g1", {}, DomainKind::BoundedInterior);
  const auto kite = make_builtin("kite", {}, DomainKind::UnboundedExterior);
  err.add(std::abs(eval(disk, 64, [](complex z) { return z; }, {0.3, 0.4}).first - complex(0.3, 0.4)));
  err.add(std::abs(eval(g1, 256, [](complex z) { return (z - 8.0) * (z - 8.0); }, {8.0, 2.0}).first + 4.0));
  err.add(std::abs(eval(circle, 64, [](complex z) { return 1.0 / z; }, {2.0, 0.0}).first - 0.5));
  err.add(std::abs(eval(circle, 64, [](complex z) { return 1.0 / z; }, {2.0, 0.0}).second));
  err.add(std::abs(eval(circle, 64, [](complex z) { return 3.0 + 1.0 / z; }, {2.0, 0.0}).second - 3.0));
  const auto r = eval(kite, 512, [](complex z) { return 5.0 + 1.0 / (z + 0.2); }, {0.0, 2.5});
  err.add(std::abs(r.second - 5.0));
  err.add(std::abs(r.first - (5.0 + 1.0 / complex(0.2, 2.5))));
  bool pass = err.value <= 1e-12;

  const SteklovSpectrum s = solve_spectrum(disk, 64, 2);
  const Grid g = Grid::build(disk, 64);
  double a = 0.0, b = 0.0;
  for (std::size_t j = 0; j < 64; ++j) {
    a += s.traces(j, 0) * std::cos(g.t[j]) / 32.0;
    b += s.traces(j, 0) * std::sin(g.t[j]) / 32.0;
  }
  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<double> ur(0.0, 1.0), ut(0.0, 2 * kPi);
  ComplexVector pts;
  for (int i = 0; i < 100; ++i) pts.push_back(std::polar(0.98 * std::sqrt(ur(rng)), ut(rng)));
  const FieldSample f = eigenmode_field(disk, s, 1, pts);
  double rel = 0.0;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    const double expect = a * pts[i].real() + b * pts[i].imag();
    rel = std::max(rel, std::abs(f.u[i] - expect) / std::abs(expect));
  }
  pass = pass && rel <= 1e-8;
  return {pass, "oracle error " + sci(err.value) + ", mode-1 rel. error " + sci(rel)};
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"disk exactness, n = 24..64", disk_exactness},
      {"g1/g2 scaled eigenvalues at n = 1024", table2},
      {"kite interior/exterior eigenvalues at n = 1024", table3},
      {"kite convergence below 1e-12 for n >= 160", convergence_shape},
      {"E and K spectra: two zeros, rest at +-i", operator_structure},
      {"analytic conjugation oracle at n = 512", conjugation_oracle},
      {"ellipse eigenvalue crossings", crossings},
      {"isoperimetric inequalities over the ellipse sweep", inequalities},
      {"asymptotic gaps shrink, exterior first", asymptotics},
      {"harmonic extension oracles", harmonic_extension},
  };
  int failed = 0;
  int index = 0;
  for (const auto& [name, check] : criteria) {
    ++index;
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = check();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    if (!o.pass) ++failed;
    std::printf("%s  %2d  %s: %s [%.1f s]\n", o.pass ? "PASS" : "FAIL", index, name.c_str(),
                o.detail.c_str(), seconds_since(t0));
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria passed\n", index - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
