#include "steklov/eigensolver.hpp"

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numeric>
#include <string>
#include <vector>

namespace steklov {

namespace {

using Eigen::Index;
using Eigen::MatrixXcd;
using Eigen::MatrixXd;
using Eigen::VectorXd;

using RowMajorMap =
    Eigen::Map<const Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>>;

constexpr double kEps = std::numeric_limits<double>::epsilon();
// Diagonal gaps below this fraction of |lambda| are treated as exact degeneracy
// when back-substituting for eigenvectors.
constexpr double kDegenerate = 1e-9;

MatrixXd to_eigen(const RealMatrix& a) {
  return RowMajorMap(a.data(), static_cast<Index>(a.rows()), static_cast<Index>(a.cols()));
}

// Deterministic start block (splitmix64), identical on every platform.
class StartVectors {
 public:
  double next() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    z ^= z >> 31;
    return 2.0 * static_cast<double>(z >> 11) * 0x1.0p-53 - 1.0;
  }
  VectorXd vector(Index n) {
    VectorXd v(n);
    for (Index i = 0; i < n; ++i) v(i) = next();
    return v;
  }

 private:
  std::uint64_t state_ = 0x5d3e1b2c4a697f80ULL;
};

// Eigenpair of a real quasi-triangular Schur factor; `vector` is in Schur coordinates.
struct SchurPair {
  double value = 0.0;
  VectorXd vector;
};

bool block_starts_at(const MatrixXd& t, Index i) {
  return i + 1 < t.rows() && t(i + 1, i) != 0.0;
}

// Solves (T - lambda I) x = 0 upward from the seeded rows [0, top]. Rows whose
// diagonal matches lambda to within the degeneracy guard are set to zero so
// that degenerate eigenvalues keep orthogonal Schur directions.
void back_substitute(const MatrixXd& t, Index top, double lambda, VectorXd& x) {
  const double guard = kDegenerate * std::max(std::abs(lambda), kEps * t.norm());
  Index i = top - 1;
  while (i >= 0) {
    if (i >= 1 && t(i, i - 1) != 0.0) {
      double s1 = 0.0, s2 = 0.0;
      for (Index l = i + 1; l <= top; ++l) {
        s1 += t(i - 1, l) * x(l);
        s2 += t(i, l) * x(l);
      }
      const double a11 = t(i - 1, i - 1) - lambda, a12 = t(i - 1, i);
      const double a21 = t(i, i - 1), a22 = t(i, i) - lambda;
      const double det = a11 * a22 - a12 * a21;
      if (std::abs(det) <= guard * guard) {
        x(i - 1) = 0.0;
        x(i) = 0.0;
      } else {
        x(i - 1) = (-s1 * a22 + s2 * a12) / det;
        x(i) = (-s2 * a11 + s1 * a21) / det;
      }
      i -= 2;
    } else {
      double s = 0.0;
      for (Index l = i + 1; l <= top; ++l) s += t(i, l) * x(l);
      const double den = t(i, i) - lambda;
      x(i) = std::abs(den) <= guard ? 0.0 : -s / den;
      i -= 1;
    }
  }
}

// Eigenvalue(s) carried by the diagonal block that starts at position i.
struct DiagonalBlock {
  Index start = 0;
  Index size = 1;
  double re = 0.0;
  double im = 0.0;
};

std::vector<DiagonalBlock> diagonal_blocks(const MatrixXd& t) {
  std::vector<DiagonalBlock> blocks;
  for (Index i = 0; i < t.rows();) {
    if (block_starts_at(t, i)) {
      const double a = t(i, i), b = t(i, i + 1), c = t(i + 1, i), d = t(i + 1, i + 1);
      const double half = 0.5 * (a - d);
      const double disc = half * half + b * c;
      blocks.push_back({i, 2, 0.5 * (a + d), disc < 0.0 ? std::sqrt(-disc) : 0.0});
      i += 2;
    } else {
      blocks.push_back({i, 1, t(i, i), 0.0});
      i += 1;
    }
  }
  return blocks;
}

std::vector<SchurPair> block_eigenpairs(const MatrixXd& t, const DiagonalBlock& blk,
                                        double imag_tol) {
  if (blk.size == 1) {
    VectorXd x = VectorXd::Zero(t.rows());
    x(blk.start) = 1.0;
    back_substitute(t, blk.start, blk.re, x);
    return {{blk.re, x}};
  }
  if (blk.im > imag_tol * std::abs(blk.re))
    throw ConvergenceError("complex eigenvalue " + std::to_string(blk.re) + " +/- " +
                           std::to_string(blk.im) + "i in the wanted set");
  // Imaginary part is negligible: return the two Schur directions of the block.
  std::vector<SchurPair> out;
  for (Index c = 0; c < 2; ++c) {
    VectorXd x = VectorXd::Zero(t.rows());
    x(blk.start + c) = 1.0;
    back_substitute(t, blk.start, blk.re, x);
    out.push_back({blk.re, x});
  }
  return out;
}

// Swaps the adjacent diagonal entries k, k+1 of a complex Schur form.
void swap_adjacent(MatrixXcd& t, MatrixXcd& z, Index k) {
  const complex t11 = t(k, k), t22 = t(k + 1, k + 1), t12 = t(k, k + 1);
  const complex x0 = t12, x1 = t22 - t11;
  const double r = std::hypot(std::abs(x0), std::abs(x1));
  if (r == 0.0) return;
  const complex c = x0 / r, s = x1 / r;
  // G = [[c, -conj(s)], [s, conj(c)]], first column the eigenvector for t22.
  const Index m = t.rows();
  for (Index i = 0; i < m; ++i) {
    const complex a = t(i, k), b = t(i, k + 1);
    t(i, k) = a * c + b * s;
    t(i, k + 1) = -a * std::conj(s) + b * std::conj(c);
  }
  for (Index j = 0; j < m; ++j) {
    const complex a = t(k, j), b = t(k + 1, j);
    t(k, j) = std::conj(c) * a + std::conj(s) * b;
    t(k + 1, j) = -s * a + c * b;
  }
  for (Index i = 0; i < z.rows(); ++i) {
    const complex a = z(i, k), b = z(i, k + 1);
    z(i, k) = a * c + b * s;
    z(i, k + 1) = -a * std::conj(s) + b * std::conj(c);
  }
  t(k + 1, k) = 0.0;
}

// Moves the `count` largest-modulus eigenvalues to the leading positions,
// sorted by decreasing modulus.
void sort_leading(MatrixXcd& t, MatrixXcd& z, Index count) {
  const Index m = t.rows();
  for (Index pos = 0; pos < count; ++pos) {
    Index best = pos;
    for (Index j = pos + 1; j < m; ++j)
      if (std::abs(t(j, j)) > std::abs(t(best, best))) best = j;
    for (Index j = best; j > pos; --j) swap_adjacent(t, z, j - 1);
  }
}

// Real orthonormal basis of the conjugation-closed span of zc's columns.
MatrixXd realify(const MatrixXcd& zc) {
  const Index m = zc.rows(), p = zc.cols();
  MatrixXd stacked(m, 2 * p);
  stacked << zc.real(), zc.imag();
  Eigen::ColPivHouseholderQR<MatrixXd> qr(stacked);
  return qr.householderQ() * MatrixXd::Identity(m, p);
}

// Adjusts a cut position so that it does not separate a conjugate pair.
Index respect_pairs(const MatrixXcd& t, Index p, Index limit) {
  if (p <= 0 || p >= t.rows()) return p;
  const complex a = t(p - 1, p - 1), b = t(p, p);
  const bool pair = std::abs(a.imag()) > 0.0 &&
                    std::abs(b - std::conj(a)) <= 1e-10 * std::max(std::abs(a), 1e-300);
  if (!pair) return p;
  return p + 1 <= limit ? p + 1 : p - 1;
}

struct RawPairs {
  RealVector values;
  std::vector<VectorXd> vectors;
};

EigenPairSet finish(const RealMatrix& a, RawPairs raw, std::size_t k) {
  std::vector<std::size_t> order(raw.values.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
    return std::abs(raw.values[x]) < std::abs(raw.values[y]);
  });
  const std::size_t n = a.rows();
  const double anorm = frobenius_norm(a);
  EigenPairSet out;
  out.values.resize(k);
  out.residuals.resize(k);
  out.vectors = RealMatrix(n, k);
  for (std::size_t c = 0; c < k; ++c) {
    const std::size_t src = order[c];
    VectorXd v = raw.vectors[src];
    const double nv = v.norm();
    if (!(nv > 0.0)) throw ConvergenceError("eigensolver produced a zero eigenvector");
    v /= nv;
    RealVector vs(v.data(), v.data() + n);
    const RealVector av = matvec<double>(a, vs);
    double r = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double d = av[i] - raw.values[src] * vs[i];
      r += d * d;
    }
    out.values[c] = raw.values[src];
    out.residuals[c] = std::sqrt(r) / anorm;
    out.vectors.set_column(c, vs);
  }
  return out;
}

EigenPairSet dense_eigs(const RealMatrix& a, std::size_t k, const EigsOptions& opts) {
  const MatrixXd am = to_eigen(a);
  Eigen::RealSchur<MatrixXd> schur(am);
  const MatrixXd& t = schur.matrixT();
  const MatrixXd& u = schur.matrixU();
  auto blocks = diagonal_blocks(t);
  std::stable_sort(blocks.begin(), blocks.end(), [](const auto& x, const auto& y) {
    return std::hypot(x.re, x.im) < std::hypot(y.re, y.im);
  });
  RawPairs raw;
  for (const auto& blk : blocks) {
    if (raw.values.size() >= k) break;
    for (auto& sp : block_eigenpairs(t, blk, opts.imag_tol)) {
      raw.values.push_back(sp.value);
      raw.vectors.push_back(u * sp.vector);
    }
  }
  EigenPairSet out = finish(a, std::move(raw), k);
  out.dense = true;
  return out;
}

EigenPairSet krylov_schur(const RealMatrix& a, const LuFactorization& lu, std::size_t k,
                          const EigsOptions& opts) {
  const Index n = static_cast<Index>(a.rows());
  const Index b = static_cast<Index>(std::max<std::size_t>(1, opts.block_size));
  const Index kw = static_cast<Index>(k);
  Index m = opts.krylov_dim ? static_cast<Index>(opts.krylov_dim)
                            : std::max<Index>(2 * kw + 4, 20);
  m = std::min(m, n - 2 * b);
  if (m < kw + 2 * b)
    throw InvalidArgument("eigensolver: Krylov dimension too small for k = " +
                          std::to_string(k));

  MatrixXd v = MatrixXd::Zero(n, m + 2 * b);
  MatrixXd h = MatrixXd::Zero(m + 2 * b, m + b);
  StartVectors start;

  auto orthogonalize_fresh = [&](Index col) {
    VectorXd r = start.vector(n);
    for (int pass = 0; pass < 2; ++pass) r -= v.leftCols(col) * (v.leftCols(col).transpose() * r);
    v.col(col) = r / r.norm();
  };
  for (Index c = 0; c < b; ++c) orthogonalize_fresh(c);

  EigenPairSet result;
  Index j = 0;
  std::size_t restarts = 0, solves = 0;
  MatrixXd w(n, b);

  for (;;) {
    while (j < m) {
      for (Index c = 0; c < b; ++c) {
        VectorXd col = v.col(j + c);
        lu.solve_in_place(std::span<double>(col.data(), static_cast<std::size_t>(n)));
        w.col(c) = col;
        ++solves;
      }
      const double scale = w.colwise().norm().maxCoeff();
      const Index basis = j + b;
      MatrixXd coeff = v.leftCols(basis).transpose() * w;
      w -= v.leftCols(basis) * coeff;
      MatrixXd again = v.leftCols(basis).transpose() * w;
      w -= v.leftCols(basis) * again;
      coeff += again;
      h.block(0, j, basis, b) = coeff;
      for (Index c = 0; c < b; ++c) {
        for (Index c2 = 0; c2 < c; ++c2) {
          const double r = v.col(basis + c2).dot(w.col(c));
          w.col(c) -= r * v.col(basis + c2);
          h(basis + c2, j + c) += r;
        }
        const double nrm = w.col(c).norm();
        if (nrm <= 1e-12 * scale) {
          h(basis + c, j + c) = 0.0;
          orthogonalize_fresh(basis + c);
        } else {
          h(basis + c, j + c) = nrm;
          v.col(basis + c) = w.col(c) / nrm;
        }
      }
      j += b;
    }

    const MatrixXd hm = h.topLeftCorner(j, j);
    const MatrixXd resid = h.block(j, 0, b, j);
    Eigen::ComplexSchur<MatrixXd> cs(hm);
    MatrixXcd t = cs.matrixT();
    MatrixXcd z = cs.matrixU();
    Index keep = std::min<Index>(kw + (j - kw) / 2, j - b);
    keep = std::max(keep, kw);
    sort_leading(t, z, keep + 1);
    const MatrixXcd bz = resid.cast<complex>() * z;

    bool converged = true;
    for (Index i = 0; i < kw; ++i)
      if (bz.col(i).norm() > opts.tol * std::abs(t(i, i))) {
        converged = false;
        break;
      }

    if (converged) {
      const Index kk = respect_pairs(t, kw, j);
      const MatrixXd y = realify(z.leftCols(kk));
      const MatrixXd s = y.transpose() * hm * y;
      Eigen::RealSchur<MatrixXd> rs(s);
      const MatrixXd& ts = rs.matrixT();
      const MatrixXd basis = v.leftCols(j) * y * rs.matrixU();
      RawPairs raw;
      for (const auto& blk : diagonal_blocks(ts))
        for (auto& sp : block_eigenpairs(ts, blk, opts.imag_tol)) {
          if (sp.value == 0.0) throw SingularMatrix("eigensolver: zero Ritz value");
          raw.values.push_back(1.0 / sp.value);
          raw.vectors.push_back(basis * sp.vector);
        }
      result = finish(a, std::move(raw), k);
      break;
    }
    if (restarts >= opts.max_restarts)
      throw ConvergenceError("eigensolver: no convergence after " +
                             std::to_string(restarts) + " restarts");

    const Index p = respect_pairs(t, keep, j - b);
    const MatrixXd y = realify(z.leftCols(p));
    const MatrixXd s = y.transpose() * hm * y;
    const MatrixXd coupling = resid * y;
    const MatrixXd kept = v.leftCols(j) * y;
    const MatrixXd frontier = v.middleCols(j, b);
    v.setZero();
    v.leftCols(p) = kept;
    v.middleCols(p, b) = frontier;
    h.setZero();
    h.topLeftCorner(p, p) = s;
    h.block(p, 0, b, p) = coupling;
    j = p;
    ++restarts;
  }
  result.restarts = restarts;
  result.solves = solves;
  return result;
}

void check_request(const RealMatrix& a, std::size_t k) {
  if (!a.is_square() || a.empty()) throw InvalidArgument("eigensolver: matrix must be square");
  if (k == 0 || k > a.rows())
    throw InvalidArgument("eigensolver: need 0 < k <= n (k = " + std::to_string(k) +
                          ", n = " + std::to_string(a.rows()) + ")");
}

}  // namespace

EigenPairSet smallest_magnitude_eigs(const RealMatrix& a, std::size_t k,
                                     const EigsOptions& opts) {
  check_request(a, k);
  if (!opts.force_arnoldi && a.rows() <= opts.dense_threshold) return dense_eigs(a, k, opts);
  const LuFactorization lu(a);
  return krylov_schur(a, lu, k, opts);
}

EigenPairSet smallest_magnitude_eigs(const RealMatrix& a, const LuFactorization& lu,
                                     std::size_t k, const EigsOptions& opts) {
  check_request(a, k);
  if (lu.size() != a.rows()) throw InvalidArgument("eigensolver: factorization size mismatch");
  if (!opts.force_arnoldi && a.rows() <= opts.dense_threshold) return dense_eigs(a, k, opts);
  return krylov_schur(a, lu, k, opts);
}

ComplexVector eigenvalues(const RealMatrix& a) {
  if (!a.is_square()) throw InvalidArgument("eigenvalues: matrix must be square");
  Eigen::EigenSolver<MatrixXd> es(to_eigen(a), false);
  if (es.info() != Eigen::Success) throw ConvergenceError("eigenvalues: QR iteration failed");
  const auto& ev = es.eigenvalues();
  return ComplexVector(ev.data(), ev.data() + ev.size());
}

RealVector singular_values(const RealMatrix& a) {
  Eigen::BDCSVD<MatrixXd> svd(to_eigen(a));
  const auto& sv = svd.singularValues();
  return RealVector(sv.data(), sv.data() + sv.size());
}

}  // namespace steklov
