#include "steklov/kernels.hpp"

#include <algorithm>
#include <vector>

namespace steklov::kernels {

namespace {

constexpr std::size_t kMr = 4;     // rows per micro tile
constexpr std::size_t kNr = 32;    // columns per micro tile
constexpr std::size_t kKc = 256;   // depth of a packed panel
constexpr std::size_t kNc = 2048;  // columns of a packed panel
constexpr std::size_t kMc = 64;    // rows handled by one task

// Copies B[0:kb, 0:nb] into column strips of width kNr, zero padded.
void pack_b(const double* b, std::size_t ldb, std::size_t kb, std::size_t nb, double* out) {
  const std::size_t strips = (nb + kNr - 1) / kNr;
  for (std::size_t s = 0; s < strips; ++s) {
    const std::size_t j0 = s * kNr;
    const std::size_t w = std::min(kNr, nb - j0);
    double* dst = out + s * kb * kNr;
    for (std::size_t p = 0; p < kb; ++p) {
      const double* src = b + p * ldb + j0;
      double* d = dst + p * kNr;
      std::size_t j = 0;
      for (; j < w; ++j) d[j] = src[j];
      for (; j < kNr; ++j) d[j] = 0.0;
    }
  }
}

void micro_kernel_full(std::size_t kb, double alpha, const double* a, std::size_t lda,
                       const double* bp, double* c, std::size_t ldc, std::size_t nr) {
  alignas(64) double acc0[kNr] = {};
  alignas(64) double acc1[kNr] = {};
  alignas(64) double acc2[kNr] = {};
  alignas(64) double acc3[kNr] = {};
  const double* a0 = a;
  const double* a1 = a + lda;
  const double* a2 = a + 2 * lda;
  const double* a3 = a + 3 * lda;
  for (std::size_t p = 0; p < kb; ++p) {
    const double* br = bp + p * kNr;
    const double x0 = a0[p], x1 = a1[p], x2 = a2[p], x3 = a3[p];
#pragma omp simd
    for (std::size_t j = 0; j < kNr; ++j) {
      acc0[j] += x0 * br[j];
      acc1[j] += x1 * br[j];
      acc2[j] += x2 * br[j];
      acc3[j] += x3 * br[j];
    }
  }
  for (std::size_t j = 0; j < nr; ++j) {
    c[j] += alpha * acc0[j];
    c[ldc + j] += alpha * acc1[j];
    c[2 * ldc + j] += alpha * acc2[j];
    c[3 * ldc + j] += alpha * acc3[j];
  }
}

void micro_kernel_edge(std::size_t kb, double alpha, const double* a, std::size_t lda,
                       const double* bp, double* c, std::size_t ldc, std::size_t mr,
                       std::size_t nr) {
  for (std::size_t r = 0; r < mr; ++r) {
    alignas(64) double acc[kNr] = {};
    const double* ar = a + r * lda;
    for (std::size_t p = 0; p < kb; ++p) {
      const double* br = bp + p * kNr;
      const double x = ar[p];
#pragma omp simd
      for (std::size_t j = 0; j < kNr; ++j) acc[j] += x * br[j];
    }
    for (std::size_t j = 0; j < nr; ++j) c[r * ldc + j] += alpha * acc[j];
  }
}

}  // namespace

void gemm_update(std::size_t m, std::size_t n, std::size_t k, double alpha, const double* a,
                 std::size_t lda, const double* b, std::size_t ldb, double* c,
                 std::size_t ldc) {
  if (m == 0 || n == 0 || k == 0 || alpha == 0.0) return;
  std::vector<double> packed(kKc * ((std::min(n, kNc) + kNr - 1) / kNr) * kNr);
  for (std::size_t p0 = 0; p0 < k; p0 += kKc) {
    const std::size_t kb = std::min(kKc, k - p0);
    for (std::size_t j0 = 0; j0 < n; j0 += kNc) {
      const std::size_t nb = std::min(kNc, n - j0);
      const std::size_t strips = (nb + kNr - 1) / kNr;
      pack_b(b + p0 * ldb + j0, ldb, kb, nb, packed.data());
      const double* bp = packed.data();
      const std::ptrdiff_t tasks = static_cast<std::ptrdiff_t>((m + kMc - 1) / kMc);
#pragma omp parallel for schedule(dynamic)
      for (std::ptrdiff_t t = 0; t < tasks; ++t) {
        const std::size_t i0 = static_cast<std::size_t>(t) * kMc;
        const std::size_t i1 = std::min(m, i0 + kMc);
        for (std::size_t s = 0; s < strips; ++s) {
          const std::size_t jj = j0 + s * kNr;
          const std::size_t nr = std::min(kNr, n - jj);
          const double* bs = bp + s * kb * kNr;
          std::size_t i = i0;
          for (; i + kMr <= i1; i += kMr)
            micro_kernel_full(kb, alpha, a + i * lda + p0, lda, bs, c + i * ldc + jj, ldc, nr);
          if (i < i1)
            micro_kernel_edge(kb, alpha, a + i * lda + p0, lda, bs, c + i * ldc + jj, ldc,
                              i1 - i, nr);
        }
      }
    }
  }
}

RealMatrix multiply(const RealMatrix& a, const RealMatrix& b) {
  if (a.cols() != b.rows()) throw InvalidArgument("multiply: dimension mismatch");
  RealMatrix c(a.rows(), b.cols());
  gemm_update(a.rows(), b.cols(), a.cols(), 1.0, a.data(), a.cols(), b.data(), b.cols(),
              c.data(), c.cols());
  return c;
}

namespace reference {

void gemm_update(std::size_t m, std::size_t n, std::size_t k, double alpha, const double* a,
                 std::size_t lda, const double* b, std::size_t ldb, double* c,
                 std::size_t ldc) {
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t p = 0; p < k; ++p) {
      const double x = alpha * a[i * lda + p];
      for (std::size_t j = 0; j < n; ++j) c[i * ldc + j] += x * b[p * ldb + j];
    }
}

RealMatrix multiply(const RealMatrix& a, const RealMatrix& b) {
  if (a.cols() != b.rows()) throw InvalidArgument("multiply: dimension mismatch");
  RealMatrix c(a.rows(), b.cols());
  gemm_update(a.rows(), b.cols(), a.cols(), 1.0, a.data(), a.cols(), b.data(), b.cols(),
              c.data(), c.cols());
  return c;
}

}  // namespace reference

}  // namespace steklov::kernels
