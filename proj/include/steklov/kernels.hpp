#pragma once

#include <cstddef>

#include "steklov/matrix.hpp"

// Dense compute kernels. The default versions are cache-blocked and
// OpenMP-parallel; the `reference` namespace holds straightforward serial
// loops that the tests and the benchmark compare against.
namespace steklov::kernels {

/// C += alpha * A * B for row-major blocks with leading dimensions lda, ldb, ldc.
/// A is m x k, B is k x n, C is m x n.
void gemm_update(std::size_t m, std::size_t n, std::size_t k, double alpha,
                 const double* a, std::size_t lda, const double* b, std::size_t ldb,
                 double* c, std::size_t ldc);

RealMatrix multiply(const RealMatrix& a, const RealMatrix& b);

namespace reference {

void gemm_update(std::size_t m, std::size_t n, std::size_t k, double alpha,
                 const double* a, std::size_t lda, const double* b, std::size_t ldb,
                 double* c, std::size_t ldc);

RealMatrix multiply(const RealMatrix& a, const RealMatrix& b);

}  // namespace reference

}  // namespace steklov::kernels
