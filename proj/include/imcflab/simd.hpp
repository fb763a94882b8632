#pragma once

#include <cstddef>

// Small dense kernels behind the geometry pipeline: collocation matrix
// application and weighted quadrature reductions. A scalar reference
// implementation is always available; an AVX2+FMA variant is selected at
// runtime on x86-64 when the CPU supports it. The two are equivalence-tested.

namespace imcf::simd {

enum class Backend { Auto, Scalar, Avx2 };

// Force a backend (Scalar/Avx2) or re-probe the CPU (Auto). Avx2 on an
// unsupported host falls back to Scalar.
void set_backend(Backend b);
Backend active_backend();
const char* backend_name();
bool avx2_available();

// y = A * x with A row-major (rows x cols)
void matvec(const double* A, const double* x, double* y, std::size_t rows,
            std::size_t cols);

// sum_i a[i] * b[i]
double dot(const double* a, const double* b, std::size_t n);

// sum_i a[i] * b[i] * c[i]  (weighted quadrature)
double dot3(const double* a, const double* b, const double* c, std::size_t n);

// y[i] += alpha * x[i]
void axpy(double alpha, const double* x, double* y, std::size_t n);

namespace detail {
void matvec_scalar(const double* A, const double* x, double* y,
                   std::size_t rows, std::size_t cols);
double dot_scalar(const double* a, const double* b, std::size_t n);
double dot3_scalar(const double* a, const double* b, const double* c,
                   std::size_t n);
void axpy_scalar(double alpha, const double* x, double* y, std::size_t n);

#if defined(__x86_64__) || defined(_M_X64)
void matvec_avx2(const double* A, const double* x, double* y, std::size_t rows,
                 std::size_t cols);
double dot_avx2(const double* a, const double* b, std::size_t n);
double dot3_avx2(const double* a, const double* b, const double* c,
                 std::size_t n);
void axpy_avx2(double alpha, const double* x, double* y, std::size_t n);
#endif
}  // namespace detail

}  // namespace imcf::simd
