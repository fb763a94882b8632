#include <atomic>

#include "imcflab/simd.hpp"

namespace imcf::simd {

namespace {

struct Table {
  void (*matvec)(const double*, const double*, double*, std::size_t,
                 std::size_t);
  double (*dot)(const double*, const double*, std::size_t);
  double (*dot3)(const double*, const double*, const double*, std::size_t);
  void (*axpy)(double, const double*, double*, std::size_t);
  Backend which;
};

constexpr Table kScalar{detail::matvec_scalar, detail::dot_scalar,
                        detail::dot3_scalar, detail::axpy_scalar,
                        Backend::Scalar};

#if defined(__x86_64__) || defined(_M_X64)
constexpr Table kAvx2{detail::matvec_avx2, detail::dot_avx2, detail::dot3_avx2,
                      detail::axpy_avx2, Backend::Avx2};
#endif

Table probe() {
#if defined(__x86_64__) || defined(_M_X64)
  if (__builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma"))
    return kAvx2;
#endif
  return kScalar;
}

std::atomic<const Table*> g_table{nullptr};

const Table& table() {
  const Table* t = g_table.load(std::memory_order_acquire);
  if (!t) {
    static const Table probed = probe();
    g_table.store(&probed, std::memory_order_release);
    return probed;
  }
  return *t;
}

}  // namespace

bool avx2_available() {
#if defined(__x86_64__) || defined(_M_X64)
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
  return false;
#endif
}

void set_backend(Backend b) {
  switch (b) {
    case Backend::Scalar:
      g_table.store(&kScalar, std::memory_order_release);
      break;
    case Backend::Avx2:
#if defined(__x86_64__) || defined(_M_X64)
      if (avx2_available()) {
        g_table.store(&kAvx2, std::memory_order_release);
        break;
      }
#endif
      g_table.store(&kScalar, std::memory_order_release);
      break;
    case Backend::Auto: {
      static const Table probed = probe();
      g_table.store(&probed, std::memory_order_release);
      break;
    }
  }
}

Backend active_backend() { return table().which; }

const char* backend_name() {
  return table().which == Backend::Avx2 ? "avx2" : "scalar";
}

void matvec(const double* A, const double* x, double* y, std::size_t rows,
            std::size_t cols) {
  table().matvec(A, x, y, rows, cols);
}

double dot(const double* a, const double* b, std::size_t n) {
  return table().dot(a, b, n);
}

double dot3(const double* a, const double* b, const double* c, std::size_t n) {
  return table().dot3(a, b, c, n);
}

void axpy(double alpha, const double* x, double* y, std::size_t n) {
  table().axpy(alpha, x, y, n);
}

}  // namespace imcf::simd
