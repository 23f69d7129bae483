#pragma once

#include <cstddef>
#include <exception>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace confext {

// Serial is the reference path; OpenMP must reproduce it bit for bit.
enum class Exec { Serial, OpenMP };

Exec default_exec();
void set_default_exec(Exec e);

// Fixed-tree pairwise summation; the tree depends only on n.
double pairwise_sum(const double* x, std::size_t n);
inline double pairwise_sum(const std::vector<double>& x) {
  return pairwise_sum(x.data(), x.size());
}

inline bool in_parallel_region() {
#ifdef _OPENMP
  return omp_in_parallel() != 0;
#else
  return false;
#endif
}

// out[i] = f(i) for i < n. Exceptions are rethrown for the lowest failing
// index, so the serial and parallel paths report the same error.
template <class F>
void parallel_fill(std::size_t n, F&& f, double* out, Exec exec) {
  if (exec == Exec::Serial || in_parallel_region() || n < 2) {
    for (std::size_t i = 0; i < n; ++i) out[i] = f(i);
    return;
  }
  std::size_t bad = n;
  std::exception_ptr err;
#pragma omp parallel for schedule(dynamic, 16)
  for (std::ptrdiff_t k = 0; k < static_cast<std::ptrdiff_t>(n); ++k) {
    std::size_t i = static_cast<std::size_t>(k);
    try {
      out[i] = f(i);
    } catch (...) {
#pragma omp critical(confext_fill_error)
      if (i < bad) {
        bad = i;
        err = std::current_exception();
      }
    }
  }
  if (err) std::rethrow_exception(err);
}

template <class F>
std::vector<double> parallel_map(std::size_t n, F&& f, Exec exec = default_exec()) {
  std::vector<double> out(n);
  parallel_fill(n, f, out.data(), exec);
  return out;
}

}  // namespace confext
