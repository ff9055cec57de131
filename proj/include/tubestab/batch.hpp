#ifndef TUBESTAB_BATCH_HPP
#define TUBESTAB_BATCH_HPP

#include <algorithm>
#include <cstddef>
#include <limits>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace tubestab {

// Execution mode for data-parallel sample sweeps.  `serial` is the reference
// path the tests compare against; `parallel` uses OpenMP when available and
// falls back to the serial loop otherwise.  Reductions below are order
// independent (min/max), so both modes produce bit-identical results.
enum class Exec { serial, parallel };

void set_thread_count(int n);  // 0 = library default

template <class F>
void batch_for(std::size_t count, Exec mode, F&& body) {
#ifdef _OPENMP
  if (mode == Exec::parallel) {
#pragma omp parallel for schedule(static)
    for (long long i = 0; i < static_cast<long long>(count); ++i)
      body(static_cast<std::size_t>(i));
    return;
  }
#endif
  (void)mode;
  for (std::size_t i = 0; i < count; ++i) body(i);
}

// min-reduction over f(i); identity-safe for count == 0
template <class F>
double batch_min(std::size_t count, Exec mode, F&& f) {
  double result = std::numeric_limits<double>::infinity();
#ifdef _OPENMP
  if (mode == Exec::parallel) {
#pragma omp parallel
    {
      double local = std::numeric_limits<double>::infinity();
#pragma omp for schedule(static) nowait
      for (long long i = 0; i < static_cast<long long>(count); ++i)
        local = std::min(local, f(static_cast<std::size_t>(i)));
#pragma omp critical
      result = std::min(result, local);
    }
    return result;
  }
#endif
  (void)mode;
  for (std::size_t i = 0; i < count; ++i) result = std::min(result, f(i));
  return result;
}

template <class F>
double batch_max(std::size_t count, Exec mode, F&& f) {
  double result = -std::numeric_limits<double>::infinity();
#ifdef _OPENMP
  if (mode == Exec::parallel) {
#pragma omp parallel
    {
      double local = -std::numeric_limits<double>::infinity();
#pragma omp for schedule(static) nowait
      for (long long i = 0; i < static_cast<long long>(count); ++i)
        local = std::max(local, f(static_cast<std::size_t>(i)));
#pragma omp critical
      result = std::max(result, local);
    }
    return result;
  }
#endif
  (void)mode;
  for (std::size_t i = 0; i < count; ++i) result = std::max(result, f(i));
  return result;
}

// count of indices where pred(i) holds
template <class F>
std::size_t batch_count(std::size_t count, Exec mode, F&& pred) {
  std::size_t total = 0;
#ifdef _OPENMP
  if (mode == Exec::parallel) {
    long long acc = 0;
#pragma omp parallel for schedule(static) reduction(+ : acc)
    for (long long i = 0; i < static_cast<long long>(count); ++i)
      acc += pred(static_cast<std::size_t>(i)) ? 1 : 0;
    return static_cast<std::size_t>(acc);
  }
#endif
  (void)mode;
  for (std::size_t i = 0; i < count; ++i) total += pred(i) ? 1 : 0;
  return total;
}

}  // namespace tubestab

#endif
