#pragma once

// Data-parallel map used by every checker that fans out over basis words or
// overlaps. Results always come back in input order, so a report built from
// the serial reference and one built from the OpenMP kernel are identical.

#include <cstddef>
#include <exception>
#include <type_traits>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace qsp {

enum class Execution { serial, parallel };

inline bool openmp_enabled() {
#ifdef _OPENMP
  return true;
#else
  return false;
#endif
}

/// Serial reference: out[i] = fn(items[i]).
template <class T, class Fn>
auto map_serial(const std::vector<T>& items, Fn&& fn) {
  using R = std::invoke_result_t<Fn&, const T&>;
  std::vector<R> out;
  out.reserve(items.size());
  for (const auto& item : items) out.push_back(fn(item));
  return out;
}

/// OpenMP kernel; falls back to the serial loop when OpenMP is not compiled in.
/// The first exception thrown by any iteration is rethrown after the loop.
template <class T, class Fn>
auto map_parallel(const std::vector<T>& items, Fn&& fn) {
  using R = std::invoke_result_t<Fn&, const T&>;
#ifdef _OPENMP
  std::vector<R> out(items.size());
  std::exception_ptr error;
  const auto n = static_cast<long>(items.size());
#pragma omp parallel for schedule(dynamic, 1)
  for (long i = 0; i < n; ++i) {
    try {
      out[static_cast<std::size_t>(i)] = fn(items[static_cast<std::size_t>(i)]);
    } catch (...) {
#pragma omp critical(qsp_map_error)
      if (!error) error = std::current_exception();
    }
  }
  if (error) std::rethrow_exception(error);
  return out;
#else
  return map_serial(items, std::forward<Fn>(fn));
#endif
}

template <class T, class Fn>
auto map_words(Execution exec, const std::vector<T>& items, Fn&& fn) {
  if (exec == Execution::parallel) return map_parallel(items, std::forward<Fn>(fn));
  return map_serial(items, std::forward<Fn>(fn));
}

}  // namespace qsp
