#pragma once

#include <cstdint>
#include <exception>

namespace asmval::detail {

// Runs body(i) for i in [0, count) across the OpenMP team. The first exception
// thrown by any iteration is rethrown on the calling thread after the loop.
template <class Body>
void parallel_for(std::int64_t count, Body&& body) {
  std::exception_ptr failure;
#pragma omp parallel for schedule(dynamic, 8)
  for (std::int64_t i = 0; i < count; ++i) {
    try {
      body(i);
    } catch (...) {
#pragma omp critical(asmval_parallel_failure)
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);
}

}  // namespace asmval::detail
