#pragma once

#include <cstddef>
#include <exception>
#include <vector>

#include "spinrelay/core.hpp"

namespace spinrelay {

/// Runs body(i) for i in [0, count). Each index owns its output slot, so the
/// parallel path produces exactly what the serial loop does. The first
/// exception (lowest index) is rethrown after the loop.
template <typename Body>
void for_each_index(std::size_t count, Execution execution, Body&& body) {
  std::vector<std::exception_ptr> errors(count);
  const long n = static_cast<long>(count);
  const bool parallel = execution == Execution::parallel;
#pragma omp parallel for schedule(dynamic, 1) if (parallel)
  for (long i = 0; i < n; ++i) {
    try {
      body(static_cast<std::size_t>(i));
    } catch (...) {
      errors[static_cast<std::size_t>(i)] = std::current_exception();
    }
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

}  // namespace spinrelay
