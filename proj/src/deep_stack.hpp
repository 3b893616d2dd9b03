#pragma once

// Proof search and the interpolant tables recurse once per rule application,
// so their depth grows with the input weight. Iterated interpolants easily
// reach weights where the default 8 MB stack runs out; such calls are moved
// to a thread whose stack is sized from the weight.

#include <pthread.h>

#include <algorithm>
#include <cstddef>
#include <exception>
#include <optional>
#include <stdexcept>
#include <type_traits>
#include <utility>

namespace uip::detail {

inline constexpr std::size_t kDeepStackThreshold = 1500;

template <typename Fn>
auto on_deep_stack(std::size_t weight, Fn&& fn) -> std::invoke_result_t<Fn&> {
  using Result = std::invoke_result_t<Fn&>;
  if (weight < kDeepStackThreshold) return fn();

  struct Job {
    Fn* fn;
    std::optional<Result> result;
    std::exception_ptr error;
  } job{&fn, std::nullopt, nullptr};

  auto entry = [](void* arg) -> void* {
    auto* j = static_cast<Job*>(arg);
    try {
      j->result.emplace((*j->fn)());
    } catch (...) {
      j->error = std::current_exception();
    }
    return nullptr;
  };

  constexpr std::size_t kMiB = std::size_t{1} << 20;
  const std::size_t bytes = std::clamp(weight * 4096, 256 * kMiB, 2048 * kMiB);
  pthread_attr_t attr;
  pthread_attr_init(&attr);
  pthread_attr_setstacksize(&attr, bytes);
  pthread_t thread;
  const int rc = pthread_create(&thread, &attr, entry, &job);
  pthread_attr_destroy(&attr);
  if (rc != 0) throw std::runtime_error("could not start a search thread with a large stack");
  pthread_join(thread, nullptr);
  if (job.error) std::rethrow_exception(job.error);
  return std::move(*job.result);
}

}  // namespace uip::detail
