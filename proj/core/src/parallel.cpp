#include "hypermetric/parallel.hpp"

#include <algorithm>
#include <charconv>
#include <cstdlib>
#include <cstring>
#include <exception>
#include <thread>
#include <vector>

namespace hypermetric {

std::size_t configured_threads() {
  std::size_t requested = 0;
  if (const char* env = std::getenv("HYPERMETRIC_THREADS")) {
    std::from_chars(env, env + std::strlen(env), requested);
  }
  if (requested == 0) requested = std::max(1u, std::thread::hardware_concurrency());
  return requested;
}

std::size_t chunk_count(std::size_t count) {
  // Below this many items a thread costs more than it saves.
  constexpr std::size_t kMinPerChunk = 64;
  const std::size_t by_size = std::max<std::size_t>(1, count / kMinPerChunk);
  return std::min(configured_threads(), by_size);
}

void parallel_for(std::size_t count, const std::function<void(std::size_t, std::size_t, std::size_t)>& body) {
  const std::size_t chunks = chunk_count(count);
  auto bounds = [&](std::size_t c) { return count * c / chunks; };
  if (chunks <= 1) {
    body(0, count, 0);
    return;
  }
  std::vector<std::exception_ptr> errors(chunks);
  {
    std::vector<std::jthread> workers;
    workers.reserve(chunks);
    for (std::size_t c = 0; c < chunks; ++c) {
      workers.emplace_back([&, c] {
        try {
          body(bounds(c), bounds(c + 1), c);
        } catch (...) {
          errors[c] = std::current_exception();
        }
      });
    }
  }
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

}  // namespace hypermetric
