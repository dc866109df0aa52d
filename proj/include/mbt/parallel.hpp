#pragma once

// Replica runner: replica i always consumes the counter-derived stream
// (seed, i) and results land in replica order, so output is identical
// for any thread count.

#include <cstdint>
#include <functional>
#include <thread>
#include <vector>

#include "mbt/rng.hpp"

namespace mbt {

template <class Row>
std::vector<Row> run_replicas(uint64_t reps, uint64_t seed, int threads,
                              const std::function<Row(uint64_t, Rng&)>& body) {
  std::vector<Row> out(reps);
  if (threads <= 1) {
    for (uint64_t i = 0; i < reps; ++i) {
      Rng rng = Rng::for_replica(seed, i);
      out[i] = body(i, rng);
    }
    return out;
  }
  std::vector<std::thread> pool;
  std::vector<std::exception_ptr> errors(threads, nullptr);
  for (int t = 0; t < threads; ++t) {
    pool.emplace_back([&, t]() {
      try {
        for (uint64_t i = t; i < reps; i += threads) {
          Rng rng = Rng::for_replica(seed, i);
          out[i] = body(i, rng);
        }
      } catch (...) {
        errors[t] = std::current_exception();
      }
    });
  }
  for (auto& th : pool) th.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
  return out;
}

}  // namespace mbt
