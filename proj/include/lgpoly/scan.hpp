#pragma once

#include <atomic>
#include <cstdint>
#include <exception>
#include <functional>
#include <mutex>
#include <thread>
#include <vector>

namespace lgpoly {

// Applies fn to every prime and collects results in input order, fanning out
// across workers. Results are positional, so output is identical for any
// worker count.
template <typename R>
std::vector<R> map_primes(const std::vector<uint64_t>& primes, unsigned workers,
                          const std::function<R(uint64_t)>& fn) {
  std::vector<R> out(primes.size());
  if (workers <= 1 || primes.size() < 2) {
    for (size_t i = 0; i < primes.size(); ++i) out[i] = fn(primes[i]);
    return out;
  }
  std::atomic<size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  auto body = [&] {
    while (true) {
      size_t i = next.fetch_add(1);
      if (i >= primes.size()) break;
      try {
        out[i] = fn(primes[i]);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!error) error = std::current_exception();
        next.store(primes.size());
        break;
      }
    }
  };
  std::vector<std::thread> pool;
  unsigned n = std::min<unsigned>(workers, std::thread::hardware_concurrency() * 2 + 2);
  for (unsigned t = 0; t < n; ++t) pool.emplace_back(body);
  for (auto& th : pool) th.join();
  if (error) std::rethrow_exception(error);
  return out;
}

}  // namespace lgpoly
