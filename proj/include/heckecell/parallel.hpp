#pragma once

// Minimal fork-join helper. Every index writes only its own output slot, so
// results do not depend on the number of workers.

#include <algorithm>
#include <atomic>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace heckecell {

class Parallel {
 public:
  explicit Parallel(int jobs = 1) : jobs_(std::max(1, jobs)) {}

  int jobs() const { return jobs_; }

  template <class Fn>
  void for_each(int n, Fn&& fn) const {
    if (n <= 0) return;
    if (jobs_ == 1 || n == 1) {
      for (int i = 0; i < n; ++i) fn(i);
      return;
    }
    std::atomic<int> next{0};
    std::exception_ptr error;
    std::mutex error_mu;
    auto worker = [&]() {
      for (;;) {
        int i = next.fetch_add(1);
        if (i >= n) return;
        try {
          fn(i);
        } catch (...) {
          std::lock_guard<std::mutex> lock(error_mu);
          if (!error) error = std::current_exception();
          next.store(n);
        }
      }
    };
    const int workers = std::min(jobs_, n);
    std::vector<std::thread> threads;
    threads.reserve(workers - 1);
    for (int t = 1; t < workers; ++t) threads.emplace_back(worker);
    worker();
    for (auto& t : threads) t.join();
    if (error) std::rethrow_exception(error);
  }

 private:
  int jobs_;
};

}  // namespace heckecell
