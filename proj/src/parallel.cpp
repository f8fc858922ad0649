#include "degmlmc/parallel.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <exception>
#include <limits>
#include <mutex>
#include <stdexcept>
#include <string>
#include <thread>

namespace degmlmc {

void parallel_for(std::size_t count, std::size_t workers,
                  const std::function<void(std::size_t)>& task) {
  if (count == 0) return;
  workers = std::clamp<std::size_t>(workers, 1, count);
  std::atomic<std::size_t> next{0};
  std::mutex mutex;
  std::size_t failed_index = std::numeric_limits<std::size_t>::max();
  std::exception_ptr failure;

  auto worker = [&] {
    for (;;) {
      const auto i = next.fetch_add(1);
      if (i >= count) return;
      try {
        task(i);
      } catch (...) {
        std::lock_guard lock(mutex);
        if (i < failed_index) {
          failed_index = i;
          failure = std::current_exception();
        }
      }
    }
  };

  if (workers == 1) {
    worker();
  } else {
    std::vector<std::jthread> threads;
    threads.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) threads.emplace_back(worker);
  }
  if (failure) std::rethrow_exception(failure);
}

std::size_t resolve_workers(std::size_t requested) {
  if (const char* env = std::getenv("DEGMLMC_WORKERS"); env && *env) {
    try {
      const auto v = std::stoul(env);
      if (v > 0) return v;
    } catch (const std::exception&) {
      throw std::invalid_argument(std::string("DEGMLMC_WORKERS is not a positive integer: ") + env);
    }
  }
  if (requested == 0) return std::max(1u, std::thread::hardware_concurrency());
  return requested;
}

namespace {

void sum_range(const std::vector<const std::vector<double>*>& parts, std::size_t lo,
               std::size_t hi, std::vector<double>& out) {
  if (hi - lo == 1) {
    out = *parts[lo];
    return;
  }
  const auto mid = lo + (hi - lo) / 2;
  std::vector<double> right;
  sum_range(parts, lo, mid, out);
  sum_range(parts, mid, hi, right);
  for (std::size_t j = 0; j < out.size(); ++j) out[j] += right[j];
}

double sum_range(const std::vector<double>& v, std::size_t lo, std::size_t hi) {
  if (hi - lo == 1) return v[lo];
  const auto mid = lo + (hi - lo) / 2;
  return sum_range(v, lo, mid) + sum_range(v, mid, hi);
}

}  // namespace

std::vector<double> pairwise_sum(const std::vector<const std::vector<double>*>& parts) {
  if (parts.empty()) throw std::invalid_argument("pairwise_sum: nothing to sum");
  std::vector<double> out;
  sum_range(parts, 0, parts.size(), out);
  return out;
}

double pairwise_sum(const std::vector<double>& values) {
  if (values.empty()) return 0.0;
  return sum_range(values, 0, values.size());
}

}  // namespace degmlmc
