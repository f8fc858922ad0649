#pragma once

#include <cstddef>
#include <functional>
#include <vector>

namespace degmlmc {

/// Runs task(i) for i in [0, count) on up to `workers` threads. If any task
/// throws, the exception of the lowest failing index is rethrown after all
/// threads have joined.
void parallel_for(std::size_t count, std::size_t workers,
                  const std::function<void(std::size_t)>& task);

/// Worker count from DEGMLMC_WORKERS when set, otherwise `requested`
/// (0 meaning hardware concurrency).
std::size_t resolve_workers(std::size_t requested);

/// Fixed-shape pairwise summation of equally sized vectors; the result
/// depends only on the order of `parts`.
std::vector<double> pairwise_sum(const std::vector<const std::vector<double>*>& parts);
double pairwise_sum(const std::vector<double>& values);

}  // namespace degmlmc
