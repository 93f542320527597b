#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "monoratio/ratio.hpp"

namespace monoratio {

/// Thread count for parallel kernels: MONOTONE_RATIO_THREADS if set to a
/// positive integer, else the OpenMP default.
int max_threads();

/// Runs body(i) for i in [0, n). Iterations must be independent. If any
/// iteration throws, the exception from the lowest index is rethrown after the
/// loop.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

/// f and g (value and derivative) on a grid; every derived quantity is read
/// from these columns.
struct GridTable {
    std::vector<double> x;
    std::vector<Dual> f;
    std::vector<Dual> g;

    std::size_t size() const noexcept { return x.size(); }
    PointEval at(std::size_t i) const { return {x[i], f[i], g[i]}; }
    Samples column(Quantity which) const;
};

/// OpenMP kernel.
GridTable evaluate_grid(const FunctionPair& pair, std::span<const double> xs);

/// Serial reference for evaluate_grid; results are bitwise identical.
GridTable evaluate_grid_serial(const FunctionPair& pair, std::span<const double> xs);

}  // namespace monoratio
