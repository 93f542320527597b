#include "monoratio/parallel.hpp"

#include <cstdlib>
#include <exception>
#include <string>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace monoratio {

int max_threads() {
    int threads = 1;
#ifdef _OPENMP
    threads = omp_get_max_threads();
#endif
    if (const char* env = std::getenv("MONOTONE_RATIO_THREADS")) {
        char* end = nullptr;
        const long cap = std::strtol(env, &end, 10);
        if (end != env && *end == '\0' && cap > 0 && cap < threads) threads = static_cast<int>(cap);
    }
    return threads;
}

void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body) {
    std::vector<std::exception_ptr> errors(n);
    const auto count = static_cast<long long>(n);
#pragma omp parallel for schedule(dynamic, 1) num_threads(max_threads())
    for (long long i = 0; i < count; ++i) {
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

Samples GridTable::column(Quantity which) const {
    Samples out(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
        const PointEval p = at(i);
        double v = 0.0;
        switch (which) {
            case Quantity::R: v = p.r(); break;
            case Quantity::Rho: v = p.rho(); break;
            case Quantity::RhoTilde: v = p.rho_tilde(); break;
        }
        out[i] = {x[i], v};
    }
    return out;
}

GridTable evaluate_grid(const FunctionPair& pair, std::span<const double> xs) {
    GridTable t;
    t.x.assign(xs.begin(), xs.end());
    t.f.resize(xs.size());
    t.g.resize(xs.size());
    // Chunked so each task amortizes the std::function dispatch.
    constexpr std::size_t kChunk = 64;
    const std::size_t chunks = (xs.size() + kChunk - 1) / kChunk;
    parallel_for(chunks, [&](std::size_t c) {
        const std::size_t end = std::min(xs.size(), (c + 1) * kChunk);
        for (std::size_t i = c * kChunk; i < end; ++i) {
            t.f[i] = pair.f()(xs[i]);
            t.g[i] = pair.g()(xs[i]);
        }
    });
    return t;
}

GridTable evaluate_grid_serial(const FunctionPair& pair, std::span<const double> xs) {
    GridTable t;
    t.x.assign(xs.begin(), xs.end());
    t.f.reserve(xs.size());
    t.g.reserve(xs.size());
    for (double x : xs) {
        t.f.push_back(pair.f()(x));
        t.g.push_back(pair.g()(x));
    }
    return t;
}

}  // namespace monoratio
