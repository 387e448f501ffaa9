#pragma once

// Deterministic compensated summation.
//
// Terms are generated in a fixed lexicographic order and grouped into
// fixed-size chunks. Within a chunk, terms are accumulated sequentially with
// Neumaier compensation; chunk results are combined by a fixed pairwise tree.
// The partition depends only on the index space, never on the worker count,
// so results are bit-identical for any QVOL_THREADS setting.

#include <atomic>
#include <cmath>
#include <complex>
#include <cstdlib>
#include <thread>
#include <vector>

#include "common.hpp"

namespace qvol {

inline unsigned worker_count() {
    if (const char* env = std::getenv("QVOL_THREADS")) {
        long n = std::strtol(env, nullptr, 10);
        if (n >= 1 && n <= 1024) return static_cast<unsigned>(n);
    }
    unsigned hc = std::thread::hardware_concurrency();
    return hc ? hc : 1;
}

template <class T>
class NeumaierSum {
    T sre_ = 0, cre_ = 0, sim_ = 0, cim_ = 0;

    static void step(T& s, T& c, T x) {
        T t = s + x;
        if (std::abs(s) >= std::abs(x))
            c += (s - t) + x;
        else
            c += (x - t) + s;
        s = t;
    }

public:
    void add(std::complex<T> x) {
        step(sre_, cre_, x.real());
        step(sim_, cim_, x.imag());
    }
    std::complex<T> value() const { return {sre_ + cre_, sim_ + cim_}; }
};

template <class T>
struct ChunkResult {
    std::complex<T> sum{0, 0};
    T maxMag = 0;          // largest |term| seen
    std::size_t terms = 0; // number of terms accumulated
};

// Fixed binary combine tree over the chunk sums (adjacent pairs per level).
template <class T>
std::complex<T> pairwise_combine(std::vector<std::complex<T>>& v) {
    std::size_t n = v.size();
    if (n == 0) return {0, 0};
    while (n > 1) {
        std::size_t h = 0;
        for (std::size_t i = 0; i + 1 < n; i += 2) v[h++] = v[i] + v[i + 1];
        if (n & 1) v[h++] = v[n - 1];
        n = h;
    }
    return v[0];
}

// body(chunkIndex) -> ChunkResult<T>, invoked exactly once per chunk.
// Chunks are distributed over workers by an atomic counter; the combine is
// a fixed tree over chunk indices, so the worker count never changes bits.
template <class T, class Body>
ChunkResult<T> chunked_sum(std::size_t chunkCount, Body&& body) {
    std::vector<ChunkResult<T>> results(chunkCount);
    unsigned workers = worker_count();
    if (workers <= 1 || chunkCount <= 1) {
        for (std::size_t c = 0; c < chunkCount; ++c) results[c] = body(c);
    } else {
        if (workers > chunkCount) workers = static_cast<unsigned>(chunkCount);
        std::atomic<std::size_t> next{0};
        auto run = [&] {
            for (;;) {
                std::size_t c = next.fetch_add(1, std::memory_order_relaxed);
                if (c >= chunkCount) break;
                results[c] = body(c);
            }
        };
        std::vector<std::thread> pool;
        pool.reserve(workers);
        for (unsigned w = 0; w < workers; ++w) pool.emplace_back(run);
        for (auto& t : pool) t.join();
    }

    ChunkResult<T> total;
    std::vector<std::complex<T>> sums(chunkCount);
    for (std::size_t c = 0; c < chunkCount; ++c) {
        sums[c] = results[c].sum;
        total.terms += results[c].terms;
        if (results[c].maxMag > total.maxMag) total.maxMag = results[c].maxMag;
    }
    total.sum = pairwise_combine(sums);
    return total;
}

}
