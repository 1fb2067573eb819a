#pragma once

#include <algorithm>
#include <cstdint>
#include <thread>
#include <vector>

namespace stormlet::utility {

/// Resolves a requested worker count; 0 means hardware concurrency.
inline unsigned resolveThreads(unsigned requested) {
    if (requested == 0) {
        return std::max(1u, std::thread::hardware_concurrency());
    }
    return requested;
}

/// Splits [0, count) into contiguous chunks and runs body(begin, end) on each. Chunks write
/// disjoint outputs, so the result equals a sequential run.
template<typename Body>
void parallelForChunks(std::uint64_t count, unsigned threads, Body&& body) {
    threads = resolveThreads(threads);
    constexpr std::uint64_t kMinimumChunk = 4096;
    if (threads <= 1 || count < 2 * kMinimumChunk) {
        body(std::uint64_t{0}, count);
        return;
    }
    std::uint64_t const chunks = std::min<std::uint64_t>(threads, count / kMinimumChunk);
    std::uint64_t const chunkSize = (count + chunks - 1) / chunks;
    std::vector<std::jthread> workers;
    workers.reserve(chunks - 1);
    for (std::uint64_t chunk = 1; chunk < chunks; ++chunk) {
        std::uint64_t const begin = chunk * chunkSize;
        std::uint64_t const end = std::min(count, begin + chunkSize);
        workers.emplace_back([&body, begin, end] { body(begin, end); });
    }
    body(std::uint64_t{0}, std::min(count, chunkSize));
}

}  // namespace stormlet::utility
