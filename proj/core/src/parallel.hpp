// Copyright (c) 2026 The dsrace developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

#ifndef DSRACE_SRC_PARALLEL_HPP
#define DSRACE_SRC_PARALLEL_HPP

#include <algorithm>
#include <cstdint>
#include <exception>
#include <thread>
#include <vector>

namespace dsrace::detail {

inline unsigned resolve_thread_count(unsigned requested, std::uint64_t work_items)
{
    unsigned threads = requested != 0 ? requested : std::max(1u, std::thread::hardware_concurrency());
    if (work_items < threads) threads = static_cast<unsigned>(std::max<std::uint64_t>(work_items, 1));
    return threads;
}

// Splits [0, n) into contiguous blocks, runs `block(begin, end)` for each on
// its own thread and folds the partial results in block order. `Acc` must be
// default constructible and `merge(Acc&, const Acc&)` order-insensitive for
// the result to be schedule independent.
template <class Acc, class Block, class Merge>
Acc parallel_reduce(std::uint64_t n, unsigned requested_threads, Block block, Merge merge)
{
    const unsigned threads = resolve_thread_count(requested_threads, n);
    if (threads <= 1) return block(std::uint64_t{0}, n);

    std::vector<Acc> partials(threads);
    std::vector<std::exception_ptr> errors(threads);
    {
        std::vector<std::jthread> workers;
        workers.reserve(threads);
        for (unsigned w = 0; w < threads; ++w) {
            const std::uint64_t begin = n * w / threads;
            const std::uint64_t end = n * (w + 1) / threads;
            workers.emplace_back([&, w, begin, end] {
                try {
                    partials[w] = block(begin, end);
                } catch (...) {
                    errors[w] = std::current_exception();
                }
            });
        }
    }
    for (const auto& err : errors) {
        if (err) std::rethrow_exception(err);
    }
    Acc total = std::move(partials.front());
    for (unsigned w = 1; w < threads; ++w) merge(total, partials[w]);
    return total;
}

}  // namespace dsrace::detail

#endif  // DSRACE_SRC_PARALLEL_HPP
