#pragma once

// Free paths between nested arrangements: chains B = A_0 < A_1 < ... < A_k = A
// adding one plane at a time with every member free.

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <random>
#include <stdexcept>
#include <string>
#include <thread>
#include <unordered_map>
#include <vector>

#include "freeness.hpp"

namespace hypfree {

/// Memoized is_free keyed by the canonical arrangement key. Safe to share
/// between threads: two threads may compute the same key, but they store the
/// same verdict.
class FreenessOracle {
  public:
    struct Stats {
        std::size_t hits = 0;
        std::size_t misses = 0;
    };

    explicit FreenessOracle(bool use_cache = true) : use_cache_(use_cache) {}

    std::shared_ptr<const FreenessResult> verdict(const Arrangement& a) {
        if (!use_cache_) {
            count(false);
            return std::make_shared<const FreenessResult>(compute(a));
        }
        const std::string key = a.key();
        {
            std::lock_guard lock(mutex_);
            if (auto it = cache_.find(key); it != cache_.end()) {
                ++stats_.hits;
                return it->second;
            }
        }
        auto result = std::make_shared<const FreenessResult>(compute(a));
        std::lock_guard lock(mutex_);
        ++stats_.misses;
        return cache_.emplace(key, std::move(result)).first->second;
    }

    bool is_free(const Arrangement& a) { return verdict(a)->free; }

    bool caching() const noexcept { return use_cache_; }
    Stats stats() const {
        std::lock_guard lock(mutex_);
        return stats_;
    }
    std::size_t size() const {
        std::lock_guard lock(mutex_);
        return cache_.size();
    }

  private:
    static FreenessResult compute(const Arrangement& a) {
        FreenessResult r = hypfree::is_free(a);
        // The generator set is only scaffolding; the certificate is what
        // callers read back.
        r.generators = GeneratorSet{};
        return r;
    }
    void count(bool hit) {
        std::lock_guard lock(mutex_);
        ++(hit ? stats_.hits : stats_.misses);
    }

    bool use_cache_;
    mutable std::mutex mutex_;
    std::unordered_map<std::string, std::shared_ptr<const FreenessResult>> cache_;
    Stats stats_;
};

inline unsigned resolve_threads(unsigned threads) {
    if (threads == 0)
        threads = std::max(1u, std::thread::hardware_concurrency());
    return threads;
}

/// out[i] = fn(items[i]), work shared among up to `threads` workers. The
/// first exception thrown by fn is rethrown after all workers stop.
template <class T, class Fn>
auto parallel_map(const std::vector<T>& items, Fn fn, unsigned threads) {
    using R = decltype(fn(items.front()));
    std::vector<R> out(items.size());
    threads = std::min<unsigned>(resolve_threads(threads), static_cast<unsigned>(std::max<std::size_t>(1, items.size())));
    if (threads <= 1) {
        for (std::size_t i = 0; i < items.size(); ++i)
            out[i] = fn(items[i]);
        return out;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr error;
    std::mutex error_mutex;
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t)
        pool.emplace_back([&] {
            for (std::size_t i; (i = next.fetch_add(1)) < items.size();) {
                try {
                    out[i] = fn(items[i]);
                } catch (...) {
                    std::lock_guard lock(error_mutex);
                    if (!error)
                        error = std::current_exception();
                    next = items.size();
                }
            }
        });
    for (auto& th : pool)
        th.join();
    if (error)
        std::rethrow_exception(error);
    return out;
}

enum class PathStatus { found, none, inconclusive };

inline const char* to_string(PathStatus s) {
    switch (s) {
    case PathStatus::found:
        return "FOUND";
    case PathStatus::none:
        return "NONE";
    default:
        return "INCONCLUSIVE";
    }
}

struct PathResult {
    PathStatus status = PathStatus::inconclusive;
    std::string reason;
    /// Planes of A not in B, canonical order; bit i of a mask is extra[i].
    std::vector<Hyperplane> extra;
    /// B, ..., A when found.
    std::vector<Arrangement> chain;
    std::vector<FreenessCertificate> certificates;
    /// Mask of planes added at each step, parallel to chain.
    std::vector<std::uint64_t> chain_masks;
    /// Every subset whose freeness was decided. On NONE this covers all
    /// 2^|extra| subsets.
    std::map<std::uint64_t, bool> explored;
};

struct FreePathOptions {
    std::size_t max_difference = 20;
    unsigned threads = 0;
};

inline Arrangement with_mask(const Arrangement& b, const std::vector<Hyperplane>& extra, std::uint64_t mask) {
    Arrangement c = b;
    for (std::size_t i = 0; i < extra.size(); ++i)
        if (mask >> i & 1)
            c = c.with(extra[i]);
    return c;
}

/// Breadth-first over one-plane additions from B, keeping only free nodes.
/// Within a level, nodes are visited in increasing mask order and each new
/// node remembers the first parent that reached it, so the chain returned is
/// the same on every run. When A is not reached, every intermediate subset
/// is decided so the negative answer is exhaustive.
inline PathResult free_path(const Arrangement& b, const Arrangement& a, FreenessOracle& oracle,
                            const FreePathOptions& options = {}) {
    if (b.rank() != a.rank())
        throw std::invalid_argument("free_path: arrangements live in different ranks");
    if (!b.is_subset_of(a))
        throw std::invalid_argument("free_path: B is not contained in A");
    auto vb = oracle.verdict(b);
    if (!vb->free)
        throw std::invalid_argument("free_path: B is not free");
    auto va = oracle.verdict(a);
    if (!va->free)
        throw std::invalid_argument("free_path: A is not free");

    PathResult out;
    for (const auto& h : a)
        if (!b.contains(h))
            out.extra.push_back(h);
    const std::size_t k = out.extra.size();
    if (k > options.max_difference || k >= 64) {
        out.reason = "|A \\ B| = " + std::to_string(k) + " exceeds the cap of " +
                     std::to_string(options.max_difference);
        return out;
    }
    const std::uint64_t full = k == 0 ? 0 : (std::uint64_t(1) << k) - 1;
    out.explored[0] = true;
    out.explored[full] = true;

    std::map<std::uint64_t, std::uint64_t> parent;
    std::vector<std::uint64_t> frontier{0};
    bool reached = k == 0;
    for (std::size_t level = 1; level <= k && !reached && !frontier.empty(); ++level) {
        std::vector<std::uint64_t> candidates;
        std::map<std::uint64_t, std::uint64_t> first_parent;
        for (std::uint64_t m : frontier)
            for (std::size_t i = 0; i < k; ++i) {
                const std::uint64_t next = m | std::uint64_t(1) << i;
                if (next != m && first_parent.emplace(next, m).second)
                    candidates.push_back(next);
            }
        std::sort(candidates.begin(), candidates.end());
        std::vector<std::uint64_t> unknown;
        for (std::uint64_t c : candidates)
            if (!out.explored.count(c))
                unknown.push_back(c);
        auto verdicts = parallel_map(
            unknown, [&](std::uint64_t m) { return oracle.is_free(with_mask(b, out.extra, m)); }, options.threads);
        for (std::size_t i = 0; i < unknown.size(); ++i)
            out.explored[unknown[i]] = verdicts[i];
        frontier.clear();
        for (std::uint64_t c : candidates)
            if (out.explored[c]) {
                parent[c] = first_parent[c];
                frontier.push_back(c);
            }
        reached = parent.count(full) > 0;
    }

    if (reached) {
        out.status = PathStatus::found;
        std::vector<std::uint64_t> masks{full};
        while (masks.back() != 0)
            masks.push_back(parent.at(masks.back()));
        std::reverse(masks.begin(), masks.end());
        for (std::uint64_t m : masks) {
            out.chain.push_back(with_mask(b, out.extra, m));
            out.certificates.push_back(*oracle.verdict(out.chain.back())->certificate);
            out.chain_masks.push_back(m);
        }
        return out;
    }

    std::vector<std::uint64_t> rest;
    for (std::uint64_t m = 0; m <= full; ++m)
        if (!out.explored.count(m))
            rest.push_back(m);
    auto verdicts = parallel_map(
        rest, [&](std::uint64_t m) { return oracle.is_free(with_mask(b, out.extra, m)); }, options.threads);
    for (std::size_t i = 0; i < rest.size(); ++i)
        out.explored[rest[i]] = verdicts[i];
    out.status = PathStatus::none;
    out.reason = "no chain of free arrangements; all " + std::to_string(out.explored.size()) + " subsets decided";
    return out;
}

inline PathResult free_path(const Arrangement& b, const Arrangement& a, const FreePathOptions& options = {}) {
    FreenessOracle oracle;
    return free_path(b, a, oracle, options);
}

/// A and A minus {H1, H2} free: one of the single deletions must be free.
struct TwoPlaneReport {
    bool vacuous = true;
    bool passed = true;
    bool free_a = false, free_both_deleted = false, free_without_1 = false, free_without_2 = false;
};

inline TwoPlaneReport verify_two_plane(const Arrangement& a, std::size_t h1, std::size_t h2,
                                         FreenessOracle& oracle) {
    if (h1 == h2 || h1 >= a.size() || h2 >= a.size())
        throw std::invalid_argument("verify_two_plane: need two distinct plane indices");
    TwoPlaneReport r;
    r.free_a = oracle.is_free(a);
    const auto both = a.subset(~(std::uint64_t(1) << h1 | std::uint64_t(1) << h2));
    r.free_both_deleted = oracle.is_free(both);
    r.free_without_1 = oracle.is_free(a.without(h1));
    r.free_without_2 = oracle.is_free(a.without(h2));
    if (r.free_a && r.free_both_deleted) {
        r.vacuous = false;
        r.passed = r.free_without_1 || r.free_without_2;
    }
    return r;
}

/// A and A minus {H1, H2, H3} free, rank 3: a free path must join them.
struct ThreePlaneReport {
    bool vacuous = true;
    bool passed = true;
    bool free_a = false, free_b = false;
    PathStatus path = PathStatus::inconclusive;
};

inline ThreePlaneReport verify_three_plane(const Arrangement& a, std::size_t h1, std::size_t h2, std::size_t h3,
                                             FreenessOracle& oracle) {
    if (a.rank() != 3)
        throw std::invalid_argument("verify_three_plane: only stated in rank 3");
    if (h1 == h2 || h1 == h3 || h2 == h3 || std::max({h1, h2, h3}) >= a.size())
        throw std::invalid_argument("verify_three_plane: need three distinct plane indices");
    ThreePlaneReport r;
    r.free_a = oracle.is_free(a);
    const auto b = a.subset(~(std::uint64_t(1) << h1 | std::uint64_t(1) << h2 | std::uint64_t(1) << h3));
    r.free_b = oracle.is_free(b);
    if (r.free_a && r.free_b) {
        r.vacuous = false;
        r.path = free_path(b, a, oracle, {20, 1}).status;
        r.passed = r.path == PathStatus::found;
    }
    return r;
}

/// Integer forms with entries in [-bound, bound], pairwise non-proportional
/// and essential, drawn from mt19937_64(seed). Same seed, same arrangement.
inline Arrangement random_arrangement(std::uint64_t seed, int rank, int n, int bound) {
    if (rank < 1 || n < rank || bound < 1)
        throw std::invalid_argument("random_arrangement: need rank >= 1, n >= rank and bound >= 1");
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> coeff(-bound, bound);
    for (int attempt = 0; attempt < 1000; ++attempt) {
        Arrangement a(rank);
        for (int draw = 0; draw < 100 * n && static_cast<int>(a.size()) < n; ++draw) {
            std::vector<Scalar> f;
            bool nonzero = false;
            for (int i = 0; i < rank; ++i) {
                const int v = coeff(rng);
                nonzero |= v != 0;
                f.emplace_back(v);
            }
            if (!nonzero)
                continue;
            Hyperplane h(std::move(f));
            if (!a.contains(h))
                a = a.with(h);
        }
        if (static_cast<int>(a.size()) == n && is_essential(a))
            return a;
    }
    throw std::runtime_error("random_arrangement: no essential arrangement of " + std::to_string(n) +
                             " planes with coefficients up to " + std::to_string(bound));
}

} // namespace hypfree
