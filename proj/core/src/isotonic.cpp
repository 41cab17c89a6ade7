#include "privpoints/isotonic.hpp"

#include <algorithm>
#include <stdexcept>

namespace privpoints {

MonotoneFit isotonic_l2(const std::vector<double>& a) {
    if (a.empty()) throw std::invalid_argument("isotonic_l2: empty input");

    struct Pool {
        double sum;
        std::size_t count;
        std::size_t end;  // one past the last input index in this pool
        double mean() const { return sum / static_cast<double>(count); }
    };
    std::vector<Pool> pools;
    pools.reserve(a.size());

    for (std::size_t i = 0; i < a.size(); ++i) {
        pools.push_back({a[i], 1, i + 1});
        while (pools.size() >= 2 &&
               pools[pools.size() - 2].mean() > pools.back().mean()) {
            Pool top = pools.back();
            pools.pop_back();
            pools.back().sum += top.sum;
            pools.back().count += top.count;
            pools.back().end = top.end;
        }
    }

    MonotoneFit fit;
    fit.values.resize(a.size());
    fit.pool_boundaries.reserve(pools.size());
    std::size_t start = 0;
    for (const Pool& p : pools) {
        const double m = p.mean();
        for (std::size_t i = start; i < p.end; ++i) fit.values[i] = m;
        fit.pool_boundaries.push_back(p.end);
        start = p.end;
    }
    return fit;
}

namespace {

// Pool for the L1 fit keeps its members sorted so both medians are O(1).
struct L1Pool {
    std::vector<double> sorted;
    std::size_t end;

    double lower_median() const { return sorted[(sorted.size() - 1) / 2]; }
    double upper_median() const { return sorted[sorted.size() / 2]; }

    void absorb(L1Pool&& other) {
        std::vector<double> merged;
        merged.reserve(sorted.size() + other.sorted.size());
        std::merge(sorted.begin(), sorted.end(), other.sorted.begin(),
                   other.sorted.end(), std::back_inserter(merged));
        sorted = std::move(merged);
        end = other.end;
    }
};

}  // namespace

std::vector<double> isotonic_l1(const std::vector<double>& a) {
    if (a.empty()) throw std::invalid_argument("isotonic_l1: empty input");

    std::vector<L1Pool> pools;
    for (std::size_t i = 0; i < a.size(); ++i) {
        pools.push_back(L1Pool{{a[i]}, i + 1});
        // Merge while the previous pool cannot sit at or below the current
        // one: if the median intervals are disjoint and out of order the
        // merge is forced, and if they overlap it costs nothing, which is
        // what makes the lower-median tie-break consistent.
        while (pools.size() >= 2 &&
               pools[pools.size() - 2].upper_median() > pools.back().lower_median()) {
            L1Pool top = std::move(pools.back());
            pools.pop_back();
            pools.back().absorb(std::move(top));
        }
    }

    std::vector<double> fit(a.size());
    std::size_t start = 0;
    for (const L1Pool& p : pools) {
        const double m = p.lower_median();
        for (std::size_t i = start; i < p.end; ++i) fit[i] = m;
        start = p.end;
    }
    return fit;
}

}  // namespace privpoints
