#pragma once

#include <algorithm>
#include <cstdint>
#include <vector>

#include "gral/error.hpp"
#include "gral/graph.hpp"
#include "gral/rng.hpp"

namespace gral {

/// Disjoint node partition fixed before an active-learning run. The pool
/// holds the query candidates; validation drives early stopping; test is
/// held out for the final F1.
struct Split {
    std::vector<int> initial_labeled;
    std::vector<int> pool;
    std::vector<int> validation;
    std::vector<int> test;
};

/// Samples `per_class` labeled seeds per class, then `val_size` validation
/// nodes, then divides the remainder into test (a `test_fraction` share)
/// and pool. Deterministic per seed; all four sets are returned sorted.
inline Split make_split(const Graph& g, std::uint64_t seed, int per_class, int val_size,
                        double test_fraction = 0.5) {
    check(per_class >= 1, "make_split: per_class must be >= 1");
    check(val_size >= 0, "make_split: val_size must be >= 0");
    check(test_fraction >= 0.0 && test_fraction < 1.0,
          "make_split: test_fraction must lie in [0, 1)");
    Rng rng(derive_seed(seed, stream::split));

    std::vector<std::vector<int>> by_class(static_cast<std::size_t>(g.num_classes));
    for (int i = 0; i < g.num_nodes; ++i) by_class[g.labels[i]].push_back(i);

    Split s;
    std::vector<bool> taken(static_cast<std::size_t>(g.num_nodes), false);
    for (int c = 0; c < g.num_classes; ++c) {
        auto& members = by_class[c];
        if (static_cast<int>(members.size()) < per_class)
            throw ConfigError("make_split: class " + std::to_string(c) + " has only " +
                              std::to_string(members.size()) + " nodes, need " +
                              std::to_string(per_class));
        rng.shuffle(members);
        for (int k = 0; k < per_class; ++k) {
            s.initial_labeled.push_back(members[k]);
            taken[members[k]] = true;
        }
    }

    std::vector<int> rest;
    for (int i = 0; i < g.num_nodes; ++i)
        if (!taken[i]) rest.push_back(i);
    if (static_cast<int>(rest.size()) < val_size)
        throw ConfigError("make_split: not enough nodes left for validation");
    rng.shuffle(rest);
    s.validation.assign(rest.begin(), rest.begin() + val_size);

    const std::size_t remaining = rest.size() - static_cast<std::size_t>(val_size);
    const std::size_t test_count =
        static_cast<std::size_t>(test_fraction * static_cast<double>(remaining));
    s.test.assign(rest.begin() + val_size, rest.begin() + val_size + test_count);
    s.pool.assign(rest.begin() + val_size + test_count, rest.end());

    std::sort(s.initial_labeled.begin(), s.initial_labeled.end());
    std::sort(s.validation.begin(), s.validation.end());
    std::sort(s.test.begin(), s.test.end());
    std::sort(s.pool.begin(), s.pool.end());
    return s;
}

}  // namespace gral
