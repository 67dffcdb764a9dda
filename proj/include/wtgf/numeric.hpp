#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace wtgf::numeric {

/// Euclidean projection onto the probability simplex (Michelot / sort-based).
void project_simplex(std::span<double> x);

/// All ways to write `total` as an ordered sum of `parts` nonnegative
/// integers; each composition divided by `total` is a grid point on the
/// simplex. Visits compositions in lexicographic order.
/// Calls fn(std::span<const std::size_t>) for each.
template <class Fn>
void for_each_composition(std::size_t total, std::size_t parts, Fn&& fn) {
    std::vector<std::size_t> c(parts, 0);
    c[0] = total;
    for (;;) {
        fn(std::span<const std::size_t>(c));
        // next composition in lexicographic order
        if (parts == 1) return;
        std::size_t i = parts - 1;
        while (i > 0 && c[i - 1] == 0) --i;
        if (i == 0) return;
        // move one unit from position i-1 to i, flushing the tail
        std::size_t tail = 0;
        for (std::size_t j = i; j < parts; ++j) {
            tail += c[j];
            c[j] = 0;
        }
        c[i - 1] -= 1;
        c[i] = tail + 1;
    }
}

/// Number of compositions of `total` into `parts` parts: C(total+parts-1, parts-1).
/// Saturates at SIZE_MAX on overflow.
std::size_t composition_count(std::size_t total, std::size_t parts);

} // namespace wtgf::numeric
