#pragma once

// Seeded random positive words for property tests.

#include "hspec/collect.hpp"

#include <random>

namespace oracle {

struct WordShape {
    int max_factors = 6;
    int max_weight = 5;
    int max_exponent = 3;
    int max_decoration = 0;
};

inline hspec::collect::GroupWord random_word(const hspec::fplie::HallBasis& basis, std::uint32_t p,
                                             const WordShape& shape, std::mt19937_64& rng) {
    const std::size_t top = basis.offset(shape.max_weight) + basis.count(shape.max_weight);
    std::uniform_int_distribution<int> len(1, shape.max_factors);
    std::uniform_int_distribution<std::size_t> core(0, top - 1);
    std::uniform_int_distribution<int> exp(1, shape.max_exponent);
    std::uniform_int_distribution<int> dec(0, shape.max_decoration);
    hspec::collect::GroupWord w(basis.generators(), p);
    const int n = len(rng);
    for (int i = 0; i < n; ++i) {
        const auto c = static_cast<hspec::fplie::BasisIndex>(core(rng));
        w.append({dec(rng), c}, exp(rng));
    }
    return w;
}

}  // namespace oracle
