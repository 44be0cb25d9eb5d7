#pragma once

#include <random>

#include "toric/lattice.hpp"

namespace toric_test {

using namespace toric;

/// Random GL(2,Z) element as a product of at most `max_factors` elementary
/// shears, swaps and reflections; reaches both determinant signs.
inline IntMat2 random_gl2z(std::mt19937& rng, int max_factors = 10) {
    std::uniform_int_distribution<int> nf(1, max_factors);
    std::uniform_int_distribution<int> kind(0, 3);
    std::uniform_int_distribution<std::int64_t> shear(-3, 3);
    IntMat2 m;
    int n = nf(rng);
    for (int i = 0; i < n; ++i) {
        switch (kind(rng)) {
            case 0: m = m * IntMat2{1, shear(rng), 0, 1}; break;
            case 1: m = m * IntMat2{1, 0, shear(rng), 1}; break;
            case 2: m = m * IntMat2{0, 1, 1, 0}; break;
            case 3: m = m * IntMat2{-1, 0, 0, 1}; break;
        }
    }
    return m;
}

inline AffineMapZ random_aff2z(std::mt19937& rng) {
    std::uniform_int_distribution<std::int64_t> num(-8, 8);
    std::uniform_int_distribution<std::int64_t> den(1, 4);
    return {random_gl2z(rng), {Rational(num(rng), den(rng)), Rational(num(rng), den(rng))}};
}

inline IntVec2 random_intvec(std::mt19937& rng, std::int64_t lim = 9) {
    std::uniform_int_distribution<std::int64_t> d(-lim, lim);
    return {d(rng), d(rng)};
}

}  // namespace toric_test
