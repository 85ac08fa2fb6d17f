#pragma once
// Small seeded generators for property tests.

#include "ellrec/exactnum.hpp"

#include <random>

namespace testgen {

inline std::mt19937_64& rng() {
    static std::mt19937_64 g(20240611);
    return g;
}

inline long int_in(long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(rng()); }

inline ellrec::Rational rational(long h = 50) {
    long d = int_in(1, h);
    return ellrec::make_rational(int_in(-h, h), d);
}

inline ellrec::Rational nonzero_rational(long h = 50) {
    for (;;) {
        auto q = rational(h);
        if (q != 0) return q;
    }
}

}  // namespace testgen
