#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>

namespace qtheta {

// Exact rational coefficient type. mpq_class keeps values canonical
// (gcd-reduced, denominator > 0) as long as construction goes through
// rat()/operators, which is all this library uses.
using Rat = mpq_class;

inline Rat rat(long num, long den = 1) {
    Rat r(num, den);
    r.canonicalize();
    return r;
}

inline std::string rat_str(const Rat& r) {
    return r.get_str(); // "p" or "p/q", canonical
}

// C(k+p-1, p-1) for the expansion of (1-x)^{-p}; p is tiny, k can be large.
inline Rat geometric_binomial(long long k, int p) {
    Rat acc = 1;
    for (int i = 1; i < p; ++i) {
        acc *= rat(static_cast<long>(k + i));
        acc /= rat(i);
    }
    return acc;
}

} // namespace qtheta
