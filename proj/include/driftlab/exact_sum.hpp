#pragma once

/// @file exact_sum.hpp
/// @brief Exact sign of a sum of floating-point terms.
///
/// Selection in the (1+1) EA compares f(x') with f(x). For steep coefficient
/// families (BinVal and friends) the naive floating difference can round a
/// strictly positive change to zero, which would wrongly accept a worse
/// offspring. `exact_sum_sign` uses a forward error bound as a filter and
/// falls back to a Shewchuk expansion, which represents the sum without error.

#include <cmath>
#include <span>
#include <vector>

namespace driftlab {

using Real = long double;

namespace detail {

inline void two_sum(Real a, Real b, Real& s, Real& err) noexcept {
    s = a + b;
    const Real bv = s - a;
    const Real av = s - bv;
    err = (a - av) + (b - bv);
}

}  // namespace detail

/// Sign (-1, 0, +1) of the exact real sum of `terms`.
inline int exact_sum_sign(std::span<const Real> terms) {
    if (terms.empty()) return 0;

    Real naive = 0;
    Real magnitude = 0;
    for (Real t : terms) {
        naive += t;
        magnitude += std::fabs(t);
    }
    // Recursive summation error is at most (k-1)u * sum|t_i| / (1 - (k-1)u).
    constexpr Real unit = 0x1.0p-64L;
    const Real k = static_cast<Real>(terms.size());
    const Real bound = 2 * k * unit * magnitude;
    if (std::fabs(naive) > bound) return naive > 0 ? 1 : -1;

    // Grow a nonoverlapping expansion; its sign is the sign of its largest
    // nonzero component.
    std::vector<Real> expansion;
    expansion.reserve(terms.size() + 1);
    for (Real t : terms) {
        Real q = t;
        std::size_t kept = 0;
        for (Real e : expansion) {
            Real s, err;
            detail::two_sum(q, e, s, err);
            q = s;
            if (err != 0) expansion[kept++] = err;
        }
        expansion.resize(kept);
        if (q != 0) expansion.push_back(q);
    }
    if (expansion.empty()) return 0;
    return expansion.back() > 0 ? 1 : -1;
}

}  // namespace driftlab
