#pragma once

#include <boost/multiprecision/cpp_int.hpp>

namespace mapforge {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

// Mathematical parity, correct for negative values.
inline int parity(long long v) { return static_cast<int>(((v % 2) + 2) % 2); }

inline Int factorial(int n) {
    Int r = 1;
    for (int i = 2; i <= n; ++i) r *= i;
    return r;
}

// (2k-1)!! = 1*3*5*...*(2k-1); number of perfect matchings of 2k points.
inline Int double_factorial_odd(int k) {
    Int r = 1;
    for (int i = 1; i <= k; ++i) r *= 2 * i - 1;
    return r;
}

}  // namespace mapforge
