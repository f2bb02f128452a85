#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <random>

#include "stklein/verify.hpp"

namespace stklein::test {

inline constexpr std::size_t kPropertySamples = 10000;

inline double rel_err(double a, double b) {
    return std::abs(a - b) / std::max(1.0, std::max(std::abs(a), std::abs(b)));
}

inline double rel_err(std::complex<double> a, std::complex<double> b) {
    return std::abs(a - b) / std::max(1.0, std::max(std::abs(a), std::abs(b)));
}

inline double uniform(std::mt19937_64& rng, double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(rng);
}

}  // namespace stklein::test
