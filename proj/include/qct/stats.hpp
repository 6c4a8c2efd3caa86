// Copyright 2026 The QCT Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef QCT_STATS_HPP
#define QCT_STATS_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <span>

#include <boost/math/distributions/chi_squared.hpp>

#include "qct/error.hpp"

namespace qct::stats {

/// Two-sided 95% normal quantile.
inline constexpr double Z95 = 1.959963984540054;

struct Interval {
    double low = 0;
    double high = 1;

    bool contains(double x) const { return low <= x && x <= high; }
};

/// Wilson score interval for a binomial proportion.
inline Interval wilson_interval(uint64_t successes, uint64_t trials, double z = Z95) {
    if (trials == 0) {
        throw Error(ErrorCode::InvalidConfig, "binomial interval needs at least one trial");
    }
    const double n = static_cast<double>(trials);
    const double p = static_cast<double>(successes) / n;
    const double z2 = z * z;
    const double denom = 1 + z2 / n;
    const double centre = (p + z2 / (2 * n)) / denom;
    const double half = z * std::sqrt(p * (1 - p) / n + z2 / (4 * n * n)) / denom;
    // Clamp so the interval always contains the point estimate despite rounding at p = 0 or 1.
    return {std::min(p, std::max(0.0, centre - half)), std::max(p, std::min(1.0, centre + half))};
}

/// Pearson statistic of observed counts against expected probabilities.
inline double chi_square_statistic(std::span<const uint64_t> observed, std::span<const double> expected_p) {
    if (observed.size() != expected_p.size()) {
        throw Error(ErrorCode::LengthMismatch, "observed and expected cell counts differ");
    }
    double total = 0;
    for (auto c : observed) {
        total += static_cast<double>(c);
    }
    double stat = 0;
    for (std::size_t i = 0; i < observed.size(); i++) {
        const double e = expected_p[i] * total;
        const double d = static_cast<double>(observed[i]) - e;
        stat += d * d / e;
    }
    return stat;
}

/// Upper-tail critical value: P(X > value) = alpha for X ~ chi-square(df).
inline double chi_square_critical(unsigned degrees_of_freedom, double alpha) {
    boost::math::chi_squared dist(degrees_of_freedom);
    return boost::math::quantile(boost::math::complement(dist, alpha));
}

inline bool chi_square_passes(std::span<const uint64_t> observed, std::span<const double> expected_p,
                              double alpha = 0.001) {
    return chi_square_statistic(observed, expected_p) <=
           chi_square_critical(static_cast<unsigned>(observed.size() - 1), alpha);
}

/// Total-variation distance, half the L1 distance.
inline double tv_distance(std::span<const double> p, std::span<const double> q) {
    if (p.size() != q.size()) {
        throw Error(ErrorCode::LengthMismatch, "distributions have different supports");
    }
    double t = 0;
    for (std::size_t i = 0; i < p.size(); i++) {
        t += std::abs(p[i] - q[i]);
    }
    return t / 2;
}

}  // namespace qct::stats

#endif
