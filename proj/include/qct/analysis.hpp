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

#ifndef QCT_ANALYSIS_HPP
#define QCT_ANALYSIS_HPP

#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "qct/error.hpp"

namespace qct::analysis {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

/// Cheat success allowed to exceed 1/2 by at most xi.
struct BiasTarget {
    double xi = 0.25;

    void validate() const {
        if (!(xi > 0.0 && xi < 0.5)) {
            throw Error(ErrorCode::InvalidConfig, "bias must lie in (0, 1/2), got " + std::to_string(xi));
        }
    }
};

struct RobustnessQuery {
    double gamma = 1.0;
    uint32_t n_pairs = 1;

    void validate() const {
        if (!(gamma > 0.0 && gamma <= 1.0) || n_pairs < 1) {
            throw Error(ErrorCode::InvalidConfig, "robustness query needs 0 < gamma <= 1 and n_pairs >= 1");
        }
    }
};

namespace detail {

inline void require_pairs(uint32_t n) {
    if (n < 1) {
        throw Error(ErrorCode::InvalidConfig, "n_pairs must be at least 1");
    }
}

inline BigInt pow_big(uint32_t base, uint32_t exp) {
    BigInt r = 1;
    for (uint32_t i = 0; i < exp; i++) {
        r *= base;
    }
    return r;
}

}  // namespace detail

/// (5/8)^(n-1). Exact in double for n <= 23 since 5^22 < 2^53.
inline double pass_prob_paper(uint32_t n) {
    detail::require_pairs(n);
    return std::pow(0.625, static_cast<double>(n - 1));
}

/// Exact value of
///
///     sum_{m=1..n} C(n-1, m-1) 4^(m-n)  /  sum_{m=1..n} C(n-1, m-1)
///
/// i.e. the average of 4^(m-n) when each way of cutting n pairs into m contiguous groups is
/// equally likely.
inline Rational pass_prob_appendix_sum_exact(uint32_t n) {
    detail::require_pairs(n);
    BigInt binom = 1;  // C(n-1, m-1), starting at m = 1
    BigInt weighted = 0;
    BigInt total = 0;
    for (uint32_t m = 1; m <= n; m++) {
        weighted += binom * detail::pow_big(4, m - 1);
        total += binom;
        binom = binom * (n - m) / m;
    }
    return Rational(weighted) / Rational(total * detail::pow_big(4, n - 1));
}

inline double pass_prob_appendix_sum(uint32_t n) {
    return pass_prob_appendix_sum_exact(n).convert_to<double>();
}

/// Unsigned Stirling numbers of the first kind c(n, m) for m = 0..n, via
/// c(k+1, m) = k c(k, m) + c(k, m-1).
inline std::vector<BigInt> stirling_first_kind_row(uint32_t n) {
    std::vector<BigInt> row{1};
    for (uint32_t k = 0; k < n; k++) {
        std::vector<BigInt> next(row.size() + 1, 0);
        for (std::size_t m = 0; m < row.size(); m++) {
            next[m] += row[m] * k;
            next[m + 1] += row[m];
        }
        row = std::move(next);
    }
    return row;
}

/// Average of 4^(m-n) over uniformly random permutations of n pairs, m being the cycle count:
/// sum_m c(n, m) 4^(m-n) / n!.
inline Rational pass_prob_permutation_model_exact(uint32_t n) {
    detail::require_pairs(n);
    auto row = stirling_first_kind_row(n);
    BigInt weighted = 0;
    BigInt factorial = 0;
    for (uint32_t m = 1; m <= n; m++) {
        weighted += row[m] * detail::pow_big(4, m);
        factorial += row[m];
    }
    return Rational(weighted) / Rational(factorial * detail::pow_big(4, n));
}

inline double pass_prob_permutation_model(uint32_t n) {
    return pass_prob_permutation_model_exact(n).convert_to<double>();
}

/// True iff the probability that some honest measurement goes wrong, 1 - gamma^n, does not exceed
/// the cheat pass probability (5/8)^(n-1).
inline bool robustness_ok(const RobustnessQuery &q) {
    q.validate();
    const double failure = -std::expm1(static_cast<double>(q.n_pairs) * std::log(q.gamma));
    return failure <= pass_prob_paper(q.n_pairs);
}

/// Smallest gamma with 1 - gamma^n <= p_threshold.
inline double min_gamma(uint32_t n, double p_threshold) {
    detail::require_pairs(n);
    if (!(p_threshold > 0.0 && p_threshold < 1.0)) {
        throw Error(ErrorCode::InvalidConfig, "threshold must lie in (0, 1)");
    }
    return std::exp(std::log1p(-p_threshold) / static_cast<double>(n));
}

/// Smallest n with (5/8)^(n-1) <= p_threshold.
inline uint32_t min_n_for_pass_threshold(double p_threshold) {
    if (!(p_threshold > 0.0)) {
        throw Error(ErrorCode::InvalidConfig, "threshold must be positive");
    }
    uint32_t n = 1;
    while (pass_prob_paper(n) > p_threshold) {
        n++;
    }
    return n;
}

/// Reads the bias target as a bound of 2 xi on the pass probability.
inline uint32_t min_n_for_bias(const BiasTarget &target) {
    target.validate();
    return min_n_for_pass_threshold(2 * target.xi);
}

}  // namespace qct::analysis

#endif
