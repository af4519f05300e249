#include <cmath>
#include <cstdint>
#include <vector>

#include "doctest.h"
#include "peersel/analytic.hpp"
#include "peersel/peernomination.hpp"

using namespace peersel;
using namespace peersel::analytic;

namespace {

// Test-side oracle: enumerate all C(n-1, m-1) co-pools of the rank-r agent
// and count in how many it lands at position y. Exact rational arithmetic.
std::pair<std::uint64_t, std::uint64_t> pmf_by_enumeration(int n, int m, int r, int y) {
    std::vector<int> others;
    for (int j = 1; j <= n; ++j)
        if (j != r) others.push_back(j);
    std::uint64_t hits = 0, total = 0;
    std::vector<int> idx(m - 1);
    for (int i = 0; i < m - 1; ++i) idx[i] = i;
    const int count = static_cast<int>(others.size());
    while (true) {
        int better = 0;
        for (int i : idx)
            if (others[i] < r) ++better;
        ++total;
        if (better + 1 == y) ++hits;
        // next combination
        int i = m - 2;
        while (i >= 0 && idx[i] == count - (m - 1) + i) --i;
        if (i < 0) break;
        ++idx[i];
        for (int j = i + 1; j < m - 1; ++j) idx[j] = idx[j - 1] + 1;
    }
    return {hits, total};
}

}  // namespace

TEST_CASE("binomial coefficients: exact small values and large log-space values") {
    CHECK(binomial(5, 2) == 10.0);
    CHECK(binomial(129, 8) == 1524228447600.0);
    CHECK(binomial(10, 0) == 1.0);
    CHECK(binomial(10, 11) == 0.0);
    // log-space fallback stays accurate in relative terms
    const double huge = binomial(10000, 14);
    const double check = std::exp(std::lgamma(10001.0) - std::lgamma(15.0) - std::lgamma(9987.0));
    CHECK(huge == doctest::Approx(check).epsilon(1e-10));
}

TEST_CASE("the true best agent always tops its pool") {
    for (auto [n, m] : {std::pair{10, 3}, {130, 9}}) {
        CHECK(pool_position_pmf(n, m, 1, 1) == 1.0);
        for (int y = 2; y <= m; ++y) CHECK(pool_position_pmf(n, m, 1, y) == 0.0);
    }
}

TEST_CASE("n=5 m=2 r=2 y=1 is 3/4") {
    CHECK(pool_position_pmf(5, 2, 2, 1) == doctest::Approx(0.75));
    auto [hits, total] = pmf_by_enumeration(5, 2, 2, 1);
    CHECK(hits == 3);
    CHECK(total == 4);
}

TEST_CASE("pmf equals exact co-pool enumeration for small n") {
    for (int n = 3; n <= 8; ++n)
        for (int m = 2; m <= std::min(4, n - 1); ++m)
            for (int r = 1; r <= n; ++r)
                for (int y = 1; y <= m; ++y) {
                    auto [hits, total] = pmf_by_enumeration(n, m, r, y);
                    // both sides are exact dyadic quotients of the same rational
                    CHECK(pool_position_pmf(n, m, r, y) ==
                          static_cast<double>(hits) / static_cast<double>(total));
                }
}

TEST_CASE("pmf normalizes over pool positions") {
    for (int r = 1; r <= 130; ++r) {
        double sum = 0.0;
        for (int y = 1; y <= 9; ++y) sum += pool_position_pmf(130, 9, r, y);
        CHECK(sum == doctest::Approx(1.0).epsilon(1e-12));
    }
}

TEST_CASE("nomination probability from rank") {
    // quota >= 1 makes the top agent a certain nominee
    CHECK(nomination_prob_from_rank(130, 9, 30, 0.0, 1) == doctest::Approx(1.0));
    // the 3-agent instance: quota 2/3, rank 1 nominated with prob 2/3
    CHECK(nomination_prob_from_rank(3, 2, 1, 0.0, 1) == doctest::Approx(2.0 / 3.0));
    // nonincreasing in r
    double prev = 2.0;
    for (int r = 1; r <= 130; ++r) {
        const double q = nomination_prob_from_rank(130, 9, 30, 0.0, r);
        CHECK(q <= prev + 1e-12);
        prev = q;
    }
}

TEST_CASE("acceptance probability is the cumulative binomial of q_r") {
    // degenerate ends
    CHECK(acceptance_probability(130, 9, 30, 10.0, 1) == doctest::Approx(1.0));
    CHECK(acceptance_probability(130, 9, 30, -30.0 * 9 / 130.0, 50) == doctest::Approx(0.0));
    // recompose by hand for a couple of (r, eps)
    for (int r : {10, 30, 60}) {
        const double q = nomination_prob_from_rank(130, 9, 30, 0.05, r);
        double tail = 0.0;
        for (int i = 5; i <= 9; ++i)
            tail += binomial(9, i) * std::pow(q, i) * std::pow(1 - q, 9 - i);
        CHECK(acceptance_probability(130, 9, 30, 0.05, r) == doctest::Approx(tail));
    }
    // m=2, q=0.5 tail check via the 3-agent quota: q_1 there is 2/3, so use
    // the binomial helper directly on a constructed case instead
    const double q = 0.5;
    const double tail = 2 * q * (1 - q) + q * q;
    CHECK(tail == doctest::Approx(0.75));
    CHECK(poisson_binomial_tail({0.5, 0.5}, 1) == doctest::Approx(0.75));
}

TEST_CASE("acceptance curve transitions around rank k and sharpens with m") {
    for (int m : {5, 9}) {
        CHECK(acceptance_probability(130, m, 30, 0.0, 5) > 0.95);
        CHECK(acceptance_probability(130, m, 30, 0.0, 90) < 0.05);
    }
    // width shrinks as m grows: compare probability spread at ranks 20 vs 40
    auto spread = [](int m) {
        return acceptance_probability(130, m, 30, 0.0, 20) -
               acceptance_probability(130, m, 30, 0.0, 40);
    };
    CHECK(spread(11) > spread(5));
}

TEST_CASE("expected size reproduces the n=130 m=9 k=30 values") {
    const double at_zero = expected_size(130, 9, 30, 0.0);
    CHECK(at_zero >= 26.8);
    CHECK(at_zero <= 28.0);
    // value pinned by an exact rational-arithmetic recomputation of the model
    const double at_013 = expected_size(130, 9, 30, 0.13);
    CHECK(at_013 == doctest::Approx(29.640555484655113).epsilon(1e-9));
    // epsilon ~0.154 is what actually lands the expected size on 30
    CHECK(std::abs(expected_size(130, 9, 30, 0.154) - 30.0) <= 0.05);
    // quota >= m accepts everyone
    CHECK(expected_size(130, 9, 30, 9.0) == doctest::Approx(130.0));
}

TEST_CASE("expected recall behaviour") {
    CHECK(expected_recall(130, 9, 30, 9.0) == doctest::Approx(1.0));
    // nondecreasing in epsilon
    for (int k : {15, 25, 35}) {
        double prev = -1.0;
        for (double eps = -0.4; eps <= 0.6; eps += 0.05) {
            const double r = expected_recall(130, 9, k, eps);
            CHECK(r >= prev - 1e-12);
            prev = r;
        }
    }
    // the k-sweep at eps=0.15 stays well away from chance level
    for (int k = 15; k <= 35; k += 5) CHECK(expected_recall(130, 9, k, 0.15) > 0.5);
}

TEST_CASE("expected size is nondecreasing in epsilon") {
    for (int m : {5, 9}) {
        double prev = -1.0;
        for (double eps = -0.5; eps <= 0.5; eps += 0.05) {
            const double s = expected_size(120, m, 30, eps);
            CHECK(s >= prev - 1e-12);
            prev = s;
        }
    }
}

TEST_CASE("epsilon calibration at n=130 m=9 k=30 lands near 0.15") {
    const double eps = calibrate_epsilon(130, 9, 30, 30.0, 0.05);
    CHECK(eps >= 0.10);
    CHECK(eps <= 0.16);
    CHECK(std::abs(expected_size(130, 9, 30, eps) - 30.0) <= 0.05);
}

TEST_CASE("calibrating to nearly n pushes epsilon to the upper bracket") {
    const double eps = calibrate_epsilon(20, 4, 5, 19.9, 0.05);
    CHECK(expected_size(20, 4, 5, eps) >= 19.85);
    CHECK_THROWS_AS(calibrate_epsilon(20, 4, 5, 25.0, 0.05), CalibrationError);
}

TEST_CASE("calibrated epsilon over the experiment grid stays in a narrow band") {
    int near_zero = 0, cells = 0;
    for (int m : {5, 7, 9, 11})
        for (int k : {15, 20, 25, 30, 35}) {
            const double eps = calibrate_epsilon(120, m, k, k, 0.05);
            ++cells;
            CHECK(eps >= -0.05);
            CHECK(eps <= 0.22);
            if (eps <= 0.16) ++near_zero;
            CHECK(std::abs(expected_size(120, m, k, eps) - k) <= 0.05);
        }
    CHECK(near_zero * 2 >= cells);  // at least half lie at or below 0.16
}

TEST_CASE("ROC/PR sweep endpoints and monotonicity") {
    auto points = roc_pr_curves(120, 8, 25, 200);
    REQUIRE(points.size() == 200);
    CHECK(points.front().quota == doctest::Approx(0.0));
    CHECK(points.front().tpr == doctest::Approx(0.0));
    CHECK(points.front().fpr == doctest::Approx(0.0));
    CHECK(points.front().ppv == doctest::Approx(1.0));  // degenerate convention
    CHECK(points.back().quota == doctest::Approx(8.0));
    CHECK(points.back().tpr == doctest::Approx(1.0));
    CHECK(points.back().fpr == doctest::Approx(1.0));
    bool strong_point = false;
    for (std::size_t i = 0; i < points.size(); ++i) {
        if (i > 0) {
            CHECK(points[i].tpr >= points[i - 1].tpr - 1e-12);
            CHECK(points[i].fpr >= points[i - 1].fpr - 1e-12);
        }
        if (points[i].tpr >= 0.75 && points[i].fpr <= 0.05) strong_point = true;
    }
    CHECK(strong_point);
}
