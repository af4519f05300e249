#include "peersel/analytic.hpp"

#include <cmath>
#include <cstdint>

#include "peersel/peernomination.hpp"

namespace peersel::analytic {

namespace {

constexpr double kExactLimit = 9007199254740992.0;  // 2^53

double log_choose(int n, int k) {
    return std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0);
}

}  // namespace

double binomial(int n, int k) {
    if (k < 0 || k > n) return 0.0;
    if (k > n - k) k = n - k;
    unsigned __int128 c = 1;
    for (int i = 1; i <= k; ++i) {
        c = c * static_cast<unsigned>(n - k + i) / static_cast<unsigned>(i);  // exact: C(n-k+i, i)
        if (c >= static_cast<unsigned __int128>(kExactLimit))
            return std::exp(log_choose(n, k));
    }
    return static_cast<double>(static_cast<std::uint64_t>(c));
}

double pool_position_pmf(int n, int m, int r, int y) {
    if (y < 1 || y > m || r < 1 || r > n) return 0.0;
    if (y - 1 > r - 1 || m - y > n - r) return 0.0;
    const double num_a = binomial(r - 1, y - 1);
    const double num_b = binomial(n - r, m - y);
    const double den = binomial(n - 1, m - 1);
    if (den < kExactLimit) {
        // Vandermonde: num_a * num_b <= den, so the product is exact too.
        return num_a * num_b / den;
    }
    return std::exp(std::log(num_a) + std::log(num_b) - std::log(den));
}

double nomination_prob_from_rank(int n, int m, int k, double epsilon, int r) {
    const auto quota =
        NominationQuota::from_value(static_cast<double>(k) / n * m + epsilon);
    double q = 0.0;
    const int certain = std::min(quota.integer_part, m);
    for (int y = 1; y <= certain; ++y) q += pool_position_pmf(n, m, r, y);
    if (quota.integer_part + 1 <= m)
        q += quota.fractional_part * pool_position_pmf(n, m, r, quota.integer_part + 1);
    return std::min(1.0, std::max(0.0, q));
}

double acceptance_probability(int n, int m, int k, double epsilon, int r) {
    const double q = nomination_prob_from_rank(n, m, k, epsilon, r);
    const int threshold = acceptance_threshold(m);
    double tail = 0.0;
    for (int i = threshold; i <= m; ++i)
        tail += binomial(m, i) * std::pow(q, i) * std::pow(1.0 - q, m - i);
    return std::min(1.0, std::max(0.0, tail));
}

AcceptanceCurve acceptance_curve(int n, int m, int k, double epsilon) {
    AcceptanceCurve curve;
    curve.points.reserve(n);
    for (int r = 1; r <= n; ++r)
        curve.points.push_back({r, acceptance_probability(n, m, k, epsilon, r)});
    return curve;
}

double expected_size(int n, int m, int k, double epsilon) {
    double total = 0.0;
    for (int r = 1; r <= n; ++r) total += acceptance_probability(n, m, k, epsilon, r);
    return total;
}

double expected_recall(int n, int m, int k, double epsilon) {
    double total = 0.0;
    for (int r = 1; r <= k; ++r) total += acceptance_probability(n, m, k, epsilon, r);
    return total / k;
}

double calibrate_epsilon(int n, int m, int k, double target_size, double tolerance) {
    if (!(target_size > 0.0 && target_size < n) || !(tolerance > 0.0))
        throw CalibrationError("calibrate_epsilon: need target in (0, n) and tolerance > 0");
    const double k_q = static_cast<double>(k) / n * m;
    double lo = -k_q, hi = m - k_q;
    double size_lo = expected_size(n, m, k, lo);  // quota 0 -> 0
    double size_hi = expected_size(n, m, k, hi);  // quota m -> n
    if (target_size < size_lo - tolerance || target_size > size_hi + tolerance)
        throw CalibrationError("calibrate_epsilon: target size not bracketed");
    for (int iter = 0; iter < 200; ++iter) {
        const double mid = 0.5 * (lo + hi);
        const double size = expected_size(n, m, k, mid);
        if (std::abs(size - target_size) <= tolerance) return mid;
        if (size < target_size)
            lo = mid;
        else
            hi = mid;
        if (hi - lo < 1e-13) break;
    }
    // expected_size is piecewise linear in epsilon, so the bracket collapses
    // only onto a point meeting the tolerance; reaching here means it cannot.
    throw CalibrationError("calibrate_epsilon: tolerance unreachable");
}

std::vector<CurvePoint> roc_pr_curves(int n, int m, int k, int grid_size) {
    if (grid_size < 2) throw std::invalid_argument("roc_pr_curves: grid_size must be >= 2");
    const double k_q = static_cast<double>(k) / n * m;
    std::vector<CurvePoint> points;
    points.reserve(grid_size);
    for (int g = 0; g < grid_size; ++g) {
        const double quota = m * static_cast<double>(g) / (grid_size - 1);
        const double epsilon = quota - k_q;
        double top = 0.0, rest = 0.0;
        for (int r = 1; r <= n; ++r) {
            const double p = acceptance_probability(n, m, k, epsilon, r);
            (r <= k ? top : rest) += p;
        }
        const double tpr = top / k;
        const double fpr = (n > k) ? rest / (n - k) : 0.0;
        const double den = top + rest;
        const double ppv = den > 0.0 ? top / den : 1.0;
        points.push_back({epsilon, quota, tpr, fpr, ppv});
    }
    return points;
}

}  // namespace peersel::analytic
