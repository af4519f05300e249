#pragma once

#include <stdexcept>
#include <vector>

#include "peersel/core.hpp"

namespace peersel::analytic {

// One acceptance-probability point per ground-truth rank r in {1..n}.
struct AcceptanceCurve {
    struct Point {
        int rank;
        double accept_prob;
    };
    std::vector<Point> points;
};

struct CurvePoint {
    double epsilon;
    double quota;
    double tpr;
    double fpr;
    double ppv;
};

// C(n, k) as a double; exact (integer-valued) whenever the result fits in
// 53 bits, otherwise computed in log space. Handles n up to ~1e4.
double binomial(int n, int k);

// P[Y = y | R = r]: probability that the agent of true rank r lands at
// position y in a uniformly drawn review pool of size m.
// C(r-1, y-1) * C(n-r, m-y) / C(n-1, m-1); 0 when infeasible.
double pool_position_pmf(int n, int m, int r, int y);

// q_r^eps: probability of being nominated in any one pool from true rank r,
// under quota (k/n)*m + epsilon. Terms beyond pool position m are absent.
double nomination_prob_from_rank(int n, int m, int k, double epsilon, int r);

// Cumulative binomial tail: P[Binomial(m, q_r^eps) >= ceil(m/2)].
double acceptance_probability(int n, int m, int k, double epsilon, int r);

AcceptanceCurve acceptance_curve(int n, int m, int k, double epsilon);

// Sum of acceptance_probability over all ranks.
double expected_size(int n, int m, int k, double epsilon);

// Mean acceptance probability over the true top k.
double expected_recall(int n, int m, int k, double epsilon);

struct CalibrationError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Bisection on epsilon (expected_size is nondecreasing in epsilon) over the
// bracket [-k_q, m - k_q]. Throws CalibrationError if the target cannot be
// bracketed.
double calibrate_epsilon(int n, int m, int k, double target_size, double tolerance);

// Analytic ROC/PR sweep: quota varies uniformly over [0, m] in grid_size
// steps. TPR = expected recall, FPR = mean acceptance over ranks > k,
// PPV = k*TPR / (k*TPR + (n-k)*FPR), reported as 1 when nothing is selected.
std::vector<CurvePoint> roc_pr_curves(int n, int m, int k, int grid_size);

}  // namespace peersel::analytic
