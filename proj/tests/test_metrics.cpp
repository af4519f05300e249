#include "doctest.h"
#include "peersel/metrics.hpp"
#include "peersel/rng.hpp"

using namespace peersel;

namespace {

SelectionResult selection_of(std::vector<AgentId> accepted, int n) {
    SelectionResult s;
    s.accepted = std::move(accepted);
    s.nomination_counts.assign(n + 1, 0);
    return s;
}

}  // namespace

TEST_CASE("perfect selection") {
    Instance inst{10, 3, 4};
    auto c = confusion(inst, selection_of({1, 2, 3, 4}, 10));
    CHECK(c.tp == 4);
    CHECK(c.fp == 0);
    CHECK(c.tn == 6);
    CHECK(c.fn == 0);
    auto r = rates(c);
    CHECK(r.ppv == 1.0);
    CHECK(r.tpr == 1.0);
    CHECK(r.fpr == 0.0);
    CHECK_FALSE(r.ppv_degenerate);
}

TEST_CASE("empty selection uses the degenerate-precision convention") {
    Instance inst{10, 3, 4};
    auto c = confusion(inst, selection_of({}, 10));
    CHECK(c.tp == 0);
    CHECK(c.fp == 0);
    CHECK(c.tn == 6);
    CHECK(c.fn == 4);
    auto r = rates(c);
    CHECK(r.ppv == 1.0);
    CHECK(r.ppv_degenerate);
    CHECK(r.tpr == 0.0);
    CHECK(r.fpr == 0.0);
}

TEST_CASE("n=6 k=2 S={1,3,4}") {
    Instance inst{6, 2, 2};
    auto c = confusion(inst, selection_of({1, 3, 4}, 6));
    CHECK(c.tp == 1);
    CHECK(c.fp == 2);
    CHECK(c.tn == 2);
    CHECK(c.fn == 1);
    auto r = rates(c);
    CHECK(r.ppv == doctest::Approx(1.0 / 3.0));
    CHECK(r.tpr == doctest::Approx(0.5));
    CHECK(r.fpr == doctest::Approx(0.5));
}

TEST_CASE("confusion identities hold for random selections") {
    auto rng = make_rng(123);
    for (int t = 0; t < 200; ++t) {
        std::uniform_int_distribution<int> n_dist(2, 40);
        const int n = n_dist(rng);
        std::uniform_int_distribution<int> k_dist(1, n);
        Instance inst{n, 1, k_dist(rng)};
        std::vector<AgentId> accepted;
        std::uniform_int_distribution<int> coin(0, 1);
        for (AgentId j = 1; j <= n; ++j)
            if (coin(rng)) accepted.push_back(j);
        auto sel = selection_of(accepted, n);
        auto c = confusion(inst, sel);
        CHECK(c.tp + c.fn == inst.k);
        CHECK(c.fp + c.tn == n - inst.k);
        CHECK(c.tp + c.fp == static_cast<int>(sel.accepted.size()));
        CHECK(c.tp + c.fp + c.tn + c.fn == n);
        // when |S| = k, recall coincides with the exact-size "accuracy" tp/k
        if (static_cast<int>(sel.accepted.size()) == inst.k)
            CHECK(rates(c).tpr == doctest::Approx(static_cast<double>(c.tp) / inst.k));
    }
}
