#pragma once

#include "peersel/core.hpp"

namespace peersel {

struct ConfusionCounts {
    int tp = 0, fp = 0, tn = 0, fn = 0;
};

struct Rates {
    double ppv = 0.0;  // precision; 1 by convention when nothing is selected
    double tpr = 0.0;  // recall
    double fpr = 0.0;
    bool ppv_degenerate = false;  // flagged when |S| = 0
};

// Confusion of a selection against the true top k (agents 1..k).
inline ConfusionCounts confusion(const Instance& instance, const SelectionResult& selection) {
    ConfusionCounts c;
    for (AgentId j : selection.accepted) (j <= instance.k ? c.tp : c.fp)++;
    c.fn = instance.k - c.tp;
    c.tn = instance.n - instance.k - c.fp;
    return c;
}

inline Rates rates(const ConfusionCounts& c) {
    Rates r;
    r.ppv_degenerate = (c.tp + c.fp == 0);
    r.ppv = r.ppv_degenerate ? 1.0 : static_cast<double>(c.tp) / (c.tp + c.fp);
    r.tpr = c.tp + c.fn > 0 ? static_cast<double>(c.tp) / (c.tp + c.fn) : 0.0;
    r.fpr = c.tn + c.fp > 0 ? static_cast<double>(c.fp) / (c.tn + c.fp) : 0.0;
    return r;
}

}  // namespace peersel
