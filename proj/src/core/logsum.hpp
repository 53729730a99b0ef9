#pragma once

#include <algorithm>
#include <cmath>
#include <span>

#include "core/report.hpp"

namespace blockdet {

/// log(sum_i exp(ls_i)) with the largest term factored out; -inf entries are
/// skipped, and an all -inf (or empty) input yields -inf.
inline double log_sum_exp(std::span<const double> ls) {
    double top = kNegInfinity;
    for (double l : ls) top = std::max(top, l);
    if (std::isinf(top) && top < 0.0) return kNegInfinity;
    double acc = 0.0;
    for (double l : ls)
        if (!(std::isinf(l) && l < 0.0)) acc += std::exp(l - top);
    return top + std::log(acc);
}

/// log(sum_i exp(ts_i) - k) for ts_i >= 0 and 0 <= k <= count-1, the shape of
/// every "sum of ratio powers minus (m-1)" factor. After factoring out the
/// max the inner sum stays >= exp(-max), so no cancellation below that.
inline double log_sum_exp_minus(std::span<const double> ts, double k) {
    double top = kNegInfinity;
    for (double t : ts) top = std::max(top, t);
    double acc = -k * std::exp(-top);
    for (double t : ts) acc += std::exp(t - top);
    return top + std::log(acc);
}

} // namespace blockdet
