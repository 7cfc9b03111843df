#include "hbrisk/estimators.hpp"

#include <numeric>

namespace hbrisk {

const char* tag_name(EstimatorTag tag) {
    switch (tag) {
        case EstimatorTag::MLE: return "MLE";
        case EstimatorTag::PHB: return "PHB";
        case EstimatorTag::HB: return "HB";
    }
    return "?";
}

namespace {
void check_length(const GroupMeans& gm, const char* who) {
    if (gm.ybar.size() != static_cast<size_t>(gm.config.d)) {
        throw LengthMismatch(std::string(who) + ": ybar length != d");
    }
}
}  // namespace

EstimateVector estimate_mle(const GroupMeans& gm) {
    check_length(gm, "estimate_mle");
    return EstimateVector{gm.ybar, EstimatorTag::MLE};
}

EstimateVector estimate_phb(const GroupMeans& gm) {
    check_length(gm, "estimate_phb");
    require_regime(gm.config, 3, "estimate_phb");
    const int d = gm.config.d;
    const int n = gm.config.n;
    double ss = 0.0;
    for (double y : gm.ybar) ss += y * y;
    if (ss == 0.0) {
        throw DegenerateInput("estimate_phb: sum of squared means is zero");
    }
    const double factor = 1.0 - (d - 2) / (n * ss);
    EstimateVector out{gm.ybar, EstimatorTag::PHB};
    for (double& v : out.values) v *= factor;
    return out;
}

EstimateVector estimate_hb(const GroupMeans& gm) {
    check_length(gm, "estimate_hb");
    require_regime(gm.config, 4, "estimate_hb");
    const int d = gm.config.d;
    const int n = gm.config.n;
    const double grand = std::accumulate(gm.ybar.begin(), gm.ybar.end(), 0.0) / d;
    double ss = 0.0;
    for (double y : gm.ybar) ss += (y - grand) * (y - grand);
    if (ss == 0.0) {
        throw DegenerateInput("estimate_hb: all group means equal");
    }
    const double factor = 1.0 - (d - 3) / (n * ss);
    EstimateVector out{gm.ybar, EstimatorTag::HB};
    for (double& v : out.values) v = grand + factor * (v - grand);
    return out;
}

double squared_loss(const EstimateVector& est, const std::vector<double>& mu) {
    if (est.values.size() != mu.size()) {
        throw LengthMismatch("squared_loss: estimate and mu lengths differ");
    }
    double loss = 0.0;
    for (size_t j = 0; j < mu.size(); ++j) {
        const double e = est.values[j] - mu[j];
        loss += e * e;
    }
    return loss;
}

}  // namespace hbrisk
