#pragma once

#include <string>
#include <vector>

#include "hbrisk/domain.hpp"

namespace hbrisk {

enum class EstimatorTag { MLE, PHB, HB };

const char* tag_name(EstimatorTag tag);

/// Per-group sample means Ybar_j; the estimators depend on the data only
/// through these sufficient statistics.
struct GroupMeans {
    std::vector<double> ybar;
    ModelConfig config;
};

struct EstimateVector {
    std::vector<double> values;
    EstimatorTag estimator_tag;
};

EstimateVector estimate_mle(const GroupMeans& gm);

/// Shrinks toward the origin: [1 - (d-2)/(n sum Ybar_j^2)] Ybar_j.
/// The factor is used as-is, negative values included.
EstimateVector estimate_phb(const GroupMeans& gm);

/// Shrinks toward the grand mean:
/// Ybar + [1 - (d-3)/(n sum (Ybar_j - Ybar)^2)] (Ybar_j - Ybar).
EstimateVector estimate_hb(const GroupMeans& gm);

double squared_loss(const EstimateVector& est, const std::vector<double>& mu);

}  // namespace hbrisk
