#pragma once

#include <vector>

#include "hbrisk/errors.hpp"

namespace hbrisk {

/// Ordinary least squares fit of y on a design matrix (rows of equal
/// length, intercept column included by the caller).
struct OlsFit {
    std::vector<double> coefficients;
    std::vector<double> std_errors;
    std::vector<double> t_statistics;
    double adjusted_r2 = 0.0;
    int num_points = 0;
};

OlsFit ols_fit(const std::vector<std::vector<double>>& X, const std::vector<double>& y);

}  // namespace hbrisk
