#include "hbrisk/ols.hpp"

#include <cmath>

namespace hbrisk {

namespace {

// Solve A x = b in place via Gaussian elimination with partial pivoting;
// also accumulates A^{-1} for the coefficient covariance.
std::vector<std::vector<double>> invert(std::vector<std::vector<double>> a) {
    const size_t k = a.size();
    std::vector<std::vector<double>> inv(k, std::vector<double>(k, 0.0));
    for (size_t i = 0; i < k; ++i) inv[i][i] = 1.0;
    for (size_t col = 0; col < k; ++col) {
        size_t pivot = col;
        for (size_t r = col + 1; r < k; ++r) {
            if (std::abs(a[r][col]) > std::abs(a[pivot][col])) pivot = r;
        }
        if (std::abs(a[pivot][col]) < 1e-12) {
            throw NumericalError("ols_fit: design matrix is rank-deficient");
        }
        std::swap(a[col], a[pivot]);
        std::swap(inv[col], inv[pivot]);
        const double scale = a[col][col];
        for (size_t c = 0; c < k; ++c) {
            a[col][c] /= scale;
            inv[col][c] /= scale;
        }
        for (size_t r = 0; r < k; ++r) {
            if (r == col) continue;
            const double m = a[r][col];
            if (m == 0.0) continue;
            for (size_t c = 0; c < k; ++c) {
                a[r][c] -= m * a[col][c];
                inv[r][c] -= m * inv[col][c];
            }
        }
    }
    return inv;
}

}  // namespace

OlsFit ols_fit(const std::vector<std::vector<double>>& X, const std::vector<double>& y) {
    const size_t m = X.size();
    if (m == 0 || m != y.size()) {
        throw LengthMismatch("ols_fit: X and y row counts differ or are zero");
    }
    const size_t k = X.front().size();
    if (m <= k) {
        throw DomainError("ols_fit: need more observations than predictors");
    }
    std::vector<std::vector<double>> xtx(k, std::vector<double>(k, 0.0));
    std::vector<double> xty(k, 0.0);
    for (size_t i = 0; i < m; ++i) {
        if (X[i].size() != k) throw LengthMismatch("ols_fit: ragged design matrix");
        for (size_t a = 0; a < k; ++a) {
            xty[a] += X[i][a] * y[i];
            for (size_t b = 0; b < k; ++b) xtx[a][b] += X[i][a] * X[i][b];
        }
    }
    const std::vector<std::vector<double>> xtx_inv = invert(xtx);

    OlsFit fit;
    fit.num_points = static_cast<int>(m);
    fit.coefficients.assign(k, 0.0);
    for (size_t a = 0; a < k; ++a) {
        for (size_t b = 0; b < k; ++b) fit.coefficients[a] += xtx_inv[a][b] * xty[b];
    }

    double ybar = 0.0;
    for (double v : y) ybar += v;
    ybar /= static_cast<double>(m);
    double ss_res = 0.0, ss_tot = 0.0;
    for (size_t i = 0; i < m; ++i) {
        double fit_i = 0.0;
        for (size_t a = 0; a < k; ++a) fit_i += X[i][a] * fit.coefficients[a];
        ss_res += (y[i] - fit_i) * (y[i] - fit_i);
        ss_tot += (y[i] - ybar) * (y[i] - ybar);
    }
    const double dof = static_cast<double>(m - k);
    const double sigma2 = ss_res / dof;
    fit.std_errors.assign(k, 0.0);
    fit.t_statistics.assign(k, 0.0);
    for (size_t a = 0; a < k; ++a) {
        fit.std_errors[a] = std::sqrt(sigma2 * xtx_inv[a][a]);
        fit.t_statistics[a] =
            fit.std_errors[a] > 0.0 ? fit.coefficients[a] / fit.std_errors[a] : 0.0;
    }
    const double r2 = ss_tot > 0.0 ? 1.0 - ss_res / ss_tot : 0.0;
    fit.adjusted_r2 = 1.0 - (1.0 - r2) * (static_cast<double>(m) - 1.0) / dof;
    return fit;
}

}  // namespace hbrisk
