#pragma once

#include <functional>

#include "hbrisk/domain.hpp"

namespace hbrisk {

struct QuadratureSettings {
    double rel_tol = 1e-10;
    double abs_tol = 1e-12;
    int max_subdivisions = 2048;
};

/// Integrand on (0, 1] behaving like c * u^p near u = 0 with p > -1.
/// When p is in (-1, 0) the integrator removes the singularity with the
/// substitution u = t^{1/(p+1)} before subdividing.
struct IntegrandKernel {
    std::function<double(double)> evaluator;
    double endpoint_exponent = 0.0;
};

struct QuadratureResult {
    double value = 0.0;
    double err_estimate = 0.0;
};

QuadratureResult integrate(const IntegrandKernel& kernel,
                           const QuadratureSettings& settings = {});

// --- kernel family shared by the risk formulas ---

/// xi(u; rho) = [1 + n{1+(d-1)rho}(1-u)] [1 + n(1-rho)(1-u)]^{d-1}.
double xi_cs(double u, const CompoundSymmetry& cs);
double log_xi_cs(double u, const CompoundSymmetry& cs);

/// xi_1(u) = [1 - (n(1-u)/d) sum lambda_j z_j^2 / (1 + n(1-u)lambda_j)]
///           * prod (1 + n(1-u)lambda_j).
double xi1_general(double u, const SpectrumSpec& spec);
double log_xi1_general(double u, const SpectrumSpec& spec);

/// xi_2(u) = prod (1 + n(1-u)lambda_j).
double xi2_general(double u, const SpectrumSpec& spec);
double log_xi2_general(double u, const SpectrumSpec& spec);

/// h_rho(u) = sqrt[(1+n(1-rho)(1-u)) / (1+n{1+(d-1)rho}(1-u))].
double h_kernel(double u, const CompoundSymmetry& cs);

/// f_rho(u) = (d-2)[1+n(1-rho)] u^{(d-2)/2-1} / (2[1+n(1-rho)(1-u)]^{d/2});
/// a probability density on [0,1].
double f_kernel(double u, const CompoundSymmetry& cs);

}  // namespace hbrisk
