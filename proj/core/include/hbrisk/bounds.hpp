#pragma once

#include "hbrisk/risk.hpp"

namespace hbrisk {

/// Analytic constants bracketing the crossover correlation:
///   alpha_d = ((d-3)/(d-2))^2
///   delta_* = (1/(dn)) [1 / lim_{rho->1} I^2(rho) - 1]
///   rho_L   = (1-alpha_d)(1+1/n) / (1+(d-1)alpha_d)
///   rho_U   = (1-alpha_d)(1+1/(n delta_*)) / (1+(d-1)alpha_d)
///   B       = (1/n)[alpha_d (1+nd delta_*) - 1]
struct BoundSet {
    double alpha_d = 0.0;
    double rho_L = 0.0;
    double rho_U = 0.0;
    double delta_star = 0.0;
    double B = 0.0;
    ModelConfig config;
};

/// Perturbed-model constants: beta_* = 1/sqrt(1+n nu), alpha*_d = beta_*^2
/// alpha_d, and the tilde bounds with alpha_d replaced by alpha*_d.
struct PerturbedBoundSet {
    double beta_star = 0.0;
    double alpha_star_d = 0.0;
    double rho_tilde_L = 0.0;
    double rho_tilde_U = 0.0;
    double nu = 0.0;
};

struct CrossoverCertificate {
    double rho_star = 0.0;
    double bracket_lo = 0.0;
    double bracket_hi = 0.0;
    double residual = 0.0;
    int iterations = 0;
};

BoundSet compute_bounds(const ModelConfig& cfg, const QuadratureSettings& settings = {});

PerturbedBoundSet compute_perturbed_bounds(const ModelConfig& cfg, double nu,
                                           const QuadratureSettings& settings = {});

/// Bisection of H over [rho_L, rho_U]. H is strictly increasing on (0,1),
/// so the bracketed sign change is the unique root. Stops when
/// |H(mid)| <= solver_tol or the bracket is narrower than 1e-10.
CrossoverCertificate find_crossover(const ModelConfig& cfg,
                                    const QuadratureSettings& settings = {},
                                    double solver_tol = 1e-8);

}  // namespace hbrisk
