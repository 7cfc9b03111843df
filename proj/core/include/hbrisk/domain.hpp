#pragma once

#include <vector>

#include "hbrisk/errors.hpp"

namespace hbrisk {

/// Problem size: d normal populations, n replicates per population.
/// Different operations need different floors on d (3 for PHB, 4 for HB,
/// 5 for the crossover machinery); each operation enforces its own regime.
struct ModelConfig {
    int d = 0;
    int n = 0;
};

void require_regime(const ModelConfig& cfg, int min_d, const char* who);

/// Correlation rho identifying the compound-symmetric covariance
/// Sigma_d(rho) = (1-rho) I_d + rho 1_d 1_d^T, positive definite on
/// -1/(d-1) < rho < 1.
struct CompoundSymmetry {
    double rho = 0.0;
    ModelConfig config;
};

/// General covariance given through its eigenvalues and the rotated
/// ones-vector z = P^T 1_d. The risk formulas consume Sigma only through
/// (lambda, z), so the full eigenvector matrix is never stored.
struct SpectrumSpec {
    std::vector<double> lambdas;
    std::vector<double> z;
    ModelConfig config;
};

/// Compound-symmetric spectrum with the largest eigenvalue increased by nu.
/// Admissible range is 0 < nu < B(d, n); B comes from the bounds module and
/// is validated there (perturb_spectrum takes the precomputed B).
struct PerturbedSpectrum {
    CompoundSymmetry base;
    double nu = 0.0;
};

CompoundSymmetry make_compound_symmetry(int d, int n, double rho);

/// Eigenvalues of Sigma_d(rho): 1-rho with multiplicity d-1 and
/// 1+(d-1)rho for the eigenvector 1_d/sqrt(d); hence z = (0,...,0,sqrt(d)).
SpectrumSpec spectrum_of(const CompoundSymmetry& cs);

/// Spectrum with lambda_d increased by nu. `bound_B` is B(d,n) from
/// compute_bounds; throws DomainError when nu is outside (0, B).
SpectrumSpec perturb_spectrum(const PerturbedSpectrum& ps, double bound_B);

void validate_spectrum(const SpectrumSpec& spec);

/// Orthonormal eigenvector columns of Sigma_d(rho) in the ordering used by
/// spectrum_of: d-1 Helmert columns orthogonal to 1_d, then 1_d/sqrt(d).
std::vector<std::vector<double>> cs_eigenvectors(int d);

}  // namespace hbrisk
