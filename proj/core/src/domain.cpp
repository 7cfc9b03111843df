#include "hbrisk/domain.hpp"

#include <cmath>
#include <string>

namespace hbrisk {

namespace {
// Strict exclusion margin at the interval endpoints; Sigma_d(rho) is
// singular there and the quadrature kernels divide by its eigenvalues.
constexpr double kRhoMargin = 1e-12;
}  // namespace

void require_regime(const ModelConfig& cfg, int min_d, const char* who) {
    if (cfg.d < min_d) {
        throw DomainError(std::string(who) + ": requires d >= " + std::to_string(min_d) +
                          ", got d = " + std::to_string(cfg.d));
    }
    if (cfg.n < 1) {
        throw DomainError(std::string(who) + ": requires n >= 1, got n = " +
                          std::to_string(cfg.n));
    }
}

CompoundSymmetry make_compound_symmetry(int d, int n, double rho) {
    ModelConfig cfg{d, n};
    require_regime(cfg, 3, "make_compound_symmetry");
    const double lo = -1.0 / (d - 1);
    if (!(rho > lo + kRhoMargin) || !(rho < 1.0 - kRhoMargin)) {
        throw DomainError("make_compound_symmetry: rho = " + std::to_string(rho) +
                          " outside (" + std::to_string(lo) + ", 1)");
    }
    return CompoundSymmetry{rho, cfg};
}

SpectrumSpec spectrum_of(const CompoundSymmetry& cs) {
    const int d = cs.config.d;
    SpectrumSpec spec;
    spec.config = cs.config;
    spec.lambdas.assign(static_cast<size_t>(d), 1.0 - cs.rho);
    spec.lambdas.back() = 1.0 + (d - 1) * cs.rho;
    spec.z.assign(static_cast<size_t>(d), 0.0);
    spec.z.back() = std::sqrt(static_cast<double>(d));
    return spec;
}

SpectrumSpec perturb_spectrum(const PerturbedSpectrum& ps, double bound_B) {
    if (!(ps.nu > 0.0) || !(ps.nu < bound_B)) {
        throw DomainError("perturb_spectrum: nu = " + std::to_string(ps.nu) +
                          " outside (0, B) with B = " + std::to_string(bound_B));
    }
    SpectrumSpec spec = spectrum_of(ps.base);
    spec.lambdas.back() += ps.nu;
    return spec;
}

void validate_spectrum(const SpectrumSpec& spec) {
    const size_t d = static_cast<size_t>(spec.config.d);
    if (spec.lambdas.size() != d || spec.z.size() != d) {
        throw LengthMismatch("SpectrumSpec: lambda/z length != d");
    }
    double z2 = 0.0;
    for (size_t j = 0; j < d; ++j) {
        if (!(spec.lambdas[j] > 0.0)) {
            throw DomainError("SpectrumSpec: lambda_" + std::to_string(j) + " <= 0");
        }
        z2 += spec.z[j] * spec.z[j];
    }
    if (std::abs(z2 - static_cast<double>(d)) > 1e-10) {
        throw InvariantViolation("SpectrumSpec: ||z||^2 = " + std::to_string(z2) +
                                 " != d = " + std::to_string(d));
    }
}

std::vector<std::vector<double>> cs_eigenvectors(int d) {
    if (d < 2) {
        throw DomainError("cs_eigenvectors: d >= 2 required");
    }
    std::vector<std::vector<double>> cols(static_cast<size_t>(d),
                                          std::vector<double>(static_cast<size_t>(d), 0.0));
    for (int j = 1; j < d; ++j) {
        const double norm = std::sqrt(static_cast<double>(j) * (j + 1));
        for (int i = 0; i < j; ++i) cols[static_cast<size_t>(j - 1)][static_cast<size_t>(i)] = 1.0 / norm;
        cols[static_cast<size_t>(j - 1)][static_cast<size_t>(j)] = -j / norm;
    }
    const double inv_sqrt_d = 1.0 / std::sqrt(static_cast<double>(d));
    for (int i = 0; i < d; ++i) cols.back()[static_cast<size_t>(i)] = inv_sqrt_d;
    return cols;
}

}  // namespace hbrisk
