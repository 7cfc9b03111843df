#include "hbrisk/risk.hpp"

#include <cmath>

namespace hbrisk {

const char* method_name(RiskMethod m) {
    switch (m) {
        case RiskMethod::closed_form: return "closed_form";
        case RiskMethod::quadrature: return "quadrature";
        case RiskMethod::monte_carlo: return "monte_carlo";
    }
    return "?";
}

RiskReport risk_hb_cs(const CompoundSymmetry& cs) {
    require_regime(cs.config, 4, "risk_hb_cs");
    const int d = cs.config.d;
    const int n = cs.config.n;
    const double value =
        static_cast<double>(d) / n - (d - 3) / (n * (1.0 + n * (1.0 - cs.rho)));
    return RiskReport{EstimatorTag::HB, value, RiskMethod::closed_form, 0.0};
}

RiskReport risk_phb_cs(const CompoundSymmetry& cs, const QuadratureSettings& settings) {
    require_regime(cs.config, 3, "risk_phb_cs");
    const int d = cs.config.d;
    const int n = cs.config.n;
    const double p = 0.5 * (d - 2) - 1.0;
    IntegrandKernel kernel{
        [&cs, p](double u) { return std::exp(p * std::log(u) - 0.5 * log_xi_cs(u, cs)); },
        p};
    const QuadratureResult q = integrate(kernel, settings);
    const double coef = (d - 2) * (d - 2) / (2.0 * n);
    return RiskReport{EstimatorTag::PHB, static_cast<double>(d) / n - coef * q.value,
                      RiskMethod::quadrature, coef * q.err_estimate};
}

RiskReport risk_hb_general(const SpectrumSpec& spec, const QuadratureSettings& settings) {
    require_regime(spec.config, 4, "risk_hb_general");
    validate_spectrum(spec);
    const int d = spec.config.d;
    const int n = spec.config.n;
    const double p = 0.5 * (d - 3) - 1.0;
    IntegrandKernel kernel{
        [&spec, p](double u) {
            return std::exp(p * std::log(u) - 0.5 * log_xi1_general(u, spec));
        },
        p};
    const QuadratureResult q = integrate(kernel, settings);
    const double coef = (d - 3) * (d - 3) / (2.0 * n);
    return RiskReport{EstimatorTag::HB, static_cast<double>(d) / n - coef * q.value,
                      RiskMethod::quadrature, coef * q.err_estimate};
}

RiskReport risk_phb_general(const SpectrumSpec& spec, const QuadratureSettings& settings) {
    require_regime(spec.config, 3, "risk_phb_general");
    validate_spectrum(spec);
    const int d = spec.config.d;
    const int n = spec.config.n;
    const double p = 0.5 * (d - 2) - 1.0;
    IntegrandKernel kernel{
        [&spec, p](double u) {
            return std::exp(p * std::log(u) - 0.5 * log_xi2_general(u, spec));
        },
        p};
    const QuadratureResult q = integrate(kernel, settings);
    const double coef = (d - 2) * (d - 2) / (2.0 * n);
    return RiskReport{EstimatorTag::PHB, static_cast<double>(d) / n - coef * q.value,
                      RiskMethod::quadrature, coef * q.err_estimate};
}

RiskReport risk_mle(const ModelConfig& cfg) {
    require_regime(cfg, 1, "risk_mle");
    return RiskReport{EstimatorTag::MLE, static_cast<double>(cfg.d) / cfg.n,
                      RiskMethod::closed_form, 0.0};
}

double I_of_rho(const CompoundSymmetry& cs, const QuadratureSettings& settings) {
    require_regime(cs.config, 4, "I_of_rho");
    const int d = cs.config.d;
    const int n = cs.config.n;
    const double p = 0.5 * (d - 2) - 1.0;
    const double log_c = std::log(0.5 * (d - 2)) + std::log1p(n * (1.0 - cs.rho));
    IntegrandKernel kernel{
        [&cs, p, log_c, d, n](double u) {
            const double w = 1.0 - u;
            const double log_f =
                log_c + p * std::log(u) - 0.5 * d * std::log1p(n * (1.0 - cs.rho) * w);
            const double log_h =
                0.5 * (std::log1p(n * (1.0 - cs.rho) * w) -
                       std::log1p(n * (1.0 + (d - 1) * cs.rho) * w));
            return std::exp(log_f + log_h);
        },
        p};
    return integrate(kernel, settings).value;
}

double lim_I_at_one(const ModelConfig& cfg, const QuadratureSettings& settings) {
    require_regime(cfg, 4, "lim_I_at_one");
    const int d = cfg.d;
    const int n = cfg.n;
    const double p = 0.5 * (d - 2) - 1.0;
    IntegrandKernel kernel{
        [d, n, p](double u) {
            return 0.5 * (d - 2) *
                   std::exp(p * std::log(u) -
                            0.5 * std::log1p(static_cast<double>(n) * d * (1.0 - u)));
        },
        p};
    return integrate(kernel, settings).value;
}

double J_of_d(int d, const QuadratureSettings& settings) {
    return lim_I_at_one(ModelConfig{d, 1}, settings);
}

double risk_diff_H(const CompoundSymmetry& cs, const QuadratureSettings& settings) {
    require_regime(cs.config, 5, "risk_diff_H");
    const int d = cs.config.d;
    const int n = cs.config.n;
    if (cs.rho > 0.0) {
        // Centered variant of the reduced form: integrating sqrt(alpha_d) - h
        // against f keeps the tiny values near the root and near rho_L from
        // drowning in the (d-3) - (d-2)I cancellation at large d*n.
        const double sqrt_alpha = (d - 3.0) / (d - 2.0);
        const double p = 0.5 * (d - 2) - 1.0;
        const double log_c = std::log(0.5 * (d - 2)) + std::log1p(n * (1.0 - cs.rho));
        IntegrandKernel kernel{
            [&cs, p, log_c, d, n, sqrt_alpha](double u) {
                const double w = 1.0 - u;
                const double log_f = log_c + p * std::log(u) -
                                     0.5 * d * std::log1p(n * (1.0 - cs.rho) * w);
                const double log_h =
                    0.5 * (std::log1p(n * (1.0 - cs.rho) * w) -
                           std::log1p(n * (1.0 + (d - 1) * cs.rho) * w));
                return (sqrt_alpha - std::exp(log_h)) * std::exp(log_f);
            },
            p};
        const double centered = integrate(kernel, settings).value;
        return (d - 2) * centered / (n * (1.0 + n * (1.0 - cs.rho)));
    }
    return risk_phb_cs(cs, settings).value - risk_hb_cs(cs).value;
}

double u0_of_rho(const CompoundSymmetry& cs, const QuadratureSettings& settings) {
    require_regime(cs.config, 5, "u0_of_rho");
    if (!(cs.rho > 0.0)) {
        throw DomainError("u0_of_rho: defined for rho in (0,1)");
    }
    const int d = cs.config.d;
    const int n = cs.config.n;
    const double I = I_of_rho(cs, settings);
    const double I2 = I * I;
    const double den = (1.0 + (d - 1) * cs.rho) * I2 - (1.0 - cs.rho);
    if (!(den > 0.0)) {
        throw NumericalError("u0_of_rho: nonpositive denominator; I(rho) below h_rho(0)");
    }
    return 1.0 - (1.0 - I2) / (n * den);
}

double risk_bound_K(const PerturbedSpectrum& ps, const QuadratureSettings& settings) {
    require_regime(ps.base.config, 5, "risk_bound_K");
    const int d = ps.base.config.d;
    const int n = ps.base.config.n;
    const double beta_star = 1.0 / std::sqrt(1.0 + n * ps.nu);
    // First term equals d/n - R(PHB, rho) for the unperturbed base.
    const double phb_integral =
        static_cast<double>(d) / n - risk_phb_cs(ps.base, settings).value;
    return phb_integral -
           beta_star * (d - 3) / (n * (1.0 + n * (1.0 - ps.base.rho)));
}

}  // namespace hbrisk
