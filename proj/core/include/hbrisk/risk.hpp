#pragma once

#include "hbrisk/estimators.hpp"
#include "hbrisk/quad.hpp"

namespace hbrisk {

enum class RiskMethod { closed_form, quadrature, monte_carlo };

const char* method_name(RiskMethod m);

struct RiskReport {
    EstimatorTag estimator_tag;
    double value = 0.0;
    RiskMethod method = RiskMethod::quadrature;
    double err_estimate = 0.0;
};

/// R(HB, rho) = d/n - (d-3)/n * 1/(1+n(1-rho)); exact.
RiskReport risk_hb_cs(const CompoundSymmetry& cs);

/// R(PHB, rho) = d/n - ((d-2)^2/2n) int u^{(d-2)/2-1} / sqrt(xi(u;rho)) du.
RiskReport risk_phb_cs(const CompoundSymmetry& cs, const QuadratureSettings& settings = {});

/// R(HB, G0) = d/n - ((d-3)^2/2n) int u^{(d-3)/2-1} / sqrt(xi_1(u)) du.
RiskReport risk_hb_general(const SpectrumSpec& spec, const QuadratureSettings& settings = {});

/// R(PHB, G0) = d/n - ((d-2)^2/2n) int u^{(d-2)/2-1} / sqrt(xi_2(u)) du.
RiskReport risk_phb_general(const SpectrumSpec& spec, const QuadratureSettings& settings = {});

RiskReport risk_mle(const ModelConfig& cfg);

/// H(rho) = R(PHB, rho) - R(HB, rho). For rho > 0 the analytically reduced
/// form (d-3 - (d-2) I(rho)) / (n [1+n(1-rho)]) is used; the near-crossover
/// difference of the two risks is tiny relative to their magnitude and the
/// reduced form avoids that cancellation. Direct subtraction otherwise.
double risk_diff_H(const CompoundSymmetry& cs, const QuadratureSettings& settings = {});

/// I(rho) = int h_rho(u) f_rho(u) du, in (0,1) and strictly decreasing in rho.
double I_of_rho(const CompoundSymmetry& cs, const QuadratureSettings& settings = {});

/// lim_{rho -> 1} I(rho) = int (d-2) u^{(d-2)/2-1} / (2 sqrt(1+nd(1-u))) du.
double lim_I_at_one(const ModelConfig& cfg, const QuadratureSettings& settings = {});

/// J(d) = lim_I_at_one with n = 1.
double J_of_d(int d, const QuadratureSettings& settings = {});

/// The mean-value point u0(rho) with h_rho(u0) = I(rho):
/// u0 = 1 - (1/n)(1-I^2) / ({1+(d-1)rho} I^2 - (1-rho)).
double u0_of_rho(const CompoundSymmetry& cs, const QuadratureSettings& settings = {});

/// K(rho) = ((d-2)^2/2n) int u^{(d-2)/2-1}/sqrt(xi(u;rho)) du
///          - beta_* (d-3) / (n [1+n(1-rho)]);
/// an upper bound on R(HB, G0) - R(PHB, G0) for the perturbed spectrum.
double risk_bound_K(const PerturbedSpectrum& ps, const QuadratureSettings& settings = {});

}  // namespace hbrisk
