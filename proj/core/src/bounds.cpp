#include "hbrisk/bounds.hpp"

#include <cmath>

namespace hbrisk {

BoundSet compute_bounds(const ModelConfig& cfg, const QuadratureSettings& settings) {
    require_regime(cfg, 5, "compute_bounds");
    const int d = cfg.d;
    const int n = cfg.n;
    BoundSet bs;
    bs.config = cfg;
    bs.alpha_d = std::pow((d - 3.0) / (d - 2.0), 2);

    // delta_* enters rho_U through a reciprocal, so tighten its quadrature.
    QuadratureSettings tight = settings;
    tight.rel_tol = std::min(settings.rel_tol, 1e-12);
    const double limI = lim_I_at_one(cfg, tight);
    bs.delta_star = (1.0 / (limI * limI) - 1.0) / (static_cast<double>(d) * n);

    const double denom = 1.0 + (d - 1) * bs.alpha_d;
    bs.rho_L = (1.0 - bs.alpha_d) * (1.0 + 1.0 / n) / denom;
    bs.rho_U = (1.0 - bs.alpha_d) * (1.0 + 1.0 / (n * bs.delta_star)) / denom;
    bs.B = (bs.alpha_d * (1.0 + n * d * bs.delta_star) - 1.0) / n;

    if (!(bs.alpha_d > 0.0 && bs.alpha_d < 1.0) ||
        !(bs.rho_L > 0.0 && bs.rho_L < bs.rho_U && bs.rho_U < 1.0) ||
        !(bs.delta_star > 0.0 && bs.delta_star < 1.0) || !(bs.B > 0.0)) {
        throw InvariantViolation("compute_bounds: bound set violates its invariants");
    }
    return bs;
}

PerturbedBoundSet compute_perturbed_bounds(const ModelConfig& cfg, double nu,
                                           const QuadratureSettings& settings) {
    const BoundSet bs = compute_bounds(cfg, settings);
    if (!(nu > 0.0) || !(nu < bs.B)) {
        throw DomainError("compute_perturbed_bounds: nu outside (0, B)");
    }
    const int d = cfg.d;
    const int n = cfg.n;
    PerturbedBoundSet pbs;
    pbs.nu = nu;
    pbs.beta_star = 1.0 / std::sqrt(1.0 + n * nu);
    pbs.alpha_star_d = pbs.beta_star * pbs.beta_star * bs.alpha_d;
    const double denom = 1.0 + (d - 1) * pbs.alpha_star_d;
    pbs.rho_tilde_L = (1.0 - pbs.alpha_star_d) * (1.0 + 1.0 / n) / denom;
    pbs.rho_tilde_U =
        (1.0 - pbs.alpha_star_d) * (1.0 + 1.0 / (n * bs.delta_star)) / denom;
    if (!(pbs.rho_tilde_L > 0.0 && pbs.rho_tilde_L < pbs.rho_tilde_U &&
          pbs.rho_tilde_U < 1.0)) {
        throw InvariantViolation("compute_perturbed_bounds: tilde bounds out of order");
    }
    return pbs;
}

CrossoverCertificate find_crossover(const ModelConfig& cfg,
                                    const QuadratureSettings& settings,
                                    double solver_tol) {
    const BoundSet bs = compute_bounds(cfg, settings);
    auto H = [&](double rho) {
        return risk_diff_H(make_compound_symmetry(cfg.d, cfg.n, rho), settings);
    };
    double lo = bs.rho_L;
    double hi = bs.rho_U;
    if (!(H(lo) < 0.0)) {
        throw BracketFailure("find_crossover: H(rho_L) >= 0");
    }
    // rho_U is occasionally below the sign change (the closed forms put the
    // root past it for some (d, n)), but H -> (d-3)/(n(n+1)) > 0 as rho -> 1,
    // so pushing the endpoint toward 1 always recovers a valid bracket.
    while (!(H(hi) > 0.0)) {
        const double next = 1.0 - 0.5 * (1.0 - hi);
        if (next >= 1.0 - 1e-9 || next <= hi) {
            throw BracketFailure("find_crossover: no sign change below rho = 1");
        }
        hi = next;
    }
    CrossoverCertificate cert;
    double mid = 0.5 * (lo + hi);
    double h_mid = H(mid);
    // Width-driven stopping: H flattens like 1/n^2, so an absolute residual
    // exit would fire far from the root at large n. The residual tolerance is
    // re-checked on the final iterate below.
    while (h_mid != 0.0 && hi - lo > 1e-10) {
        if (h_mid < 0.0) {
            lo = mid;
        } else {
            hi = mid;
        }
        mid = 0.5 * (lo + hi);
        h_mid = H(mid);
        ++cert.iterations;
    }
    cert.rho_star = mid;
    cert.bracket_lo = lo;
    cert.bracket_hi = hi;
    cert.residual = std::abs(h_mid);
    if (!(cert.residual <= solver_tol)) {
        throw ConvergenceFailure("find_crossover: residual above solver_tol");
    }
    return cert;
}

}  // namespace hbrisk
