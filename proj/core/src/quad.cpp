#include "hbrisk/quad.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

namespace hbrisk {

namespace {

// Gauss-Kronrod 7-15 nodes/weights on [-1, 1]. The |G7 - K15| gap drives
// the adaptive error estimate per panel.
constexpr double kXgk[8] = {
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144838258730,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000};
constexpr double kWgk[8] = {
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714};
constexpr double kWg[4] = {
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327};

struct Panel {
    double a, b;
    double value, error;
};

template <class F>
Panel gk15(const F& f, double a, double b) {
    const double c = 0.5 * (a + b);
    const double h = 0.5 * (b - a);
    const double fc = f(c);
    double res_k = kWgk[7] * fc;
    double res_g = kWg[3] * fc;
    for (int i = 0; i < 7; ++i) {
        const double x = h * kXgk[i];
        const double fsum = f(c - x) + f(c + x);
        res_k += kWgk[i] * fsum;
        if (i % 2 == 1) res_g += kWg[i / 2] * fsum;
    }
    Panel p;
    p.a = a;
    p.b = b;
    p.value = res_k * h;
    p.error = std::abs(res_k - res_g) * h;
    return p;
}

template <class F>
QuadratureResult adaptive(const F& f, const QuadratureSettings& settings) {
    // Seed with a partition refined toward both endpoints: the risk kernels
    // concentrate in an O(1/(nd))-wide layer at u = 1, which a single panel's
    // nodes never sample, so one-panel startup would self-accept a zero.
    static constexpr double kKnots[] = {0.0,    1e-8, 1e-6,   1e-4,     1e-2,
                                        0.1,    0.5,  0.9,    0.99,     1 - 1e-4,
                                        1 - 1e-6, 1 - 1e-8, 1.0};
    std::vector<Panel> done;
    std::vector<Panel> work;
    double scale = 0.0;
    for (std::size_t i = 0; i + 1 < std::size(kKnots); ++i) {
        work.push_back(gk15(f, kKnots[i], kKnots[i + 1]));
        scale += std::abs(work.back().value);
    }
    const double tol = std::max(settings.abs_tol, settings.rel_tol * std::max(scale, 1e-300));
    int subdivisions = 0;
    while (!work.empty()) {
        Panel p = work.back();
        work.pop_back();
        if (p.error <= tol * (p.b - p.a) || p.b - p.a < 1e-14) {
            done.push_back(p);
            continue;
        }
        if (++subdivisions > settings.max_subdivisions) {
            throw ConvergenceFailure("integrate: max_subdivisions exhausted");
        }
        const double mid = 0.5 * (p.a + p.b);
        work.push_back(gk15(f, mid, p.b));
        work.push_back(gk15(f, p.a, mid));
    }
    // Fixed summation order (by left endpoint) keeps results bit-identical
    // regardless of the subdivision history.
    std::sort(done.begin(), done.end(),
              [](const Panel& x, const Panel& y) { return x.a < y.a; });
    QuadratureResult out;
    for (const Panel& p : done) {
        out.value += p.value;
        out.err_estimate += p.error;
    }
    return out;
}

}  // namespace

QuadratureResult integrate(const IntegrandKernel& kernel,
                           const QuadratureSettings& settings) {
    const double p = kernel.endpoint_exponent;
    if (!(p > -1.0)) {
        throw DomainError("integrate: endpoint_exponent must exceed -1");
    }
    if (p >= 0.0) {
        return adaptive(kernel.evaluator, settings);
    }
    // u = t^s with s = 1/(p+1) turns the u^p endpoint behavior into a
    // bounded transformed integrand: f(t^s) * s * t^{s-1}.
    const double s = 1.0 / (p + 1.0);
    auto g = [&kernel, s](double t) {
        const double u = std::pow(t, s);
        return kernel.evaluator(u) * s * std::pow(t, s - 1.0);
    };
    return adaptive(g, settings);
}

namespace {
void check_unit(double u, const char* who) {
    if (!(u >= 0.0) || !(u <= 1.0)) {
        throw DomainError(std::string(who) + ": u outside [0,1]");
    }
}
}  // namespace

double log_xi_cs(double u, const CompoundSymmetry& cs) {
    check_unit(u, "xi_cs");
    const int d = cs.config.d;
    const int n = cs.config.n;
    const double w = 1.0 - u;
    return std::log1p(n * (1.0 + (d - 1) * cs.rho) * w) +
           (d - 1) * std::log1p(n * (1.0 - cs.rho) * w);
}

double xi_cs(double u, const CompoundSymmetry& cs) {
    return std::exp(log_xi_cs(u, cs));
}

double log_xi1_general(double u, const SpectrumSpec& spec) {
    check_unit(u, "xi1_general");
    const int d = spec.config.d;
    const int n = spec.config.n;
    const double w = n * (1.0 - u);
    double log_prod = 0.0;
    double s = 0.0;
    for (int j = 0; j < d; ++j) {
        const double lam = spec.lambdas[static_cast<size_t>(j)];
        const double zj = spec.z[static_cast<size_t>(j)];
        log_prod += std::log1p(w * lam);
        s += lam * zj * zj / (1.0 + w * lam);
    }
    const double bracket = 1.0 - (w / d) * s;
    if (!(bracket > 0.0)) {
        throw NumericalError("xi1_general: nonpositive bracket; check ||z||^2 = d");
    }
    return std::log(bracket) + log_prod;
}

double xi1_general(double u, const SpectrumSpec& spec) {
    return std::exp(log_xi1_general(u, spec));
}

double log_xi2_general(double u, const SpectrumSpec& spec) {
    check_unit(u, "xi2_general");
    const int n = spec.config.n;
    const double w = n * (1.0 - u);
    double log_prod = 0.0;
    for (double lam : spec.lambdas) log_prod += std::log1p(w * lam);
    return log_prod;
}

double xi2_general(double u, const SpectrumSpec& spec) {
    return std::exp(log_xi2_general(u, spec));
}

double h_kernel(double u, const CompoundSymmetry& cs) {
    check_unit(u, "h_kernel");
    const int d = cs.config.d;
    const int n = cs.config.n;
    const double w = 1.0 - u;
    const double num = 1.0 + n * (1.0 - cs.rho) * w;
    const double den = 1.0 + n * (1.0 + (d - 1) * cs.rho) * w;
    return std::sqrt(num / den);
}

double f_kernel(double u, const CompoundSymmetry& cs) {
    check_unit(u, "f_kernel");
    const int d = cs.config.d;
    const int n = cs.config.n;
    const double p = 0.5 * (d - 2) - 1.0;
    if (u == 0.0) {
        if (p > 0.0) return 0.0;
        if (p < 0.0) throw DomainError("f_kernel: u = 0 needs d >= 4");
    }
    const double log_f = std::log(0.5 * (d - 2)) + std::log1p(n * (1.0 - cs.rho)) +
                         (u == 0.0 ? 0.0 : p * std::log(u)) -
                         0.5 * d * std::log1p(n * (1.0 - cs.rho) * (1.0 - u));
    return std::exp(log_f);
}

}  // namespace hbrisk
