#include "hbrisk/mc.hpp"

#include <atomic>
#include <cmath>
#include <thread>

namespace hbrisk {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

struct Accum {
    double sum = 0.0;
    double sumsq = 0.0;
    void add(double x) {
        sum += x;
        sumsq += x * x;
    }
};

struct BlockSums {
    Accum mle, phb, hb;
};

McRiskEstimate finalize(const Accum& a, std::int64_t r, EstimatorTag tag) {
    const double mean = a.sum / r;
    const double var = std::max(0.0, (a.sumsq - r * mean * mean) / (r - 1));
    return McRiskEstimate{mean, std::sqrt(var / r), r, tag};
}

template <class MuSampler>
McRiskTriple run_plan(const ModelConfig& cfg, const SimPlan& plan, int threads,
                      const MuSampler& draw_mu) {
    if (plan.replicates < 2 || plan.block_size < 1) {
        throw DomainError("mc_integrated_risk: need replicates >= 2, block_size >= 1");
    }
    require_regime(cfg, 4, "mc_integrated_risk");
    const int d = cfg.d;
    const int n = cfg.n;
    const std::int64_t n_blocks =
        (plan.replicates + plan.block_size - 1) / plan.block_size;
    std::vector<BlockSums> blocks(static_cast<size_t>(n_blocks));

    auto run_block = [&](std::int64_t b) {
        RngStream stream = make_block_stream(plan.seed, b);
        std::normal_distribution<double> gauss(0.0, 1.0);
        const std::int64_t begin = b * plan.block_size;
        const std::int64_t count = std::min(plan.block_size, plan.replicates - begin);
        BlockSums& out = blocks[static_cast<size_t>(b)];
        std::vector<double> ybar(static_cast<size_t>(d));
        for (std::int64_t r = 0; r < count; ++r) {
            const std::vector<double> mu = draw_mu(stream);
            double mu_bar = 0.0;
            for (double m : mu) mu_bar += m;
            mu_bar /= d;
            if (plan.mode == McMode::rao_blackwell) {
                double lam_phb = 0.0, lam_hb = 0.0;
                for (double m : mu) {
                    lam_phb += m * m;
                    lam_hb += (m - mu_bar) * (m - mu_bar);
                }
                lam_phb *= n;
                lam_hb *= n;
                out.mle.add(static_cast<double>(d) / n);
                out.phb.add(static_cast<double>(d) / n -
                            (d - 2.0) * (d - 2.0) / n * ncx2_inv_moment(d, lam_phb));
                out.hb.add(static_cast<double>(d) / n -
                           (d - 3.0) * (d - 3.0) / n * ncx2_inv_moment(d - 1, lam_hb));
            } else {
                const double sd = 1.0 / std::sqrt(static_cast<double>(n));
                for (size_t j = 0; j < mu.size(); ++j) {
                    ybar[j] = mu[j] + sd * gauss(stream);
                }
                GroupMeans gm{ybar, cfg};
                out.mle.add(squared_loss(estimate_mle(gm), mu));
                out.phb.add(squared_loss(estimate_phb(gm), mu));
                out.hb.add(squared_loss(estimate_hb(gm), mu));
            }
        }
    };

    if (threads <= 1) {
        for (std::int64_t b = 0; b < n_blocks; ++b) run_block(b);
    } else {
        std::atomic<std::int64_t> next{0};
        std::vector<std::thread> pool;
        pool.reserve(static_cast<size_t>(threads));
        for (int t = 0; t < threads; ++t) {
            pool.emplace_back([&]() {
                for (std::int64_t b = next.fetch_add(1); b < n_blocks;
                     b = next.fetch_add(1)) {
                    run_block(b);
                }
            });
        }
        for (auto& th : pool) th.join();
    }

    // Reduce in block order: the estimate is independent of thread count.
    Accum mle, phb, hb;
    for (const BlockSums& bs : blocks) {
        mle.sum += bs.mle.sum;
        mle.sumsq += bs.mle.sumsq;
        phb.sum += bs.phb.sum;
        phb.sumsq += bs.phb.sumsq;
        hb.sum += bs.hb.sum;
        hb.sumsq += bs.hb.sumsq;
    }
    return McRiskTriple{finalize(mle, plan.replicates, EstimatorTag::MLE),
                        finalize(phb, plan.replicates, EstimatorTag::PHB),
                        finalize(hb, plan.replicates, EstimatorTag::HB)};
}

}  // namespace

RngStream make_block_stream(std::uint64_t seed, std::int64_t block_index) {
    return RngStream(splitmix64(seed ^ splitmix64(static_cast<std::uint64_t>(block_index))));
}

std::vector<double> sample_mu_cs(const CompoundSymmetry& cs, RngStream& stream) {
    const int d = cs.config.d;
    std::normal_distribution<double> gauss(0.0, 1.0);
    std::vector<double> z(static_cast<size_t>(d));
    double zbar = 0.0;
    for (double& v : z) {
        v = gauss(stream);
        zbar += v;
    }
    zbar /= d;
    const double within = std::sqrt(1.0 - cs.rho);
    const double between = std::sqrt(1.0 + (d - 1) * cs.rho);
    for (double& v : z) {
        v = within * (v - zbar) + between * zbar;
    }
    return z;
}

std::vector<double> sample_mu_general(const SpectrumSpec& spec,
                                      const std::vector<std::vector<double>>& eigvecs,
                                      RngStream& stream) {
    validate_spectrum(spec);
    const size_t d = spec.lambdas.size();
    if (eigvecs.size() != d) {
        throw LengthMismatch("sample_mu_general: need d eigenvector columns");
    }
    for (size_t j = 0; j < d; ++j) {
        if (eigvecs[j].size() != d) {
            throw LengthMismatch("sample_mu_general: eigenvector column length != d");
        }
        for (size_t k = j; k < d; ++k) {
            double dot = 0.0;
            for (size_t i = 0; i < d; ++i) dot += eigvecs[j][i] * eigvecs[k][i];
            const double target = (j == k) ? 1.0 : 0.0;
            if (std::abs(dot - target) > 1e-10) {
                throw OrthonormalityError("sample_mu_general: columns not orthonormal");
            }
        }
    }
    std::normal_distribution<double> gauss(0.0, 1.0);
    std::vector<double> mu(d, 0.0);
    for (size_t j = 0; j < d; ++j) {
        const double zj = std::sqrt(spec.lambdas[j]) * gauss(stream);
        for (size_t i = 0; i < d; ++i) mu[i] += eigvecs[j][i] * zj;
    }
    return mu;
}

double ncx2_inv_moment(int df, double lambda) {
    if (df < 3) {
        throw DomainError("ncx2_inv_moment: df >= 3 required for E[1/S]");
    }
    if (lambda < 0.0) {
        throw DomainError("ncx2_inv_moment: lambda must be >= 0");
    }
    const double half = 0.5 * lambda;
    if (half == 0.0) {
        return 1.0 / (df - 2);
    }
    // Expand the Poisson weights outward from the mode so the largest terms
    // come first; truncate when a term falls below 1e-16 of the running sum.
    const std::int64_t k0 = static_cast<std::int64_t>(half);
    const double log_w0 = k0 * std::log(half) - half - std::lgamma(k0 + 1.0);
    const double w0 = std::exp(log_w0);
    double sum = w0 / (df + 2.0 * k0 - 2.0);
    double w = w0;
    for (std::int64_t k = k0 + 1;; ++k) {
        w *= half / k;
        const double term = w / (df + 2.0 * k - 2.0);
        sum += term;
        if (term < 1e-16 * sum) break;
    }
    w = w0;
    for (std::int64_t k = k0 - 1; k >= 0; --k) {
        w *= (k + 1) / half;
        const double term = w / (df + 2.0 * k - 2.0);
        sum += term;
        if (term < 1e-16 * sum) break;
    }
    return sum;
}

double ncx2_inv_moment_integral(int df, double lambda,
                                const QuadratureSettings& settings) {
    if (df < 3) {
        throw DomainError("ncx2_inv_moment_integral: df >= 3 required");
    }
    const double p = 0.5 * (df - 2) - 1.0;
    IntegrandKernel kernel{
        [p, lambda](double u) {
            return 0.5 * std::exp(p * std::log(u) - 0.5 * lambda * (1.0 - u));
        },
        p};
    return integrate(kernel, settings).value;
}

McRiskTriple mc_integrated_risk(const CompoundSymmetry& cs, const SimPlan& plan,
                                int threads) {
    return run_plan(cs.config, plan, threads,
                    [&cs](RngStream& s) { return sample_mu_cs(cs, s); });
}

McRiskTriple mc_integrated_risk(const SpectrumSpec& spec,
                                const std::vector<std::vector<double>>& eigvecs,
                                const SimPlan& plan, int threads) {
    return run_plan(spec.config, plan, threads, [&spec, &eigvecs](RngStream& s) {
        return sample_mu_general(spec, eigvecs, s);
    });
}

}  // namespace hbrisk
