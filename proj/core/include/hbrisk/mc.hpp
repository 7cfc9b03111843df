#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "hbrisk/quad.hpp"
#include "hbrisk/risk.hpp"

namespace hbrisk {

enum class McMode { plain, rao_blackwell };

/// Replicate schedule. Blocks are seeded independently from (seed, block
/// index), and block partial sums are combined in block order, so results
/// do not depend on how many threads execute the blocks.
struct SimPlan {
    std::int64_t replicates = 200000;
    std::uint64_t seed = 1;
    std::int64_t block_size = 4096;
    McMode mode = McMode::rao_blackwell;
};

struct McRiskEstimate {
    double mean = 0.0;
    double std_error = 0.0;
    std::int64_t replicates = 0;
    EstimatorTag estimator_tag = EstimatorTag::MLE;
};

struct McRiskTriple {
    McRiskEstimate mle;
    McRiskEstimate phb;
    McRiskEstimate hb;
};

using RngStream = std::mt19937_64;

RngStream make_block_stream(std::uint64_t seed, std::int64_t block_index);

/// Draw mu ~ N_d(0, Sigma_d(rho)) as
/// mu = sqrt(1-rho)(z - zbar 1) + sqrt(1+(d-1)rho) zbar 1, z ~ N(0, I).
std::vector<double> sample_mu_cs(const CompoundSymmetry& cs, RngStream& stream);

/// Draw mu = P diag(sqrt(lambda)) z for an explicit eigenvector matrix
/// (column-major list of orthonormal columns). Small-d oracle use only.
std::vector<double> sample_mu_general(const SpectrumSpec& spec,
                                      const std::vector<std::vector<double>>& eigvecs,
                                      RngStream& stream);

/// E[1/S] for S ~ noncentral chi^2(df, lambda), via Poisson-mixture series:
/// sum_k Pois(k; lambda/2) / (df + 2k - 2). Requires df >= 3.
double ncx2_inv_moment(int df, double lambda);

/// Same moment through the integral identity
/// (1/2) int_0^1 u^{(df-2)/2-1} e^{-lambda(1-u)/2} du.
double ncx2_inv_moment_integral(int df, double lambda,
                                const QuadratureSettings& settings = {});

/// Empirical integrated risks of MLE/PHB/HB under mu ~ N(0, Sigma). In
/// rao_blackwell mode the data stage is integrated out analytically:
/// conditional risk = d/n - (c^2/n) E[1/S] with S the noncentral chi^2 of
/// the relevant quadratic form. The spectrum overload samples mu through
/// the given eigenvectors (Sigma = P Lambda P^T).
McRiskTriple mc_integrated_risk(const CompoundSymmetry& cs, const SimPlan& plan,
                                int threads = 1);
McRiskTriple mc_integrated_risk(const SpectrumSpec& spec,
                                const std::vector<std::vector<double>>& eigvecs,
                                const SimPlan& plan, int threads = 1);

}  // namespace hbrisk
