#include <doctest.h>

#include <cmath>

#include "hbrisk/bounds.hpp"
#include "hbrisk/mc.hpp"
#include "test_linalg.hpp"

using namespace hbrisk;

TEST_CASE("ncx2_inv_moment: central case and closed-form check at df=4") {
    for (int d : {3, 5, 12}) {
        CHECK(ncx2_inv_moment(d, 0.0) == doctest::Approx(1.0 / (d - 2)).epsilon(1e-14));
    }
    // df=4, lambda=2: (1 - e^{-1})/2
    CHECK(ncx2_inv_moment(4, 2.0) ==
          doctest::Approx(0.5 * (1.0 - std::exp(-1.0))).epsilon(1e-12));
    CHECK_THROWS_AS(ncx2_inv_moment(2, 1.0), DomainError);
}

TEST_CASE("ncx2_inv_moment: integral and series agree to 1e-10") {
    for (int df = 3; df <= 12; ++df) {
        double prev = 1e9;
        for (double lambda : {0.0, 0.5, 2.0, 10.0, 50.0}) {
            const double series = ncx2_inv_moment(df, lambda);
            const double integral = ncx2_inv_moment_integral(df, lambda);
            CHECK(std::abs(series - integral) < 1e-10);
            CHECK(series < 1.0 / (df - 2) + 1e-14);
            CHECK(series < prev);  // decreasing in lambda
            prev = series;
        }
    }
}

TEST_CASE("sample_mu_cs: rho=0 recombines to the raw normals") {
    auto s1 = make_block_stream(99, 0);
    auto s2 = make_block_stream(99, 0);
    const auto mu = sample_mu_cs(make_compound_symmetry(6, 1, 0.0), s1);
    std::normal_distribution<double> gauss(0.0, 1.0);
    for (int j = 0; j < 6; ++j) {
        CHECK(mu[static_cast<size_t>(j)] == doctest::Approx(gauss(s2)).epsilon(1e-12));
    }
}

TEST_CASE("sample_mu_cs: empirical moments match Sigma_d(rho)") {
    const int d = 5;
    const int R = 200000;
    const auto cs = make_compound_symmetry(d, 1, 0.5);
    auto stream = make_block_stream(12345, 0);
    std::vector<std::vector<double>> cov(d, std::vector<double>(d, 0.0));
    for (int r = 0; r < R; ++r) {
        const auto mu = sample_mu_cs(cs, stream);
        for (int i = 0; i < d; ++i)
            for (int j = 0; j < d; ++j) cov[i][j] += mu[i] * mu[j];
    }
    for (int i = 0; i < d; ++i) {
        for (int j = 0; j < d; ++j) {
            const double want = i == j ? 1.0 : 0.5;
            CHECK(cov[i][j] / R == doctest::Approx(want).epsilon(0).scale(1).epsilon(0.02));
        }
    }
}

TEST_CASE("sample_mu_cs: negative rho shrinks the grand-sum variance") {
    const int d = 5;
    const int R = 200000;
    const auto cs = make_compound_symmetry(d, 1, -0.2);
    auto stream = make_block_stream(777, 3);
    double ss = 0.0;
    for (int r = 0; r < R; ++r) {
        const auto mu = sample_mu_cs(cs, stream);
        double sum = 0.0;
        for (double m : mu) sum += m;
        ss += sum * sum / d;
    }
    // Var(sum mu_j)/d = 1 + (d-1) rho = 0.2; SE of the mean of chi^2-like
    // terms ~ 0.2 sqrt(2/R)
    const double se = 0.2 * std::sqrt(2.0 / R);
    CHECK(std::abs(ss / R - 0.2) < 3.0 * se);
}

TEST_CASE("sample_mu_general matches a dense covariance (d=4)") {
    // random SPD Sigma via its Jacobi eigendecomposition
    testlin::Matrix a{{4.0, 1.0, 0.5, 0.2},
                      {1.0, 3.0, 0.7, 0.1},
                      {0.5, 0.7, 2.5, 0.4},
                      {0.2, 0.1, 0.4, 2.0}};
    testlin::Matrix vecs;
    const auto eig = testlin::jacobi_eigen(a, vecs);

    SpectrumSpec spec;
    spec.config = {4, 1};
    spec.lambdas = eig;
    spec.z.assign(4, 0.0);
    for (size_t j = 0; j < 4; ++j)
        for (size_t i = 0; i < 4; ++i) spec.z[j] += vecs[j][i];

    auto stream = make_block_stream(5150, 1);
    const int R = 200000;
    testlin::Matrix cov(4, std::vector<double>(4, 0.0));
    for (int r = 0; r < R; ++r) {
        const auto mu = sample_mu_general(spec, vecs, stream);
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j) cov[i][j] += mu[i] * mu[j];
    }
    for (int i = 0; i < 4; ++i) {
        for (int j = 0; j < 4; ++j) {
            const double want = a[static_cast<size_t>(i)][static_cast<size_t>(j)];
            // SE of a product moment is at most sqrt(2) sigma_i sigma_j / sqrt(R)
            const double se = 1.5 * std::sqrt(a[static_cast<size_t>(i)][static_cast<size_t>(i)] *
                                              a[static_cast<size_t>(j)][static_cast<size_t>(j)] / R);
            CHECK(std::abs(cov[i][j] / R - want) < 3.0 * se);
        }
    }

    testlin::Matrix not_ortho = vecs;
    not_ortho[0][0] += 0.1;
    CHECK_THROWS_AS(sample_mu_general(spec, not_ortho, stream), OrthonormalityError);
}

TEST_CASE("mc_integrated_risk: MLE exact, HB/PHB within 3 SE of quadrature") {
    const auto cs = make_compound_symmetry(10, 5, 0.5);
    SimPlan plan;
    plan.replicates = 200000;
    plan.seed = 2024;
    const auto mc = mc_integrated_risk(cs, plan, 4);

    CHECK(mc.mle.mean == 10.0 / 5.0);
    CHECK(mc.mle.std_error == 0.0);

    const double hb_quad = risk_hb_cs(cs).value;
    CHECK(std::abs(mc.hb.mean - hb_quad) < 3.0 * mc.hb.std_error);
    const double phb_quad = risk_phb_cs(cs).value;
    CHECK(std::abs(mc.phb.mean - phb_quad) < 3.0 * mc.phb.std_error);
}

TEST_CASE("mc risk difference changes sign with H(rho)") {
    SimPlan plan;
    plan.replicates = 200000;
    plan.seed = 31;
    const auto cs_lo = make_compound_symmetry(10, 5, 0.0);
    const auto cs_hi = make_compound_symmetry(10, 5, 0.7);
    const auto mc_lo = mc_integrated_risk(cs_lo, plan, 2);
    const auto mc_hi = mc_integrated_risk(cs_hi, plan, 2);
    CHECK(risk_diff_H(make_compound_symmetry(10, 5, 0.7)) > 0.0);
    CHECK(mc_hi.phb.mean - mc_hi.hb.mean > 0.0);
    CHECK(risk_diff_H(make_compound_symmetry(10, 5, 1e-9)) < 0.0);
    CHECK(mc_lo.phb.mean - mc_lo.hb.mean < 0.0);
}

TEST_CASE("determinism: identical plans agree across thread counts") {
    const auto cs = make_compound_symmetry(8, 2, 0.4);
    SimPlan plan;
    plan.replicates = 50000;
    plan.seed = 555;
    plan.block_size = 1024;
    const auto a = mc_integrated_risk(cs, plan, 1);
    const auto b = mc_integrated_risk(cs, plan, 4);
    const auto c = mc_integrated_risk(cs, plan, 16);
    CHECK(a.hb.mean == b.hb.mean);
    CHECK(b.hb.mean == c.hb.mean);
    CHECK(a.phb.std_error == c.phb.std_error);
    CHECK(a.mle.mean == c.mle.mean);
}

TEST_CASE("plain and rao_blackwell agree; RB has smaller SE") {
    const auto cs = make_compound_symmetry(10, 2, 0.3);
    SimPlan rb;
    rb.replicates = 100000;
    rb.seed = 8;
    SimPlan plain = rb;
    plain.mode = McMode::plain;
    const auto est_rb = mc_integrated_risk(cs, rb, 4);
    const auto est_pl = mc_integrated_risk(cs, plain, 4);

    const double comb_hb =
        std::sqrt(est_rb.hb.std_error * est_rb.hb.std_error +
                  est_pl.hb.std_error * est_pl.hb.std_error);
    CHECK(std::abs(est_rb.hb.mean - est_pl.hb.mean) < 3.0 * comb_hb);
    CHECK(est_rb.hb.std_error < est_pl.hb.std_error);
    CHECK(est_rb.phb.std_error < est_pl.phb.std_error);
}

TEST_CASE("conditional-risk identity at fixed mu (HB and PHB)") {
    const int d = 8, n = 2;
    const ModelConfig cfg{d, n};
    std::vector<double> mu{0.4, -0.3, 1.1, 0.0, -0.8, 0.2, 0.9, -0.5};
    double mu_bar = 0.0;
    for (double m : mu) mu_bar += m;
    mu_bar /= d;
    double lam_hb = 0.0, lam_phb = 0.0;
    for (double m : mu) {
        lam_hb += (m - mu_bar) * (m - mu_bar);
        lam_phb += m * m;
    }
    lam_hb *= n;
    lam_phb *= n;
    const double want_hb =
        static_cast<double>(d) / n - (d - 3.0) * (d - 3.0) / n * ncx2_inv_moment(d - 1, lam_hb);
    const double want_phb =
        static_cast<double>(d) / n - (d - 2.0) * (d - 2.0) / n * ncx2_inv_moment(d, lam_phb);

    auto stream = make_block_stream(4242, 7);
    std::normal_distribution<double> gauss(0.0, 1.0);
    const int R = 200000;
    double sum_hb = 0.0, sq_hb = 0.0, sum_phb = 0.0, sq_phb = 0.0;
    std::vector<double> ybar(static_cast<size_t>(d));
    const double sd = 1.0 / std::sqrt(static_cast<double>(n));
    for (int r = 0; r < R; ++r) {
        for (int j = 0; j < d; ++j) ybar[static_cast<size_t>(j)] = mu[static_cast<size_t>(j)] + sd * gauss(stream);
        GroupMeans gm{ybar, cfg};
        const double lhb = squared_loss(estimate_hb(gm), mu);
        const double lphb = squared_loss(estimate_phb(gm), mu);
        sum_hb += lhb;
        sq_hb += lhb * lhb;
        sum_phb += lphb;
        sq_phb += lphb * lphb;
    }
    const double mean_hb = sum_hb / R;
    const double se_hb = std::sqrt((sq_hb / R - mean_hb * mean_hb) / R);
    CHECK(std::abs(mean_hb - want_hb) < 3.0 * se_hb);
    const double mean_phb = sum_phb / R;
    const double se_phb = std::sqrt((sq_phb / R - mean_phb * mean_phb) / R);
    CHECK(std::abs(mean_phb - want_phb) < 3.0 * se_phb);
}
