// Test-only dense helpers: a Jacobi eigensolver and an LU determinant.
// These back the small-d oracles and stay independent of the library's
// spectrum-based evaluation path.
#pragma once

#include <cmath>
#include <cstddef>
#include <vector>

namespace testlin {

using Matrix = std::vector<std::vector<double>>;

inline Matrix identity(std::size_t d) {
    Matrix m(d, std::vector<double>(d, 0.0));
    for (std::size_t i = 0; i < d; ++i) m[i][i] = 1.0;
    return m;
}

// Cyclic Jacobi sweeps; returns eigenvalues, fills `vecs` with orthonormal
// eigenvector columns (vecs[j] is the eigenvector for eigenvalue j).
inline std::vector<double> jacobi_eigen(Matrix a, Matrix& vecs) {
    const std::size_t d = a.size();
    Matrix v = identity(d);
    for (int sweep = 0; sweep < 100; ++sweep) {
        double off = 0.0;
        for (std::size_t p = 0; p < d; ++p)
            for (std::size_t q = p + 1; q < d; ++q) off += a[p][q] * a[p][q];
        if (off < 1e-30) break;
        for (std::size_t p = 0; p < d; ++p) {
            for (std::size_t q = p + 1; q < d; ++q) {
                if (std::abs(a[p][q]) < 1e-300) continue;
                const double theta = (a[q][q] - a[p][p]) / (2.0 * a[p][q]);
                const double t = (theta >= 0 ? 1.0 : -1.0) /
                                 (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;
                for (std::size_t k = 0; k < d; ++k) {
                    const double akp = a[k][p], akq = a[k][q];
                    a[k][p] = c * akp - s * akq;
                    a[k][q] = s * akp + c * akq;
                }
                for (std::size_t k = 0; k < d; ++k) {
                    const double apk = a[p][k], aqk = a[q][k];
                    a[p][k] = c * apk - s * aqk;
                    a[q][k] = s * apk + c * aqk;
                }
                for (std::size_t k = 0; k < d; ++k) {
                    const double vkp = v[k][p], vkq = v[k][q];
                    v[k][p] = c * vkp - s * vkq;
                    v[k][q] = s * vkp + c * vkq;
                }
            }
        }
    }
    std::vector<double> eig(d);
    vecs.assign(d, std::vector<double>(d, 0.0));
    for (std::size_t j = 0; j < d; ++j) {
        eig[j] = a[j][j];
        for (std::size_t i = 0; i < d; ++i) vecs[j][i] = v[i][j];
    }
    return eig;
}

inline double determinant(Matrix a) {
    const std::size_t d = a.size();
    double det = 1.0;
    for (std::size_t col = 0; col < d; ++col) {
        std::size_t pivot = col;
        for (std::size_t r = col + 1; r < d; ++r)
            if (std::abs(a[r][col]) > std::abs(a[pivot][col])) pivot = r;
        if (a[pivot][col] == 0.0) return 0.0;
        if (pivot != col) {
            std::swap(a[pivot], a[col]);
            det = -det;
        }
        det *= a[col][col];
        for (std::size_t r = col + 1; r < d; ++r) {
            const double m = a[r][col] / a[col][col];
            for (std::size_t c = col; c < d; ++c) a[r][c] -= m * a[col][c];
        }
    }
    return det;
}

inline Matrix compound_symmetric(std::size_t d, double rho) {
    Matrix m(d, std::vector<double>(d, rho));
    for (std::size_t i = 0; i < d; ++i) m[i][i] = 1.0;
    return m;
}

}  // namespace testlin
