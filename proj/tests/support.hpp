#pragma once

// Shared fixtures and independent oracles for the test binaries.

#include <cmath>
#include <initializer_list>

#include <Eigen/QR>
#include <gtest/gtest.h>

#include "oporder/oporder.hpp"

namespace oporder::testing {

inline Matrix real_matrix(std::initializer_list<std::initializer_list<double>> rows) {
    const Index m = static_cast<Index>(rows.size());
    const Index n = static_cast<Index>(rows.begin()->size());
    Matrix out(m, n);
    Index i = 0;
    for (const auto& row : rows) {
        Index k = 0;
        for (double v : row) out(i, k++) = Complex(v, 0.0);
        ++i;
    }
    return out;
}

inline Matrix diag(std::initializer_list<double> d) {
    Matrix out = Matrix::Zero(static_cast<Index>(d.size()), static_cast<Index>(d.size()));
    Index i = 0;
    for (double v : d) out(i, i) = v, ++i;
    return out;
}

// The partial isometries F <= G (plus) from the worked example.
inline Matrix example_f() { return 0.5 * real_matrix({{std::sqrt(2.0), 0.0}, {std::sqrt(2.0), 0.0}}); }
inline Matrix example_g() { return real_matrix({{0.0, 1.0}, {1.0, 0.0}}); }
// A <= B (diamond) whose polar isometries are unrelated.
inline Matrix remark_a() { return real_matrix({{1.0, 0.0}, {1.0, 0.0}}); }
inline Matrix remark_b() { return real_matrix({{0.0, 2.0}, {2.0, 0.0}}); }

inline double frob(const Matrix& m) { return m.norm(); }

// Rank through column-pivoted QR, independent of the SVD used by the library:
// pivots above `threshold` times `scale` (default: the largest pivot) count.
inline Index qr_rank(const Matrix& m, double threshold = 1e-9, double scale = 0.0) {
    if (m.size() == 0) return 0;
    Eigen::ColPivHouseholderQR<Matrix> qr(m);
    const auto diag = qr.matrixQR().diagonal().cwiseAbs();
    const double ref = scale > 0.0 ? std::max(scale, diag(0)) : diag(0);
    Index r = 0;
    while (r < diag.size() && diag(r) > threshold * ref) ++r;
    return r;
}

// Four Penrose identities.
inline double penrose_residual(const Matrix& a, const Matrix& x) {
    return std::max({(a * x * a - a).norm(), (x * a * x - x).norm(), (a * x - (a * x).adjoint()).norm(),
                     (x * a - (x * a).adjoint()).norm()});
}

// Star order straight from A*A = A*B and AA* = BA*.
inline bool star_oracle(const Matrix& a, const Matrix& b, double eps = 1e-8) {
    return (a.adjoint() * a - a.adjoint() * b).norm() <= eps * (1 + b.norm() * b.norm()) &&
           (a * a.adjoint() - b * a.adjoint()).norm() <= eps * (1 + b.norm() * b.norm());
}

// Minus order through rank additivity rank(B) = rank(A) + rank(B - A), with QR ranks
// at the scale of B.
inline bool minus_oracle(const Matrix& a, const Matrix& b, double threshold = 1e-8) {
    const double scale = b.norm();
    return qr_rank(b, threshold, scale) == qr_rank(a, threshold, scale) + qr_rank(b - a, threshold, scale);
}

// Range inclusion R(X) ⊆ R(Y) as rank([Y X]) == rank(Y).
inline bool range_oracle(const Matrix& x, const Matrix& y, double threshold = 1e-8) {
    Matrix yx(y.rows(), y.cols() + x.cols());
    yx << y, x;
    const double scale = yx.norm();
    return qr_rank(yx, threshold, scale) == qr_rank(y, threshold, scale);
}

// Diamond order from its definition: range inclusions and AA*A = AB*A.
inline bool diamond_oracle(const Matrix& a, const Matrix& b, double eps = 1e-8) {
    const double scale = 1 + std::pow(b.norm(), 3);
    return range_oracle(a, b) && range_oracle(a.adjoint(), b.adjoint()) &&
           (a * a.adjoint() * a - a * b.adjoint() * a).norm() <= eps * scale;
}

inline Matrix random_rank(std::uint64_t seed, Index m, Index n, Index r) {
    Rng rng(seed);
    return rng.with_rank(m, n, r);
}

}  // namespace oporder::testing
