#pragma once

// Seeded random matrix families used by the generators and the verification suites.

#include <cstdint>
#include <random>

#include "oporder/linalg.hpp"

namespace oporder {

class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    double normal() { return normal_(engine_); }
    double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(engine_); }
    Index integer(Index lo, Index hi) {
        return std::uniform_int_distribution<Index>(lo, hi)(engine_);
    }
    bool coin(double p = 0.5) { return std::bernoulli_distribution(p)(engine_); }
    std::uint64_t next_seed() { return engine_(); }

    /// Complex Gaussian entries; real and imaginary parts are N(0, 1/2) times scale.
    Matrix gaussian(Index rows, Index cols, double scale = 1.0) {
        Matrix m(rows, cols);
        const double s = scale * std::sqrt(0.5);
        for (Index j = 0; j < cols; ++j)
            for (Index i = 0; i < rows; ++i) m(i, j) = Complex(s * normal(), s * normal());
        return m;
    }

    Matrix real_gaussian(Index rows, Index cols, double scale = 1.0) {
        Matrix m(rows, cols);
        for (Index j = 0; j < cols; ++j)
            for (Index i = 0; i < rows; ++i) m(i, j) = Complex(scale * normal(), 0.0);
        return m;
    }

    /// Haar-like unitary from the QR factorization of a Gaussian matrix.
    Matrix unitary(Index n) {
        if (n == 0) return Matrix(0, 0);
        Eigen::HouseholderQR<Matrix> qr(gaussian(n, n));
        Matrix q = qr.householderQ() * Matrix::Identity(n, n);
        const Matrix rmat = qr.matrixQR().triangularView<Eigen::Upper>();
        for (Index i = 0; i < n; ++i) {
            const double mag = std::abs(rmat(i, i));
            if (mag > 0.0) q.col(i) *= rmat(i, i) / mag;
        }
        return q;
    }

    /// Matrix of exact rank r whose nonzero singular values lie in scale*[lo, hi].
    Matrix with_rank(Index rows, Index cols, Index r, double scale = 1.0, double lo = 0.5, double hi = 2.0) {
        r = std::min({r, rows, cols});
        if (r <= 0) return Matrix::Zero(rows, cols);
        const Matrix u = unitary(rows).leftCols(r);
        const Matrix v = unitary(cols).leftCols(r);
        RealVector s(r);
        for (Index i = 0; i < r; ++i) s(i) = scale * uniform(lo, hi);
        return u * s.asDiagonal() * v.adjoint();
    }

    /// Hermitian PSD matrix of rank r with eigenvalues in scale*[lo, hi].
    Matrix psd(Index n, Index r, double scale = 1.0, double lo = 0.5, double hi = 2.0) {
        r = std::min(r, n);
        if (r <= 0) return Matrix::Zero(n, n);
        const Matrix u = unitary(n).leftCols(r);
        RealVector s(r);
        for (Index i = 0; i < r; ++i) s(i) = scale * uniform(lo, hi);
        return u * s.asDiagonal() * u.adjoint();
    }

    Matrix orth_projection(Index n, Index r) {
        r = std::min(r, n);
        if (r <= 0) return Matrix::Zero(n, n);
        const Matrix u = unitary(n).leftCols(r);
        return u * u.adjoint();
    }

    /// Oblique projection of rank r: S diag(I_r, 0) S^{-1} with S well conditioned.
    Matrix projection(Index n, Index r) {
        r = std::min(r, n);
        if (n == 0) return Matrix(0, 0);
        const Matrix s = well_conditioned(n);
        Matrix d = Matrix::Zero(n, n);
        d.topLeftCorner(r, r).setIdentity();
        return s * d * s.inverse();
    }

    /// Invertible matrix with singular values in [lo, hi].
    Matrix well_conditioned(Index n, double lo = 0.5, double hi = 2.0) { return with_rank(n, n, n, 1.0, lo, hi); }

private:
    std::mt19937_64 engine_;
    std::normal_distribution<double> normal_{0.0, 1.0};
};

}  // namespace oporder
