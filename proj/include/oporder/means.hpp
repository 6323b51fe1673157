#pragma once

// Geometric mean of positive semidefinite matrices and the algebraic Riccati
// equation X* B^{-1} X - T* X - X T = C.

#include <Eigen/Eigenvalues>

#include "oporder/linalg.hpp"

namespace oporder {

/// Hermitian positive semidefinite matrix, validated on construction.
class PsdMatrix {
public:
    PsdMatrix(const Matrix& m, const Tolerance& tol) {
        require_finite(m, "PSD matrix");
        if (m.rows() != m.cols()) throw ShapeMismatch("PSD matrix must be square, got " + shape_string(m));
        if (!is_hermitian(m, tol)) throw NotHermitian("matrix is not Hermitian");
        m_ = hermitian_part(m);
        if (m_.size() > 0 && min_eigenvalue(m_) < -tol.bound(m_.norm(), 0.0)) {
            throw NotPsd("matrix has a negative eigenvalue");
        }
    }

    const Matrix& matrix() const { return m_; }
    Index size() const { return m_.rows(); }

private:
    Matrix m_;
};

struct MeanResult {
    Matrix value;
    // true when the singular-argument fallback B + eps I was used
    bool regularized = false;
};

struct RiccatiResult {
    Matrix x;
    double residual = 0.0;
};

namespace detail {

struct HermitianPowers {
    Matrix sqrt;
    Matrix inv_sqrt;
};

inline HermitianPowers hermitian_powers(const Matrix& b) {
    Eigen::SelfAdjointEigenSolver<Matrix> es(b);
    const RealVector lam = es.eigenvalues().cwiseMax(0.0);
    const Matrix& u = es.eigenvectors();
    return {u * lam.cwiseSqrt().asDiagonal() * u.adjoint(), u * lam.cwiseSqrt().cwiseInverse().asDiagonal() * u.adjoint()};
}

inline bool invertible(const Matrix& m, const Tolerance& tol) { return rank(m, tol) == m.rows(); }

// B^{1/2} (B^{-1/2} C B^{-1/2})^{1/2} B^{1/2} for invertible B.
inline Matrix mean_formula(const Matrix& b, const Matrix& c, const Tolerance& tol) {
    const HermitianPowers p = hermitian_powers(b);
    const Matrix inner = hermitian_part(p.inv_sqrt * c * p.inv_sqrt);
    Tolerance loose = tol;
    loose.eq_abs = std::max(tol.eq_abs, 1e-12 * (1.0 + inner.norm()));
    return hermitian_part(p.sqrt * psd_sqrt(inner, loose) * p.sqrt);
}

}  // namespace detail

/// B # C. Uses the closed formula when either argument is invertible (the mean is
/// symmetric); otherwise regularizes B with eps = 1e-8 trace(B)/n.
inline MeanResult geometric_mean(const PsdMatrix& b, const PsdMatrix& c, const Tolerance& tol) {
    if (b.size() != c.size()) throw ShapeMismatch("geometric_mean: arguments have different sizes");
    const Index n = b.size();
    MeanResult out;
    if (n == 0) {
        out.value = Matrix(0, 0);
        return out;
    }
    if (detail::invertible(b.matrix(), tol)) {
        out.value = detail::mean_formula(b.matrix(), c.matrix(), tol);
        return out;
    }
    if (detail::invertible(c.matrix(), tol)) {
        out.value = detail::mean_formula(c.matrix(), b.matrix(), tol);
        return out;
    }
    out.regularized = true;
    const double trace = b.matrix().trace().real();
    if (!(trace > 0.0)) {
        out.value = Matrix::Zero(n, n);
        return out;
    }
    const double eps = 1e-8 * trace / static_cast<double>(n);
    const Matrix reg = b.matrix() + eps * Matrix::Identity(n, n);
    out.value = detail::mean_formula(reg, c.matrix(), tol);
    return out;
}

/// Selfadjoint solution X = (T* B T + C) # B + B T of X* B^{-1} X - T* X - X T = C,
/// for invertible B with B T selfadjoint.
inline RiccatiResult riccati_solve(const PsdMatrix& b, const Matrix& t, const PsdMatrix& c, const Tolerance& tol) {
    const Index n = b.size();
    if (c.size() != n || t.rows() != n || t.cols() != n) throw ShapeMismatch("riccati_solve: B, T, C must share one size");
    require_finite(t, "T");
    if (!detail::invertible(b.matrix(), tol)) throw BSingular("riccati_solve: B is singular");
    const Matrix bt = b.matrix() * t;
    if (!is_hermitian(bt, tol)) throw BTNotHermitian("riccati_solve: B T is not selfadjoint");

    const Matrix lhs = hermitian_part(t.adjoint() * bt + c.matrix());
    const PsdMatrix lhs_psd(lhs, tol);
    RiccatiResult out;
    out.x = hermitian_part(geometric_mean(lhs_psd, b, tol).value + bt);
    const Matrix binv = b.matrix().inverse();
    const Matrix res = out.x.adjoint() * binv * out.x - t.adjoint() * out.x - out.x * t - c.matrix();
    out.residual = res.norm();
    return out;
}

}  // namespace oporder
