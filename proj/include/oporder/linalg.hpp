#pragma once

// Dense complex-matrix primitives shared by every order predicate.
//
// All subspaces are carried as orthonormal column bases obtained from one
// SVD per operator; rank is decided by a single relative threshold.

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <complex>
#include <string>

#include "oporder/errors.hpp"

namespace oporder {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using RealVector = Eigen::VectorXd;
using Index = Eigen::Index;

/// Numeric comparison policy threaded through every predicate.
struct Tolerance {
    double rank_rel = 1e-10;
    double eq_abs = 1e-9;
    double eq_rel = 1e-9;

    void validate() const {
        if (!(rank_rel >= 0.0) || !(eq_abs >= 0.0) || !(eq_rel >= 0.0)) {
            throw InvalidTolerance("tolerance fields must be nonnegative");
        }
    }

    /// Admissible Frobenius distance between two matrices of the given norms.
    double bound(double norm_x, double norm_y) const { return eq_abs + eq_rel * (norm_x + norm_y); }

    bool equal(const Matrix& x, const Matrix& y) const {
        if (x.rows() != y.rows() || x.cols() != y.cols()) return false;
        return (x - y).norm() <= bound(x.norm(), y.norm());
    }

    bool is_zero(const Matrix& x) const { return x.norm() <= bound(x.norm(), 0.0); }
};

inline void require_finite(const Matrix& m, const char* what = "matrix") {
    if (!m.allFinite()) throw NonFinite(std::string(what) + " has non-finite entries");
}

inline void require_same_shape(const Matrix& a, const Matrix& b, const char* what) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) {
        throw ShapeMismatch(std::string(what) + ": operands have shapes " + std::to_string(a.rows()) + "x" +
                            std::to_string(a.cols()) + " and " + std::to_string(b.rows()) + "x" +
                            std::to_string(b.cols()));
    }
}

inline std::string shape_string(const Matrix& m) {
    return std::to_string(m.rows()) + "x" + std::to_string(m.cols());
}

/// Full singular value decomposition M = U diag(s) V* with the numerical rank.
///
/// Columns of U and V are phase-normalized (the largest-modulus entry of each
/// left singular vector is real positive, and the paired right vector receives
/// the same phase) so that decompositions are reproducible.
struct Svd {
    Matrix u;
    Matrix v;
    RealVector s;
    Index rank = 0;

    auto range() const { return u.leftCols(rank); }
    auto cokernel() const { return u.rightCols(u.cols() - rank); }
    auto corange() const { return v.leftCols(rank); }
    auto kernel() const { return v.rightCols(v.cols() - rank); }
};

namespace detail {

inline Complex unit_phase_of_max(const Eigen::Ref<const Eigen::VectorXcd>& col) {
    Index best = 0;
    double best_abs = -1.0;
    for (Index i = 0; i < col.size(); ++i) {
        // strict comparison with slack keeps the choice stable under roundoff
        if (std::abs(col(i)) > best_abs * (1.0 + 1e-12)) {
            best_abs = std::abs(col(i));
            best = i;
        }
    }
    if (best_abs <= 0.0) return Complex(1.0, 0.0);
    return std::conj(col(best)) / best_abs;
}

inline Index rank_from_singular_values(const RealVector& s, Index rows, Index cols, double rank_rel) {
    if (s.size() == 0 || !(s(0) > 0.0)) return 0;
    const double threshold = rank_rel * s(0) * static_cast<double>(std::max(rows, cols));
    Index r = 0;
    while (r < s.size() && s(r) > threshold) ++r;
    return r;
}

}  // namespace detail

inline Svd svd(const Matrix& m, const Tolerance& tol) {
    require_finite(m);
    Svd out;
    if (m.rows() == 0 || m.cols() == 0) {
        out.u = Matrix::Identity(m.rows(), m.rows());
        out.v = Matrix::Identity(m.cols(), m.cols());
        out.s = RealVector(0);
        return out;
    }
    Eigen::JacobiSVD<Matrix> dec(m, Eigen::ComputeFullU | Eigen::ComputeFullV);
    out.u = dec.matrixU();
    out.v = dec.matrixV();
    out.s = dec.singularValues();
    out.rank = detail::rank_from_singular_values(out.s, m.rows(), m.cols(), tol.rank_rel);
    for (Index i = 0; i < out.u.cols(); ++i) {
        const Complex phase = detail::unit_phase_of_max(out.u.col(i));
        out.u.col(i) *= phase;
        if (i < out.rank) out.v.col(i) *= phase;
    }
    for (Index i = out.rank; i < out.v.cols(); ++i) {
        out.v.col(i) *= detail::unit_phase_of_max(out.v.col(i));
    }
    return out;
}

inline Index rank(const Matrix& m, const Tolerance& tol) { return svd(m, tol).rank; }

/// Rank with the threshold taken relative to max(scale, sigma_max(m)); used for
/// differences such as B - A, whose own largest singular value may be rounding noise.
inline Index rank_at_scale(const Matrix& m, double scale, const Tolerance& tol) {
    if (m.size() == 0) return 0;
    const RealVector s = Eigen::JacobiSVD<Matrix>(m).singularValues();
    const double top = std::max(scale, s(0));
    const double threshold = tol.rank_rel * top * static_cast<double>(std::max(m.rows(), m.cols()));
    Index r = 0;
    while (r < s.size() && s(r) > threshold) ++r;
    return r;
}

inline double spectral_norm(const Matrix& m) {
    if (m.size() == 0) return 0.0;
    return Eigen::JacobiSVD<Matrix>(m).singularValues()(0);
}

/// Moore-Penrose inverse; the rank is decided by tol.rank_rel.
inline Matrix pinv(const Svd& d) {
    const Index r = d.rank;
    Matrix out = Matrix::Zero(d.v.rows(), d.u.rows());
    if (r == 0) return out;
    const RealVector inv = d.s.head(r).cwiseInverse();
    out.noalias() = d.v.leftCols(r) * inv.asDiagonal() * d.u.leftCols(r).adjoint();
    return out;
}

inline Matrix pinv(const Matrix& m, const Tolerance& tol) { return pinv(svd(m, tol)); }

/// Orthonormal basis of R(M).
inline Matrix range_basis(const Matrix& m, const Tolerance& tol) { return svd(m, tol).range(); }

/// Orthonormal basis of N(M).
inline Matrix null_space_basis(const Matrix& m, const Tolerance& tol) { return svd(m, tol).kernel(); }

/// Orthogonal projection onto R(M).
inline Matrix proj_range(const Matrix& m, const Tolerance& tol) {
    const Svd d = svd(m, tol);
    const auto basis = d.range();
    return basis * basis.adjoint();
}

/// Residual ||P_B A - A||_F of the inclusion R(A) ⊆ R(B).
inline double inclusion_residual(const Matrix& a, const Matrix& b, const Tolerance& tol) {
    if (a.rows() != b.rows()) {
        throw ShapeMismatch("range inclusion: row counts " + std::to_string(a.rows()) + " and " +
                            std::to_string(b.rows()) + " differ");
    }
    const Svd d = svd(b, tol);
    const auto basis = d.range();
    const Matrix projected = basis * (basis.adjoint() * a);
    return (projected - a).norm();
}

/// R(A) ⊆ R(B), tested as P_B A == A.
inline bool range_included(const Matrix& a, const Matrix& b, const Tolerance& tol) {
    const double res = inclusion_residual(a, b, tol);
    return res <= tol.bound(a.norm(), a.norm());
}

/// R(A) ⊆ R(B) with the rank of B decided at `scale` (see rank_at_scale); for B
/// computed as a difference, so that rounding noise does not count as range.
inline bool range_included_at_scale(const Matrix& a, const Matrix& b, double scale, const Tolerance& tol) {
    if (a.rows() != b.rows()) throw ShapeMismatch("range inclusion: row counts differ");
    if (a.size() == 0) return true;
    const Svd d = svd(b, tol);
    const Index r = rank_at_scale(b, scale, tol);
    const auto basis = d.u.leftCols(r);
    const double res = (basis * (basis.adjoint() * a) - a).norm();
    return res <= tol.bound(a.norm(), a.norm());
}

inline bool is_hermitian(const Matrix& m, const Tolerance& tol) {
    return m.rows() == m.cols() && tol.equal(m, m.adjoint());
}

inline Matrix hermitian_part(const Matrix& m) { return 0.5 * (m + m.adjoint()); }

/// Smallest eigenvalue of the Hermitian part of a square matrix.
inline double min_eigenvalue(const Matrix& m) {
    if (m.rows() == 0) return 0.0;
    Eigen::SelfAdjointEigenSolver<Matrix> es(hermitian_part(m), Eigen::EigenvaluesOnly);
    return es.eigenvalues().minCoeff();
}

/// PSD square root with eigenvalues in [-tol, 0) clamped to zero.
inline Matrix psd_sqrt(const Matrix& m, const Tolerance& tol) {
    if (m.rows() != m.cols()) throw NotPsd("psd_sqrt: matrix is " + shape_string(m) + ", not square");
    if (!is_hermitian(m, tol)) throw NotPsd("psd_sqrt: matrix is not Hermitian");
    if (m.rows() == 0) return m;
    Eigen::SelfAdjointEigenSolver<Matrix> es(hermitian_part(m));
    const RealVector& ev = es.eigenvalues();
    const double floor = -(tol.eq_abs + tol.eq_rel * m.norm());
    if (ev.minCoeff() < floor) {
        throw NotPsd("psd_sqrt: eigenvalue " + std::to_string(ev.minCoeff()) + " below " + std::to_string(floor));
    }
    const RealVector root = ev.cwiseMax(0.0).cwiseSqrt();
    return es.eigenvectors() * root.asDiagonal() * es.eigenvectors().adjoint();
}

/// Polar decomposition T = |T*| V_T with V_T a partial isometry, N(V_T) = N(T).
struct PolarParts {
    Matrix modulus_star;
    Matrix isometry;
};

inline PolarParts polar(const Matrix& t, const Tolerance& tol) {
    const Svd d = svd(t, tol);
    const Index r = d.rank;
    PolarParts out;
    const auto ur = d.u.leftCols(r);
    out.modulus_star = ur * d.s.head(r).asDiagonal() * ur.adjoint();
    out.isometry = ur * d.v.leftCols(r).adjoint();
    return out;
}

/// The four canonical subspaces of an operator A : H -> K, as orthonormal bases.
///
/// H = R(A*) ⊕ N(A) and K = R(A) ⊕ N(A*); A acts as diag(a, 0) between them.
struct Frame {
    Matrix row_space;        // R(A*), n x r
    Matrix null_space;       // N(A),  n x (n-r)
    Matrix col_space;        // R(A),  m x r
    Matrix left_null_space;  // N(A*), m x (m-r)

    Index rank() const { return row_space.cols(); }
    Index rows() const { return col_space.rows(); }
    Index cols() const { return row_space.rows(); }

    /// Unitary [R(A) N(A*)] of K.
    Matrix left() const {
        Matrix out(rows(), rows());
        out << col_space, left_null_space;
        return out;
    }

    /// Unitary [R(A*) N(A)] of H.
    Matrix right() const {
        Matrix out(cols(), cols());
        out << row_space, null_space;
        return out;
    }

    /// Ambient operator H -> K whose canonical blocks are the given ones.
    Matrix assemble(const Matrix& m11, const Matrix& m12, const Matrix& m21, const Matrix& m22) const {
        return col_space * m11 * row_space.adjoint() + col_space * m12 * null_space.adjoint() +
               left_null_space * m21 * row_space.adjoint() + left_null_space * m22 * null_space.adjoint();
    }

    /// Ambient operator K -> H from blocks mapping (R(A), N(A*)) to (R(A*), N(A)).
    Matrix assemble_reverse(const Matrix& m11, const Matrix& m12, const Matrix& m21, const Matrix& m22) const {
        return row_space * m11 * col_space.adjoint() + row_space * m12 * left_null_space.adjoint() +
               null_space * m21 * col_space.adjoint() + null_space * m22 * left_null_space.adjoint();
    }
};

inline Frame frame_of(const Svd& d) {
    Frame f;
    f.col_space = d.range();
    f.left_null_space = d.cokernel();
    f.row_space = d.corange();
    f.null_space = d.kernel();
    return f;
}

inline Frame frame_of(const Matrix& a, const Tolerance& tol) { return frame_of(svd(a, tol)); }

/// Frame of a Hermitian PSD operator in which H and K carry the same basis.
inline Frame hermitian_frame_of(const Matrix& a, const Tolerance& tol) {
    if (a.rows() != a.cols()) throw ShapeMismatch("hermitian frame: matrix is " + shape_string(a));
    const Index n = a.rows();
    Frame f;
    if (n == 0) {
        f.col_space = f.row_space = f.null_space = f.left_null_space = Matrix(0, 0);
        return f;
    }
    Eigen::SelfAdjointEigenSolver<Matrix> es(hermitian_part(a));
    // descending order of eigenvalues
    RealVector ev = es.eigenvalues().reverse();
    Matrix vecs = es.eigenvectors().rowwise().reverse();
    RealVector mags = ev.cwiseAbs();
    const double top = mags.maxCoeff();
    const double threshold = tol.rank_rel * top * static_cast<double>(n);
    Index r = 0;
    while (r < n && ev(r) > threshold) ++r;
    for (Index i = 0; i < n; ++i) vecs.col(i) *= detail::unit_phase_of_max(vecs.col(i));
    f.col_space = f.row_space = vecs.leftCols(r);
    f.null_space = f.left_null_space = vecs.rightCols(n - r);
    return f;
}

/// A = [R(A) N(A*)] diag(a,0) [R(A*) N(A)]*, B = [R(A) N(A*)] [[b11,b12],[b21,b22]] [R(A*) N(A)]*.
struct BlockDecomposition {
    Frame frame;
    Matrix a;
    Matrix b11, b12, b21, b22;

    Matrix reassemble_a() const {
        const Index r = frame.rank();
        return frame.assemble(a, Matrix::Zero(r, frame.null_space.cols()),
                              Matrix::Zero(frame.left_null_space.cols(), r),
                              Matrix::Zero(frame.left_null_space.cols(), frame.null_space.cols()));
    }
    Matrix reassemble_b() const { return frame.assemble(b11, b12, b21, b22); }
};

inline BlockDecomposition block_decompose(const Matrix& a, const Matrix& b, const Frame& frame) {
    require_same_shape(a, b, "block_decompose");
    BlockDecomposition out;
    out.frame = frame;
    out.a = frame.col_space.adjoint() * a * frame.row_space;
    out.b11 = frame.col_space.adjoint() * b * frame.row_space;
    out.b12 = frame.col_space.adjoint() * b * frame.null_space;
    out.b21 = frame.left_null_space.adjoint() * b * frame.row_space;
    out.b22 = frame.left_null_space.adjoint() * b * frame.null_space;
    return out;
}

inline BlockDecomposition block_decompose(const Matrix& a, const Matrix& b, const Tolerance& tol) {
    require_same_shape(a, b, "block_decompose");
    return block_decompose(a, b, frame_of(a, tol));
}

struct MatrixClass {
    bool is_projection = false;
    bool is_orth_projection = false;
    bool is_partial_isometry = false;
    bool is_psd = false;
};

inline bool is_projection(const Matrix& m, const Tolerance& tol) {
    return m.rows() == m.cols() && tol.equal(m * m, m);
}

inline bool is_orth_projection(const Matrix& m, const Tolerance& tol) {
    return is_projection(m, tol) && is_hermitian(m, tol);
}

inline bool is_partial_isometry(const Matrix& m, const Tolerance& tol) {
    return tol.equal(m * m.adjoint() * m, m);
}

inline bool is_psd(const Matrix& m, const Tolerance& tol) {
    if (!is_hermitian(m, tol)) return false;
    return min_eigenvalue(m) >= -(tol.eq_abs + tol.eq_rel * m.norm());
}

inline MatrixClass classify(const Matrix& m, const Tolerance& tol) {
    MatrixClass c;
    c.is_projection = is_projection(m, tol);
    c.is_orth_projection = c.is_projection && is_hermitian(m, tol);
    c.is_partial_isometry = is_partial_isometry(m, tol);
    c.is_psd = is_psd(m, tol);
    return c;
}

/// Minimum-norm least-squares solution X of M X = R.
inline Matrix solve_left(const Matrix& m, const Matrix& rhs, const Tolerance& tol) { return pinv(m, tol) * rhs; }

/// Minimum-norm least-squares solution Y of Y M = R.
inline Matrix solve_right(const Matrix& m, const Matrix& rhs, const Tolerance& tol) { return rhs * pinv(m, tol); }

/// Projection onto span(range) along span(complement); [range complement] must be invertible.
inline Matrix oblique_projection(const Matrix& range, const Matrix& complement) {
    const Index n = range.rows();
    if (complement.rows() != n || range.cols() + complement.cols() != n) {
        throw ShapeMismatch("oblique_projection: bases do not split the space");
    }
    Matrix basis(n, n);
    basis << range, complement;
    Eigen::FullPivLU<Matrix> lu(basis);
    if (!lu.isInvertible()) throw ShapeMismatch("oblique_projection: subspaces are not complementary");
    Matrix selector = Matrix::Zero(n, n);
    selector.topLeftCorner(range.cols(), range.cols()).setIdentity();
    return basis * selector * lu.inverse();
}

}  // namespace oporder
