#pragma once

// Complementability and the bilateral shorted operator A_{/S,T}.
//
// With H = S ⊕ S⊥ and K = T ⊕ T⊥ the operator splits as A = [[b, c], [d, e]].
// Weak complementability asks R(c*) ⊆ R(|e|^{1/2}) and R(d) ⊆ R(|e*|^{1/2});
// complementability asks R(c*) ⊆ R(e*) and R(d) ⊆ R(e).

#include "oporder/linalg.hpp"

namespace oporder {

/// Orthonormal bases of S ⊆ H (domain side) and T ⊆ K (codomain side).
struct SubspacePair {
    Matrix domain_basis;
    Matrix codomain_basis;
};

struct Complementability {
    bool complementable = false;
    bool weakly = false;
};

struct ShortedResult {
    bool complementable = false;
    bool weakly_complementable = false;
    Matrix shorted;  // ambient H -> K, vanishes on S⊥ and maps into T
    Matrix f;
    Matrix g;
    // ||(b - g*f) - (b - y e x)|| when complementable, zero otherwise
    double formula_gap = 0.0;
};

namespace detail {

struct ShortedBlocks {
    Matrix s, s_perp, t, t_perp;
    Matrix b, c, d, e;
    Svd e_svd;
};

inline Matrix orthonormal_complement(const Matrix& basis, Index dim, const Tolerance& tol) {
    if (basis.cols() == 0) return Matrix::Identity(dim, dim);
    const Svd d = svd(basis.adjoint(), tol);
    return d.kernel();
}

inline void require_orthonormal(const Matrix& basis, Index dim, const char* which, const Tolerance& tol) {
    if (basis.rows() != dim) {
        throw ShapeMismatch(std::string(which) + " basis has " + std::to_string(basis.rows()) +
                            " rows, expected " + std::to_string(dim));
    }
    if (basis.cols() > dim) throw BasisNotOrthonormal(std::string(which) + " basis has too many columns");
    if (!tol.equal(basis.adjoint() * basis, Matrix::Identity(basis.cols(), basis.cols()))) {
        throw BasisNotOrthonormal(std::string(which) + " basis columns are not orthonormal");
    }
}

inline ShortedBlocks split(const Matrix& a, const SubspacePair& p, const Tolerance& tol) {
    require_orthonormal(p.domain_basis, a.cols(), "domain", tol);
    require_orthonormal(p.codomain_basis, a.rows(), "codomain", tol);
    ShortedBlocks out;
    out.s = p.domain_basis;
    out.t = p.codomain_basis;
    out.s_perp = orthonormal_complement(out.s, a.cols(), tol);
    out.t_perp = orthonormal_complement(out.t, a.rows(), tol);
    out.b = out.t.adjoint() * a * out.s;
    out.c = out.t.adjoint() * a * out.s_perp;
    out.d = out.t_perp.adjoint() * a * out.s;
    out.e = out.t_perp.adjoint() * a * out.s_perp;
    out.e_svd = svd(out.e, tol);
    return out;
}

// |e|^{1/2} and |e*|^{1/2} share the singular bases of e; rank is decided on e itself.
inline Matrix abs_sqrt(const Svd& d) {
    const auto v = d.corange();
    return v * d.s.head(d.rank).cwiseSqrt().asDiagonal() * v.adjoint();
}

inline Matrix abs_adjoint_sqrt(const Svd& d) {
    const auto u = d.range();
    return u * d.s.head(d.rank).cwiseSqrt().asDiagonal() * u.adjoint();
}

inline Complementability flags(const ShortedBlocks& blk, const Tolerance& tol) {
    Complementability c;
    const Matrix e_adj = blk.e.adjoint();
    c.complementable = range_included(blk.c.adjoint(), e_adj, tol) && range_included(blk.d, blk.e, tol);
    c.weakly = range_included(blk.c.adjoint(), abs_sqrt(blk.e_svd), tol) &&
               range_included(blk.d, abs_adjoint_sqrt(blk.e_svd), tol);
    if (c.complementable && !c.weakly) {
        throw InternalInconsistency("complementable operator failed the weak complementability test");
    }
    return c;
}

}  // namespace detail

inline Complementability complementability(const Matrix& a, const SubspacePair& p, const Tolerance& tol) {
    return detail::flags(detail::split(a, p, tol), tol);
}

inline ShortedResult shorted_operator(const Matrix& a, const SubspacePair& p, const Tolerance& tol) {
    const detail::ShortedBlocks blk = detail::split(a, p, tol);
    const Complementability flags = detail::flags(blk, tol);
    if (!flags.weakly) throw NotWeaklyComplementable("operator is not weakly complementable for the subspace pair");

    ShortedResult out;
    out.complementable = flags.complementable;
    out.weakly_complementable = flags.weakly;

    const Svd& es = blk.e_svd;
    const Index r = es.rank;
    // e = |e*| u with u = U_r V_r*; (|e*|^{1/2} u)^† = V_r S^{-1/2} U_r*, (|e|^{1/2})^† = V_r S^{-1/2} V_r*
    const RealVector inv_sqrt = es.s.head(r).cwiseSqrt().cwiseInverse();
    const Matrix root_u_pinv = es.corange() * inv_sqrt.asDiagonal() * es.range().adjoint();
    const Matrix abs_root_pinv = es.corange() * inv_sqrt.asDiagonal() * es.corange().adjoint();
    out.f = root_u_pinv * blk.d;
    out.g = abs_root_pinv * blk.c.adjoint();
    const Matrix core = blk.b - out.g.adjoint() * out.f;
    out.shorted = blk.t * core * blk.s.adjoint();

    if (flags.complementable) {
        const Matrix e_pinv = pinv(es);
        const Matrix y = blk.c * e_pinv;
        const Matrix x = e_pinv * blk.d;
        const Matrix core_c = blk.b - y * blk.e * x;
        out.formula_gap = (core_c - core).norm();
    }
    return out;
}

/// Range pair (R(A*), R(A)) of an operator, as used by the minus order.
inline SubspacePair range_pair(const Frame& f) { return {f.row_space, f.col_space}; }

/// Null-space pair (N(A), N(A*)) of an operator, as used by the diamond order.
inline SubspacePair null_pair(const Frame& f) { return {f.null_space, f.left_null_space}; }

struct DiamondShortedResult {
    bool holds = false;
    Matrix shorted;  // S = B_{/N(A),N(A*)}, ambient
};

/// Diamond test through S = B_{/N(A),N(A*)}: b11 == a, R(b21) ⊆ R(S), R(b12*) ⊆ R(S*).
inline DiamondShortedResult diamond_via_shorted(const Matrix& a, const Matrix& b, const Tolerance& tol) {
    require_same_shape(a, b, "diamond_via_shorted");
    const BlockDecomposition bd = block_decompose(a, b, tol);
    const SubspacePair pair = null_pair(bd.frame);
    const detail::ShortedBlocks blk = detail::split(b, pair, tol);
    if (!detail::flags(blk, tol).complementable) {
        throw NotComplementable("B is not complementable with respect to (N(A), N(A*))");
    }
    const ShortedResult sr = shorted_operator(b, pair, tol);
    const Matrix s_block = bd.frame.left_null_space.adjoint() * sr.shorted * bd.frame.null_space;
    DiamondShortedResult out;
    out.shorted = sr.shorted;
    // S is a Schur-type difference; its range is decided at the scale of B
    const double scale = spectral_norm(b);
    out.holds = tol.equal(bd.b11, bd.a) && range_included_at_scale(bd.b21, s_block, scale, tol) &&
                range_included_at_scale(bd.b12.adjoint(), s_block.adjoint(), scale, tol);
    return out;
}

}  // namespace oporder
