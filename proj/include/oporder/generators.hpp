#pragma once

// Constructions of B above a given A from block parameters, in the canonical
// frame H = R(A*) ⊕ N(A) -> K = R(A) ⊕ N(A*). Parameter shapes, with r = rank A:
//   x   : N(A)   <- R(A*)   ((n-r) x r)
//   y   : R(A)   <- N(A*)   (r x (m-r))
//   b22 : N(A*)  <- N(A)    ((m-r) x (n-r))
//   w   : N(A*)  <- R(A*)   ((m-r) x r)
//   z   : R(A)   <- N(A)    (r x (n-r))

#include <cstdint>
#include <optional>

#include "oporder/means.hpp"
#include "oporder/orders.hpp"
#include "oporder/random.hpp"

namespace oporder {

namespace detail {

inline void require_block(const Matrix& m, Index rows, Index cols, const char* name) {
    if (m.rows() != rows || m.cols() != cols) {
        throw ShapeMismatch(std::string(name) + " must be " + std::to_string(rows) + "x" + std::to_string(cols) +
                            ", got " + shape_string(m));
    }
    require_finite(m, name);
}

struct CanonicalA {
    Frame frame;
    Matrix a;
    Index r, p, q;  // rank, dim N(A), dim N(A*)
};

inline CanonicalA canonical(const Matrix& a, const Tolerance& tol) {
    require_finite(a, "A");
    const BlockDecomposition bd = block_decompose(a, a, tol);
    CanonicalA c{bd.frame, bd.a, bd.frame.rank(), bd.frame.null_space.cols(), bd.frame.left_null_space.cols()};
    return c;
}

}  // namespace detail

/// B = [[a, 0], [b22 x, b22]].
inline Matrix gen_left_star(const Matrix& a, const Matrix& x, const Matrix& b22, const Tolerance& tol) {
    const detail::CanonicalA c = detail::canonical(a, tol);
    detail::require_block(x, c.p, c.r, "x");
    detail::require_block(b22, c.q, c.p, "b22");
    return c.frame.assemble(c.a, detail::zeros(c.r, c.p), b22 * x, b22);
}

/// B = [[a, y b22], [0, b22]].
inline Matrix gen_right_star(const Matrix& a, const Matrix& y, const Matrix& b22, const Tolerance& tol) {
    const detail::CanonicalA c = detail::canonical(a, tol);
    detail::require_block(y, c.r, c.q, "y");
    detail::require_block(b22, c.q, c.p, "b22");
    return c.frame.assemble(c.a, y * b22, detail::zeros(c.q, c.r), b22);
}

/// B = [[a, 0], [0, b22]].
inline Matrix gen_star(const Matrix& a, const Matrix& b22, const Tolerance& tol) {
    const detail::CanonicalA c = detail::canonical(a, tol);
    detail::require_block(b22, c.q, c.p, "b22");
    return c.frame.assemble(c.a, detail::zeros(c.r, c.p), detail::zeros(c.q, c.r), b22);
}

/// B = [[a + y b22 x, y b22], [b22 x, b22]].
inline Matrix gen_minus(const Matrix& a, const Matrix& x, const Matrix& y, const Matrix& b22, const Tolerance& tol) {
    const detail::CanonicalA c = detail::canonical(a, tol);
    detail::require_block(x, c.p, c.r, "x");
    detail::require_block(y, c.r, c.q, "y");
    detail::require_block(b22, c.q, c.p, "b22");
    return c.frame.assemble(c.a + y * b22 * x, y * b22, b22 * x, b22);
}

/// B = C^† with C = gen_minus(A^†, x, y, b22); parameters live in the frame of A^†.
inline Matrix gen_diamond(const Matrix& a, const Matrix& x, const Matrix& y, const Matrix& b22, const Tolerance& tol) {
    return pinv(gen_minus(pinv(a, tol), x, y, b22, tol), tol);
}

/// Minus parameters recovered from a pair: x = b22^† b21, y = b12 b22^† (minimum norm).
struct MinusParameters {
    Matrix x;
    Matrix y;
    Matrix b22;
};

inline MinusParameters extract_minus_parameters(const Matrix& a, const Matrix& b, const Tolerance& tol) {
    const BlockDecomposition bd = block_decompose(a, b, tol);
    const Matrix b22p = pinv(bd.b22, tol);
    return {b22p * bd.b21, bd.b12 * b22p, bd.b22};
}

/// Assembles the plus-form B and returns it only when A <= B in the plus order is verified:
/// R([[y w, 0], [w, 0]]) ⊆ R(B), R([[x* z*, 0], [z*, 0]]) ⊆ R(B*), the space pre-order, and A = q_tilde B q.
inline std::optional<Matrix> gen_plus(const Matrix& a, const Matrix& x, const Matrix& y, const Matrix& w,
                                      const Matrix& z, const Matrix& b22, const Tolerance& tol) {
    const detail::CanonicalA c = detail::canonical(a, tol);
    detail::require_block(x, c.p, c.r, "x");
    detail::require_block(y, c.r, c.q, "y");
    detail::require_block(w, c.q, c.r, "w");
    detail::require_block(z, c.r, c.p, "z");
    detail::require_block(b22, c.q, c.p, "b22");
    const Frame& f = c.frame;
    Matrix b = f.assemble(c.a + y * b22 * x + y * w + z * x, y * b22 + z, b22 * x + w, b22);

    const Matrix left_extra = f.assemble(y * w, detail::zeros(c.r, c.p), w, detail::zeros(c.q, c.p));
    const Matrix right_extra = f.assemble_reverse(x.adjoint() * z.adjoint(), detail::zeros(c.r, c.q), z.adjoint(),
                                                  detail::zeros(c.p, c.q));
    if (!range_included(left_extra, b, tol) || !range_included(right_extra, b.adjoint(), tol)) return std::nullopt;
    if (!check(OrderKind::space, a, b, tol).holds) return std::nullopt;
    const Matrix sandwich = canonical_left_projection(f, y) * b * canonical_right_projection(f, x);
    if (!tol.equal(sandwich, a)) return std::nullopt;
    return b;
}

/// Positive semidefinite diamond construction.
struct DiamondPsdResult {
    Matrix a;  // embedded A = U diag(a, 0) U*
    Matrix b;
    Matrix g;  // 1/2 + [(y* b22 y + a/4) # a] a^{-1}
    double riccati_residual = 0.0;
};

namespace detail {

inline DiamondPsdResult diamond_psd_in(const Matrix& basis, const Matrix& kernel, const PsdMatrix& a,
                                       const Matrix& y, const PsdMatrix& b22, const Tolerance& tol) {
    const Index r = a.size();
    const Index p = b22.size();
    require_block(y, p, r, "y");
    if (rank(a.matrix(), tol) != r) throw BSingular("diamond-psd: the core a must be invertible");

    // b12 y = X with X* a^{-1} X + X = y* b22 y, i.e. T = -1/2, B = a, C = y* b22 y
    const Matrix c = hermitian_part(y.adjoint() * b22.matrix() * y);
    const RiccatiResult ric =
        riccati_solve(a, -0.5 * Matrix::Identity(r, r), PsdMatrix(c, tol), tol);
    const Matrix a_inv = a.matrix().inverse();
    // G = 1/2 + (D # a) a^{-1} = I + X a^{-1} since D # a = X + a/2
    const Matrix g = Matrix::Identity(r, r) + ric.x * a_inv;
    Eigen::FullPivLU<Matrix> lu(g);
    if (!lu.isInvertible()) throw GenerationFailed("diamond-psd: G is singular");
    const Matrix b12 = lu.solve(y.adjoint() * b22.matrix());

    DiamondPsdResult out;
    out.g = g;
    out.riccati_residual = ric.residual;
    Matrix u(basis.rows(), r + p);
    u << basis, kernel;
    Matrix core = Matrix::Zero(r + p, r + p);
    core.topLeftCorner(r, r) = a.matrix();
    out.a = hermitian_part(u * core * u.adjoint());
    core.topRightCorner(r, p) = b12;
    core.bottomLeftCorner(p, r) = b12.adjoint();
    core.bottomRightCorner(p, p) = b22.matrix();
    out.b = hermitian_part(u * core * u.adjoint());
    return out;
}

}  // namespace detail

/// B = [[a, G^{-1} y* b22], [b22 y G^{-1}*, b22]] over A = diag(a, 0) in standard coordinates.
inline DiamondPsdResult gen_diamond_psd(const PsdMatrix& a, const Matrix& y, const PsdMatrix& b22,
                                        const Tolerance& tol) {
    const Index r = a.size();
    const Index p = b22.size();
    const Matrix id = Matrix::Identity(r + p, r + p);
    return detail::diamond_psd_in(id.leftCols(r), id.rightCols(p), a, y, b22, tol);
}

/// Same construction over an ambient PSD matrix A, in its eigenbasis.
inline DiamondPsdResult gen_diamond_psd(const Matrix& a_ambient, const Matrix& y, const PsdMatrix& b22,
                                        const Tolerance& tol) {
    const PsdMatrix a_psd(a_ambient, tol);
    const Frame f = hermitian_frame_of(a_psd.matrix(), tol);
    if (f.null_space.cols() != b22.size()) {
        throw ShapeMismatch("diamond-psd: b22 must act on N(A), dimension " + std::to_string(f.null_space.cols()));
    }
    const Matrix core = hermitian_part(f.row_space.adjoint() * a_psd.matrix() * f.row_space);
    return detail::diamond_psd_in(f.row_space, f.null_space, PsdMatrix(core, tol), y, b22, tol);
}

/// Parameters (y, b22) of a PSD diamond pair: S = b22 - b12* a^{-1} b12 and y = S^† b12*.
struct DiamondPsdParameters {
    Matrix y;
    Matrix b22;
};

inline DiamondPsdParameters extract_diamond_psd(const Matrix& a, const Matrix& b, const Tolerance& tol) {
    const PsdMatrix a_psd(a, tol);
    const PsdMatrix b_psd(b, tol);
    const Frame f = hermitian_frame_of(a_psd.matrix(), tol);
    const Matrix core = f.row_space.adjoint() * a_psd.matrix() * f.row_space;
    const Matrix b12 = f.row_space.adjoint() * b_psd.matrix() * f.null_space;
    const Matrix b22 = hermitian_part(f.null_space.adjoint() * b_psd.matrix() * f.null_space);
    const Matrix s = b22 - b12.adjoint() * core.inverse() * b12;
    return {pinv(s, tol) * b12.adjoint(), b22};
}

/// Seeded random generation: Gaussian parameters scaled by `scale`, b22 of rank b22_rank.
struct GenSpec {
    OrderKind kind = OrderKind::minus;
    std::uint64_t seed = 0;
    Index b22_rank = 1;
    double scale = 1.0;
};

namespace detail {

struct RandomBlocks {
    Matrix x, y, b22, w, z;
};

inline RandomBlocks random_blocks(Rng& rng, Index r, Index p, Index q, Index b22_rank, double scale) {
    RandomBlocks out;
    out.x = rng.gaussian(p, r, scale);
    out.y = rng.gaussian(r, q, scale);
    out.b22 = rng.with_rank(q, p, std::min({b22_rank, p, q}), scale);
    out.w = rng.gaussian(q, r, scale);
    out.z = rng.gaussian(r, p, scale);
    return out;
}

}  // namespace detail

inline Matrix generate(const Matrix& a, const GenSpec& spec, const Tolerance& tol) {
    if (!(spec.scale > 0.0)) throw InvalidTolerance("generator scale must be positive");
    if (spec.b22_rank < 0) throw InvalidTolerance("b22 rank must be nonnegative");
    Rng rng(spec.seed);
    const detail::CanonicalA c = detail::canonical(a, tol);
    if (spec.b22_rank > std::min(c.p, c.q) && spec.kind != OrderKind::loewner) {
        throw GenerationFailed("b22 rank " + std::to_string(spec.b22_rank) + " exceeds min(dim N(A), dim N(A*)) = " +
                               std::to_string(std::min(c.p, c.q)));
    }
    detail::RandomBlocks blk = detail::random_blocks(rng, c.r, c.p, c.q, spec.b22_rank, spec.scale);
    switch (spec.kind) {
        case OrderKind::loewner: {
            if (a.rows() != a.cols() || !is_hermitian(a, tol)) throw NotHermitian("loewner generation needs Hermitian A");
            const Index n = a.rows();
            return hermitian_part(a + rng.psd(n, std::min<Index>(std::max<Index>(spec.b22_rank, 1), n), spec.scale));
        }
        case OrderKind::left_star: return gen_left_star(a, blk.x, blk.b22, tol);
        case OrderKind::right_star: return gen_right_star(a, blk.y, blk.b22, tol);
        case OrderKind::star: return gen_star(a, blk.b22, tol);
        case OrderKind::minus: return gen_minus(a, blk.x, blk.y, blk.b22, tol);
        case OrderKind::diamond: {
            // frame of A^† swaps the roles of the two null spaces
            const detail::RandomBlocks d = detail::random_blocks(rng, c.r, c.q, c.p, spec.b22_rank, spec.scale);
            return gen_diamond(a, d.x, d.y, d.b22, tol);
        }
        case OrderKind::space:
        case OrderKind::plus: {
            // w = b22 s and z = t b22 keep the extra blocks inside the ranges of b22
            for (int attempt = 0; attempt < 16; ++attempt) {
                const Matrix w = attempt < 8 ? blk.b22 * rng.gaussian(c.p, c.r, spec.scale) : blk.w;
                const Matrix z = attempt < 8 ? rng.gaussian(c.r, c.q, spec.scale) * blk.b22 : blk.z;
                if (auto b = gen_plus(a, blk.x, blk.y, w, z, blk.b22, tol)) return *b;
                blk = detail::random_blocks(rng, c.r, c.p, c.q, spec.b22_rank, spec.scale);
            }
            throw GenerationFailed("no admissible plus parameters found");
        }
    }
    throw GenerationFailed("unknown order kind");
}

}  // namespace oporder
