#pragma once

// Products of projections, partial isometries, polar factors and the
// reweighted inner products under which a plus pair becomes a diamond pair.

#include <optional>

#include "oporder/orders.hpp"

namespace oporder {

/// T = P_T P_{T*}, i.e. T is a product of two orthogonal projections.
inline bool pp_membership(const Matrix& t, const Tolerance& tol) {
    require_finite(t, "T");
    if (t.rows() != t.cols()) return false;
    return tol.equal(t, proj_range(t, tol) * proj_range(t.adjoint(), tol));
}

struct PPDiamond {
    bool diamond = false;
    bool space = false;
};

/// On products of orthogonal projections the diamond order is the space pre-order.
inline PPDiamond pp_diamond(const Matrix& t, const Matrix& t2, const Tolerance& tol) {
    require_same_shape(t, t2, "pp_diamond");
    if (!pp_membership(t, tol)) throw NotPP("first argument is not a product of two orthogonal projections");
    if (!pp_membership(t2, tol)) throw NotPP("second argument is not a product of two orthogonal projections");
    PPDiamond out;
    out.diamond = check(OrderKind::diamond, t, t2, tol).holds;
    out.space = check(OrderKind::space, t, t2, tol).holds;
    if (out.diamond != out.space) throw InternalInconsistency("diamond and space verdicts differ on a PP pair");
    return out;
}

struct QQFactorization {
    Matrix e;
    Matrix f;
};

namespace detail {

inline bool same_range(const Matrix& x, const Matrix& y, const Tolerance& tol) {
    return range_included(x, y, tol) && range_included(y, x, tol);
}

inline void require_projection(const Matrix& m, const char* what, const Tolerance& tol) {
    if (m.rows() != m.cols() || !is_projection(m, tol)) throw FactorizationInvalid(std::string(what) + " is not a projection");
}

}  // namespace detail

/// Given T2 = Ep Fp with (Ep, Fp) canonical and a plus witness T = q_tilde T2 q with
/// R(q_tilde) = R(T), R(q*) = R(T*), returns E = q_tilde Ep, F = Fp q with T = E F
/// and E, F below Ep, Fp in the minus order.
inline QQFactorization qq_plus_to_minus(const Matrix& t, const Matrix& t2, const Matrix& ep, const Matrix& fp,
                                        const Matrix& q_tilde, const Matrix& q, const Tolerance& tol) {
    require_same_shape(t, t2, "qq_plus_to_minus");
    detail::require_projection(ep, "E'", tol);
    detail::require_projection(fp, "F'", tol);
    if (ep.rows() != t.rows() || fp.cols() != t.cols()) throw ShapeMismatch("qq_plus_to_minus: factor shapes");
    if (!tol.equal(ep * fp, t2)) throw FactorizationInvalid("T2 != E' F'");
    if (!detail::same_range(ep, t2, tol)) throw FactorizationInvalid("R(E') != R(T2)");
    if (!detail::same_range(fp.adjoint(), t2.adjoint(), tol)) throw FactorizationInvalid("N(F') != N(T2)");

    if (q_tilde.rows() != t.rows() || q.rows() != t.cols() || !is_projection(q_tilde, tol) || !is_projection(q, tol)) {
        throw WitnessInvalid("plus witness matrices are not projections of the right size");
    }
    if (!tol.equal(q_tilde * t2 * q, t)) throw WitnessInvalid("T != q_tilde T2 q");
    if (!detail::same_range(q_tilde, t, tol) || !detail::same_range(q.adjoint(), t.adjoint(), tol)) {
        throw WitnessInvalid("witness is not canonical: need R(q_tilde) = R(T) and R(q*) = R(T*)");
    }

    QQFactorization out{q_tilde * ep, fp * q};
    const bool ok = is_projection(out.e, tol) && is_projection(out.f, tol) && tol.equal(out.e * out.f, t) &&
                    check(OrderKind::minus, out.e, ep, tol).holds && check(OrderKind::minus, out.f, fp, tol).holds;
    if (!ok) throw InternalInconsistency("constructed factors fail their minus-order guarantees");
    return out;
}

struct QQPlusWitness {
    Matrix q_tilde;  // E E'^†
    Matrix q;        // F'^† F
    double residual = 0.0;
};

/// From T = E F with E <= Ep and F <= Fp in the minus order, the witness
/// T = (E Ep^†) (Ep Fp) (Fp^† F) of T <= Ep Fp in the plus order.
inline QQPlusWitness qq_minus_to_plus(const Matrix& e, const Matrix& f, const Matrix& ep, const Matrix& fp,
                                      const Tolerance& tol) {
    detail::require_projection(e, "E", tol);
    detail::require_projection(f, "F", tol);
    detail::require_projection(ep, "E'", tol);
    detail::require_projection(fp, "F'", tol);
    require_same_shape(e, ep, "qq_minus_to_plus");
    require_same_shape(f, fp, "qq_minus_to_plus");
    if (!check(OrderKind::minus, e, ep, tol).holds) throw FactorizationInvalid("E is not below E' in the minus order");
    if (!check(OrderKind::minus, f, fp, tol).holds) throw FactorizationInvalid("F is not below F' in the minus order");
    QQPlusWitness out;
    out.q_tilde = e * pinv(ep, tol);
    out.q = pinv(fp, tol) * f;
    const Matrix t = e * f;
    out.residual = (out.q_tilde * (ep * fp) * out.q - t).norm();
    if (!is_projection(out.q_tilde, tol) || !is_projection(out.q, tol) || out.residual > tol.bound(t.norm(), t.norm())) {
        throw InternalInconsistency("assembled plus witness fails T = q_tilde T2 q");
    }
    return out;
}

struct IsometryVerdicts {
    bool star = false;
    bool minus = false;
    bool diamond = false;
    bool plus = false;
};

/// Star, minus and diamond coincide on partial isometries; plus is reported alongside.
inline IsometryVerdicts isometry_order_coincidence(const Matrix& f, const Matrix& g, const Tolerance& tol,
                                                   const PlusSearchConfig& cfg = {}) {
    require_same_shape(f, g, "isometry_order_coincidence");
    if (!is_partial_isometry(f, tol)) throw NotPartialIsometry("first argument is not a partial isometry");
    if (!is_partial_isometry(g, tol)) throw NotPartialIsometry("second argument is not a partial isometry");
    IsometryVerdicts out;
    out.star = check(OrderKind::star, f, g, tol).holds;
    out.minus = check(OrderKind::minus, f, g, tol).holds;
    out.diamond = check(OrderKind::diamond, f, g, tol).holds;
    out.plus = check(OrderKind::plus, f, g, tol, cfg).holds;
    if (out.star != out.minus || out.minus != out.diamond) {
        throw InternalInconsistency("star, minus and diamond disagree on partial isometries");
    }
    return out;
}

struct PolarTransferReport {
    bool hyp_modulus = false;
    bool hyp_isometry = false;
    bool conclusion = false;
    // plus only: the conclusion was certified by |B*| q_tilde_V |B*|^† and q_V after the search failed
    bool constructive = false;
};

/// Diamond: |A*| ⋄ |B*| and V_A ⋄ V_B imply A ⋄ B.
/// Plus: |A*| *≤ |B*| and V_A +≤ V_B imply A +≤ B.
/// Only the implication is asserted; its converse fails in general.
inline PolarTransferReport polar_order_transfer(const Matrix& a, const Matrix& b, OrderKind kind, const Tolerance& tol,
                                                const PlusSearchConfig& cfg = {}) {
    require_same_shape(a, b, "polar_order_transfer");
    if (kind != OrderKind::diamond && kind != OrderKind::plus) {
        throw Error("polar_order_transfer supports the diamond and plus orders only");
    }
    const PolarParts pa = polar(a, tol);
    const PolarParts pb = polar(b, tol);
    PolarTransferReport out;
    if (kind == OrderKind::diamond) {
        out.hyp_modulus = check(OrderKind::diamond, pa.modulus_star, pb.modulus_star, tol).holds;
        out.hyp_isometry = check(OrderKind::diamond, pa.isometry, pb.isometry, tol).holds;
        out.conclusion = check(OrderKind::diamond, a, b, tol).holds;
    } else {
        out.hyp_modulus = check(OrderKind::star, pa.modulus_star, pb.modulus_star, tol).holds;
        const OrderReport iso = check(OrderKind::plus, pa.isometry, pb.isometry, tol, cfg);
        out.hyp_isometry = iso.holds;
        out.conclusion = check(OrderKind::plus, a, b, tol, cfg).holds;
        if (!out.conclusion && out.hyp_modulus && iso.witnesses) {
            const Matrix qt = pb.modulus_star * iso.witnesses->q_tilde * pinv(pb.modulus_star, tol);
            const Matrix& q = iso.witnesses->q;
            if (is_projection(qt, tol) && tol.equal(qt * b * q, a) && check(OrderKind::space, a, b, tol).holds) {
                out.conclusion = true;
                out.constructive = true;
            }
        }
    }
    if (out.hyp_modulus && out.hyp_isometry && !out.conclusion) {
        throw InternalInconsistency(std::string("polar transfer violated for the ") + std::string(to_string(kind)) +
                                    " order");
    }
    return out;
}

/// When A ⋄ B and V_A ⋄ V_B, returns |A*| ⋄ |B*| (always true); nullopt when the hypotheses fail.
inline std::optional<bool> partial_converse_modulus(const Matrix& a, const Matrix& b, const Tolerance& tol) {
    require_same_shape(a, b, "partial_converse_modulus");
    const PolarParts pa = polar(a, tol);
    const PolarParts pb = polar(b, tol);
    if (!check(OrderKind::diamond, a, b, tol).holds || !check(OrderKind::diamond, pa.isometry, pb.isometry, tol).holds) {
        return std::nullopt;
    }
    const bool moduli = check(OrderKind::diamond, pa.modulus_star, pb.modulus_star, tol).holds;
    if (!moduli) throw InternalInconsistency("partial converse violated: |A*| is not below |B*| in the diamond order");
    return moduli;
}

struct ReweightReport {
    Matrix w_h;  // q* q + (I - q*)(I - q)
    Matrix w_k;  // the same for q_tilde
    bool diamond_weighted = false;
    double cond_h = 0.0;
    double cond_k = 0.0;
};

namespace detail {

inline Matrix projection_weight(const Matrix& q) {
    const Matrix id = Matrix::Identity(q.rows(), q.cols());
    return hermitian_part(q.adjoint() * q + (id - q.adjoint()) * (id - q));
}

inline double positive_definite_condition(const Matrix& w, const char* what) {
    if (w.size() == 0) return 1.0;
    Eigen::SelfAdjointEigenSolver<Matrix> es(w, Eigen::EigenvaluesOnly);
    const double lo = es.eigenvalues().minCoeff();
    if (!(lo > 0.0)) throw WitnessInvalid(std::string(what) + " weight is not positive definite");
    return es.eigenvalues().maxCoeff() / lo;
}

}  // namespace detail

/// Under <x, y>_Q = <W x, y> both witness projections are orthogonal, and the
/// diamond identities hold for the weighted adjoint X# = W_H^{-1} X* W_K.
inline ReweightReport reweight_to_diamond(const Matrix& a, const Matrix& b, const Matrix& q_tilde, const Matrix& q,
                                          const Tolerance& tol) {
    require_same_shape(a, b, "reweight_to_diamond");
    if (q_tilde.rows() != a.rows() || q_tilde.cols() != a.rows() || q.rows() != a.cols() || q.cols() != a.cols()) {
        throw WitnessInvalid("witness projection shapes do not match A");
    }
    if (!is_projection(q_tilde, tol) || !is_projection(q, tol)) throw WitnessInvalid("witness matrices are not projections");
    if (!tol.equal(q_tilde * b * q, a)) throw WitnessInvalid("A != q_tilde B q");

    ReweightReport out;
    out.w_h = detail::projection_weight(q);
    out.w_k = detail::projection_weight(q_tilde);
    out.cond_h = detail::positive_definite_condition(out.w_h, "domain");
    out.cond_k = detail::positive_definite_condition(out.w_k, "codomain");

    const Eigen::LDLT<Matrix> wh(out.w_h);
    const Eigen::LDLT<Matrix> wk(out.w_k);
    auto sharp_h = [&](const Matrix& x) -> Matrix { return wh.solve(x.adjoint() * out.w_k); };
    const Matrix a_sharp = sharp_h(a);
    const Matrix b_sharp = sharp_h(b);
    out.diamond_weighted = tol.equal(a * a_sharp * a, a * b_sharp * a) && range_included(a, b, tol) &&
                           range_included(a_sharp, b_sharp, tol);
    // both witness projections are selfadjoint in the weighted inner products
    out.diamond_weighted = out.diamond_weighted && tol.equal(wk.solve(q_tilde.adjoint() * out.w_k), q_tilde) &&
                           tol.equal(wh.solve(q.adjoint() * out.w_h), q);
    return out;
}

}  // namespace oporder
