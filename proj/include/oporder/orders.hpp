#pragma once

// Decision procedures for the Löwner, space, left/right star, star, minus,
// diamond and plus relations between complex matrices, each with every
// characterization route available, plus witnesses.

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "oporder/linalg.hpp"
#include "oporder/random.hpp"
#include "oporder/shorted.hpp"

namespace oporder {

enum class OrderKind { loewner, space, left_star, right_star, star, minus, diamond, plus };

inline constexpr std::array<OrderKind, 8> all_order_kinds = {
    OrderKind::loewner, OrderKind::space, OrderKind::left_star, OrderKind::right_star,
    OrderKind::star,    OrderKind::minus, OrderKind::diamond,   OrderKind::plus};

inline std::string_view to_string(OrderKind k) {
    switch (k) {
        case OrderKind::loewner: return "loewner";
        case OrderKind::space: return "space";
        case OrderKind::left_star: return "left_star";
        case OrderKind::right_star: return "right_star";
        case OrderKind::star: return "star";
        case OrderKind::minus: return "minus";
        case OrderKind::diamond: return "diamond";
        case OrderKind::plus: return "plus";
    }
    return "unknown";
}

inline std::optional<OrderKind> parse_order_kind(std::string_view name) {
    for (OrderKind k : all_order_kinds) {
        if (to_string(k) == name) return k;
    }
    if (name == "left-star") return OrderKind::left_star;
    if (name == "right-star") return OrderKind::right_star;
    return std::nullopt;
}

struct Route {
    std::string name;
    bool verdict = false;
    double residual = 0.0;
};

struct Witnesses {
    Matrix q_tilde;  // left projection, R(q_tilde) = R(A)
    Matrix q;        // right projection, N(q) = N(A)
    Matrix x;        // canonical parameter N(A) <- R(A*)
    Matrix y;        // canonical parameter R(A) <- N(A*)
    std::optional<Matrix> inner_inverse;
};

struct OrderReport {
    OrderKind kind = OrderKind::space;
    bool holds = false;
    std::vector<Route> routes;
    std::optional<Witnesses> witnesses;
    // plus only: no witness was found after every restart
    bool search_exhausted = false;

    bool routes_agree() const {
        for (const Route& r : routes)
            if (r.verdict != holds) return false;
        return true;
    }

    const Route* route(std::string_view name) const {
        for (const Route& r : routes)
            if (r.name == name) return &r;
        return nullptr;
    }
};

struct PlusSearchConfig {
    int restarts = 32;
    int max_iters = 200;
    std::uint64_t seed = 0;
    double residual_tol = 1e-8;

    void validate() const {
        if (restarts < 1 || max_iters < 1) throw InvalidTolerance("plus search needs restarts >= 1 and max_iters >= 1");
        if (!(residual_tol > 0.0)) throw InvalidTolerance("plus search residual tolerance must be positive");
    }
};

/// Oblique projections with A = q_tilde B q in canonical form, plus their block parameters.
struct SandwichWitness {
    Matrix q_tilde;
    Matrix q;
    Matrix x;
    Matrix y;
    double residual = 0.0;
};

namespace detail {

// Accumulates the conjunction of several numeric conditions into one route.
class RouteBuilder {
public:
    RouteBuilder(std::string name, const Tolerance& tol) : tol_(tol) { route_.name = std::move(name); route_.verdict = true; }

    RouteBuilder& equal(const Matrix& x, const Matrix& y) {
        if (x.rows() != y.rows() || x.cols() != y.cols()) {
            route_.verdict = false;
            return *this;
        }
        const double res = (x - y).norm();
        route_.residual = std::max(route_.residual, res);
        if (res > tol_.bound(x.norm(), y.norm())) route_.verdict = false;
        return *this;
    }

    RouteBuilder& included(const Matrix& a, const Matrix& b) {
        const double res = inclusion_residual(a, b, tol_);
        route_.residual = std::max(route_.residual, res);
        if (res > tol_.bound(a.norm(), a.norm())) route_.verdict = false;
        return *this;
    }

    RouteBuilder& idempotent(const Matrix& m) { return equal(m * m, m); }

    RouteBuilder& hermitian(const Matrix& m) { return equal(m, m.adjoint()); }

    RouteBuilder& require(bool ok, double residual = 0.0) {
        route_.residual = std::max(route_.residual, residual);
        if (!ok) route_.verdict = false;
        return *this;
    }

    Route done() const { return route_; }
    bool verdict() const { return route_.verdict; }

private:
    const Tolerance& tol_;
    Route route_;
};

inline Matrix zeros(Index r, Index c) { return Matrix::Zero(r, c); }

}  // namespace detail

/// q_tilde = [[1, -y], [0, 0]] on K = R(A) ⊕ N(A*).
inline Matrix canonical_left_projection(const Frame& f, const Matrix& y) {
    return f.col_space * f.col_space.adjoint() - f.col_space * y * f.left_null_space.adjoint();
}

/// q = [[1, 0], [-x, 0]] on H = R(A*) ⊕ N(A).
inline Matrix canonical_right_projection(const Frame& f, const Matrix& x) {
    return f.row_space * f.row_space.adjoint() - f.null_space * x * f.row_space.adjoint();
}

/// Block parameters (x, y) of projections with R(q_tilde) = R(A) and N(q) = N(A).
inline std::pair<Matrix, Matrix> canonical_parameters(const Frame& f, const Matrix& q_tilde, const Matrix& q) {
    Matrix x = -(f.null_space.adjoint() * q * f.row_space);
    Matrix y = -(f.col_space.adjoint() * q_tilde * f.left_null_space);
    return {std::move(x), std::move(y)};
}

/// Inner inverse A^- with A A^- = q_tilde and A^- A = q, in canonical blocks
/// [[a^{-1}, -a^{-1} y], [-x a^{-1}, x a^{-1} y]].
inline Matrix witness_to_inner_inverse(const Matrix& a, const Matrix& q_tilde, const Matrix& q, const Tolerance& tol) {
    if (q_tilde.rows() != a.rows() || q_tilde.cols() != a.rows() || q.rows() != a.cols() || q.cols() != a.cols()) {
        throw ShapeMismatch("witness_to_inner_inverse: projection shapes do not match A");
    }
    const Svd d = svd(a, tol);
    const Frame f = frame_of(d);
    const Index r = f.rank();
    if (!is_projection(q_tilde, tol) || !is_projection(q, tol)) throw WitnessInvalid("witness matrices are not projections");
    const Matrix id = Matrix::Identity(r, r);
    // zero tests scale with the witness, whose oblique parts may be large
    const bool left_ok = tol.equal(f.col_space.adjoint() * q_tilde * f.col_space, id) &&
                         (f.left_null_space.adjoint() * q_tilde).norm() <= tol.bound(q_tilde.norm(), 0.0);
    const bool right_ok = tol.equal(f.row_space.adjoint() * q * f.row_space, id) &&
                          (q * f.null_space).norm() <= tol.bound(q.norm(), 0.0);
    if (!left_ok) throw WitnessInvalid("left projection does not have range R(A)");
    if (!right_ok) throw WitnessInvalid("right projection does not have null space N(A)");

    const auto [x, y] = canonical_parameters(f, q_tilde, q);
    const Matrix a_inv = d.s.head(r).cwiseInverse().asDiagonal() * Matrix::Identity(r, r);
    const Matrix inner = f.assemble_reverse(a_inv, -a_inv * y, -x * a_inv, x * a_inv * y);

    if (!tol.equal(a * inner * a, a) || !tol.equal(inner * a * inner, inner) || !tol.equal(a * inner, q_tilde) ||
        !tol.equal(inner * a, q)) {
        throw WitnessInvalid("constructed inner inverse fails its defining identities");
    }
    return inner;
}

namespace detail {

inline Route space_route(const Matrix& a, const Matrix& b, const Tolerance& tol, std::string name = "definition") {
    return RouteBuilder(std::move(name), tol).included(a, b).included(a.adjoint(), b.adjoint()).done();
}

inline Route loewner_route(const Matrix& a, const Matrix& b, const Tolerance& tol) {
    if (a.rows() != a.cols()) throw ShapeMismatch("loewner order needs square matrices");
    if (!is_hermitian(a, tol) || !is_hermitian(b, tol)) throw NotHermitian("loewner order needs Hermitian matrices");
    const Matrix diff = b - a;
    const double lowest = min_eigenvalue(diff);
    const double floor = -(tol.eq_abs + tol.eq_rel * diff.norm());
    return RouteBuilder("definition", tol).require(lowest >= floor, std::max(0.0, -lowest)).done();
}

inline Route left_star_route(const Matrix& a, const Matrix& b, const Tolerance& tol) {
    const Matrix ah = a.adjoint();
    return RouteBuilder("definition", tol).equal(ah * a, ah * b).included(a, b).done();
}

inline Route right_star_route(const Matrix& a, const Matrix& b, const Tolerance& tol) {
    const Matrix ah = a.adjoint();
    return RouteBuilder("definition", tol).equal(a * ah, b * ah).included(ah, b.adjoint()).done();
}

inline Route star_route(const Matrix& a, const Matrix& b, const Tolerance& tol) {
    const Matrix ah = a.adjoint();
    return RouteBuilder("definition", tol).equal(ah * a, ah * b).equal(a * ah, b * ah).done();
}

struct MinusCandidate {
    Matrix q_tilde;  // A B^†
    Matrix q;        // B^† A
};

inline MinusCandidate minus_candidate(const Matrix& a, const Matrix& b, const Tolerance& tol) {
    const Matrix bp = pinv(b, tol);
    return {a * bp, bp * a};
}

inline Route minus_route(const Matrix& a, const Matrix& b, const MinusCandidate& c, const Tolerance& tol) {
    return RouteBuilder("definition", tol)
        .idempotent(c.q_tilde)
        .idempotent(c.q)
        .equal(c.q_tilde * b, a)
        .equal(b * c.q, a)
        .done();
}

inline Route diamond_route(const Matrix& a, const Matrix& b, const Tolerance& tol, std::string name = "definition") {
    const Matrix ah = a.adjoint();
    return RouteBuilder(std::move(name), tol)
        .included(a, b)
        .included(ah, b.adjoint())
        .equal(a * ah * a, a * b.adjoint() * a)
        .done();
}

inline Witnesses orthogonal_witnesses(const Matrix& a, const Tolerance& tol) {
    const Svd d = svd(a, tol);
    const Frame f = frame_of(d);
    Witnesses w;
    w.q_tilde = f.col_space * f.col_space.adjoint();
    w.q = f.row_space * f.row_space.adjoint();
    w.x = zeros(f.null_space.cols(), f.rank());
    w.y = zeros(f.rank(), f.left_null_space.cols());
    w.inner_inverse = pinv(d);
    return w;
}

inline Witnesses witnesses_from(const Matrix& a, const Matrix& q_tilde, const Matrix& q, const Tolerance& tol) {
    const Frame f = frame_of(a, tol);
    Witnesses w;
    w.q_tilde = q_tilde;
    w.q = q;
    auto [x, y] = canonical_parameters(f, q_tilde, q);
    w.x = std::move(x);
    w.y = std::move(y);
    w.inner_inverse = witness_to_inner_inverse(a, q_tilde, q, tol);
    return w;
}

// Complex Levenberg-Marquardt on the bilinear residual; returns the final residual norm.
struct BilinearProblem {
    Matrix d;    // b11 - a
    Matrix b12;  // r x p
    Matrix b21;  // q x r
    Matrix b22;  // q x p

    Matrix residual(const Matrix& x, const Matrix& y) const { return d - b12 * x - y * b21 + y * b22 * x; }
};

inline double als_refine(const BilinearProblem& pb, Matrix& x, Matrix& y, int max_iters, double target,
                         const Tolerance& tol) {
    double res = pb.residual(x, y).norm();
    int stall = 0;
    for (int it = 0; it < max_iters && res > target; ++it) {
        x = solve_left(pb.b12 - y * pb.b22, pb.d - y * pb.b21, tol);
        y = solve_right(pb.b21 - pb.b22 * x, pb.d - pb.b12 * x, tol);
        const double next = pb.residual(x, y).norm();
        stall = next > 0.999 * res ? stall + 1 : 0;
        res = next;
        if (stall >= 5) break;
    }
    return res;
}

inline double lm_refine(const BilinearProblem& pb, Matrix& x, Matrix& y, int max_iters, double target) {
    const Index r = pb.d.rows();
    const Index p = x.rows();
    const Index q = y.cols();
    const Index nx = p * r;
    const Index nz = nx + r * q;
    if (nz == 0) return pb.residual(x, y).norm();

    auto pack = [&](const Matrix& m) { return Eigen::Map<const Eigen::VectorXcd>(m.data(), m.size()); };
    Matrix res_m = pb.residual(x, y);
    double res = res_m.norm();
    double lambda = -1.0;
    int slow = 0;
    for (int it = 0; it < max_iters && res > target; ++it) {
        const Matrix lft = pb.b12 - y * pb.b22;  // r x p
        const Matrix nrt = pb.b21 - pb.b22 * x;  // q x r
        Matrix jac = Matrix::Zero(r * r, nz);
        // vec(L dx) = (I_r ⊗ L) vec(dx); vec(dy N) = (N^T ⊗ I_r) vec(dy)
        for (Index k = 0; k < r; ++k) jac.block(k * r, k * p, r, p) = -lft;
        for (Index i = 0; i < r; ++i)
            for (Index j = 0; j < q; ++j)
                for (Index k = 0; k < r; ++k) jac(i * r + k, nx + j * r + k) = -nrt(j, i);
        const Matrix normal = jac.adjoint() * jac;
        const Eigen::VectorXcd grad = jac.adjoint() * pack(res_m);
        if (lambda < 0.0) lambda = 1e-3 * std::max(1e-12, normal.diagonal().real().maxCoeff());
        bool accepted = false;
        while (!accepted && lambda < 1e16) {
            Matrix damped = normal;
            damped.diagonal().array() += lambda;
            const Eigen::VectorXcd step = damped.ldlt().solve(-grad);
            Matrix xt = x + Eigen::Map<const Matrix>(step.data(), p, r);
            Matrix yt = y + Eigen::Map<const Matrix>(step.data() + nx, r, q);
            Matrix trial = pb.residual(xt, yt);
            const double tn = trial.norm();
            if (tn < res) {
                slow = (res - tn) < 1e-10 * res ? slow + 1 : 0;
                x = std::move(xt);
                y = std::move(yt);
                res_m = std::move(trial);
                res = tn;
                lambda = std::max(lambda / 3.0, 1e-15);
                accepted = true;
            } else {
                lambda *= 4.0;
            }
        }
        if (!accepted || slow >= 5) break;
    }
    return res;
}

}  // namespace detail

/// Search for oblique projections with A = q_tilde B q (sandwich form) by
/// alternating least squares on the bilinear block residual
/// b11 - a - b12 x - y b21 + y b22 x, with random restarts and a damped
/// Gauss-Newton polish. A returned witness is always verified; absence is not
/// a proof that none exists.
inline std::optional<SandwichWitness> find_sandwich_witness(const Matrix& a, const Matrix& b, const Tolerance& tol,
                                                            const PlusSearchConfig& cfg) {
    require_same_shape(a, b, "find_sandwich_witness");
    cfg.validate();
    const BlockDecomposition bd = block_decompose(a, b, tol);
    const Frame& f = bd.frame;
    const Index r = f.rank();
    const Index p = f.null_space.cols();
    const Index q = f.left_null_space.cols();
    const detail::BilinearProblem pb{bd.b11 - bd.a, bd.b12, bd.b21, bd.b22};
    const double target = cfg.residual_tol * 1e-4;

    auto accept = [&](const Matrix& x, const Matrix& y) -> std::optional<SandwichWitness> {
        const double res = pb.residual(x, y).norm();
        if (!(res <= cfg.residual_tol)) return std::nullopt;
        SandwichWitness w;
        w.x = x;
        w.y = y;
        w.q_tilde = canonical_left_projection(f, y);
        w.q = canonical_right_projection(f, x);
        w.residual = (a - w.q_tilde * b * w.q).norm();
        if (!(w.residual <= std::max(cfg.residual_tol, tol.bound(a.norm(), a.norm())))) return std::nullopt;
        return w;
    };

    auto attempt = [&](Matrix x, Matrix y) -> std::optional<SandwichWitness> {
        double res = detail::als_refine(pb, x, y, cfg.max_iters, target, tol);
        if (res > target) res = detail::lm_refine(pb, x, y, cfg.max_iters, target);
        return accept(x, y);
    };

    // Orthogonal witness (diamond case) and the B^† candidate (minus case) first.
    if (auto w = accept(detail::zeros(p, r), detail::zeros(r, q))) return w;
    {
        const Matrix b22p = pinv(bd.b22, tol);
        if (auto w = attempt(b22p * bd.b21, bd.b12 * b22p)) return w;
    }
    Rng rng(cfg.seed);
    for (int k = 0; k < cfg.restarts; ++k) {
        const double scale = k % 2 == 0 ? 1.0 : 3.0;
        if (auto w = attempt(rng.gaussian(p, r, scale), rng.gaussian(r, q, scale))) return w;
    }
    return std::nullopt;
}

namespace detail {

inline OrderReport definitional_report(OrderKind kind, Route route) {
    OrderReport rep;
    rep.kind = kind;
    rep.holds = route.verdict;
    rep.routes.push_back(std::move(route));
    return rep;
}

}  // namespace detail

/// Decide one order relation A ≤ B through its defining condition.
inline OrderReport check(OrderKind kind, const Matrix& a, const Matrix& b, const Tolerance& tol,
                         const PlusSearchConfig& cfg = {}) {
    require_same_shape(a, b, "check");
    require_finite(a, "A");
    require_finite(b, "B");
    tol.validate();
    switch (kind) {
        case OrderKind::loewner: return detail::definitional_report(kind, detail::loewner_route(a, b, tol));
        case OrderKind::space: return detail::definitional_report(kind, detail::space_route(a, b, tol));
        case OrderKind::left_star: return detail::definitional_report(kind, detail::left_star_route(a, b, tol));
        case OrderKind::right_star: return detail::definitional_report(kind, detail::right_star_route(a, b, tol));
        case OrderKind::star: {
            OrderReport rep = detail::definitional_report(kind, detail::star_route(a, b, tol));
            if (rep.holds) rep.witnesses = detail::orthogonal_witnesses(a, tol);
            return rep;
        }
        case OrderKind::minus: {
            const detail::MinusCandidate c = detail::minus_candidate(a, b, tol);
            OrderReport rep = detail::definitional_report(kind, detail::minus_route(a, b, c, tol));
            if (rep.holds) rep.witnesses = detail::witnesses_from(a, c.q_tilde, c.q, tol);
            return rep;
        }
        case OrderKind::diamond: {
            OrderReport rep = detail::definitional_report(kind, detail::diamond_route(a, b, tol));
            if (rep.holds) rep.witnesses = detail::orthogonal_witnesses(a, tol);
            return rep;
        }
        case OrderKind::plus: {
            const Route space = detail::space_route(a, b, tol);
            std::optional<SandwichWitness> w;
            if (space.verdict) w = find_sandwich_witness(a, b, tol, cfg);
            detail::RouteBuilder rb("definition", tol);
            rb.require(space.verdict, space.residual);
            rb.require(w.has_value(), w ? w->residual : 0.0);
            OrderReport rep = detail::definitional_report(kind, rb.done());
            rep.search_exhausted = space.verdict && !w;
            if (w) {
                Witnesses wit;
                wit.q_tilde = w->q_tilde;
                wit.q = w->q;
                wit.x = w->x;
                wit.y = w->y;
                wit.inner_inverse = witness_to_inner_inverse(a, w->q_tilde, w->q, tol);
                rep.witnesses = std::move(wit);
            }
            return rep;
        }
    }
    throw Error("unknown order kind");
}

inline bool holds(OrderKind kind, const Matrix& a, const Matrix& b, const Tolerance& tol,
                  const PlusSearchConfig& cfg = {}) {
    return check(kind, a, b, tol, cfg).holds;
}

/// Star order through the definition, the projection form, the block form,
/// orthogonal range splitting, and B^†A, (B*)^†A* ∈ P.
inline OrderReport star_routes(const Matrix& a, const Matrix& b, const Tolerance& tol) {
    OrderReport rep = check(OrderKind::star, a, b, tol);
    const Svd da = svd(a, tol);
    const Frame f = frame_of(da);
    const Matrix pa = f.col_space * f.col_space.adjoint();
    const Matrix pas = f.row_space * f.row_space.adjoint();

    rep.routes.push_back(detail::RouteBuilder("projection_form", tol).equal(pa * b, a).equal(b * pas, a).done());

    const BlockDecomposition bd = block_decompose(a, b, f);
    rep.routes.push_back(detail::RouteBuilder("block_form", tol)
                             .equal(bd.b11, bd.a)
                             .equal(bd.b12, detail::zeros(bd.b12.rows(), bd.b12.cols()))
                             .equal(bd.b21, detail::zeros(bd.b21.rows(), bd.b21.cols()))
                             .done());

    // R(B) = R(A) ⊕ R(B-A) orthogonally, and the same for adjoints
    const Matrix c = b - a;
    const Index rank_b = rank(b, tol);
    const Index rank_c = rank_at_scale(c, spectral_norm(b), tol);
    const Index rank_sum = da.rank + rank_c;
    rep.routes.push_back(detail::RouteBuilder("orthogonal_range_sum", tol)
                             .equal(a.adjoint() * c, detail::zeros(a.cols(), c.cols()))
                             .equal(c * a.adjoint(), detail::zeros(c.rows(), a.rows()))
                             .require(rank_b == rank_sum, static_cast<double>(std::abs(rank_b - rank_sum)))
                             .done());

    const Route space = detail::space_route(a, b, tol);
    const Matrix bp = pinv(b, tol);
    const Matrix q = bp * a;
    const Matrix qt = bp.adjoint() * a.adjoint();
    rep.routes.push_back(detail::RouteBuilder("dagger_products_orthogonal", tol)
                             .require(space.verdict, space.residual)
                             .idempotent(q)
                             .hermitian(q)
                             .idempotent(qt)
                             .hermitian(qt)
                             .done());
    return rep;
}

/// Minus order through the definition, the block parameterization, the shorted
/// operator, B^† as common inner inverse, rank additivity, and B^†A ∈ Q.
inline OrderReport minus_routes(const Matrix& a, const Matrix& b, const Tolerance& tol) {
    OrderReport rep = check(OrderKind::minus, a, b, tol);
    const BlockDecomposition bd = block_decompose(a, b, tol);

    {
        const Matrix b22p = pinv(bd.b22, tol);
        const Matrix x = b22p * bd.b21;
        const Matrix y = bd.b12 * b22p;
        rep.routes.push_back(detail::RouteBuilder("block_parameters", tol)
                                 .equal(bd.b22 * x, bd.b21)
                                 .equal(y * bd.b22, bd.b12)
                                 .equal(bd.b11, bd.a + y * bd.b22 * x)
                                 .done());
    }
    {
        detail::RouteBuilder rb("shorted", tol);
        const SubspacePair pair = range_pair(bd.frame);
        const Complementability cf = complementability(b, pair, tol);
        rb.require(cf.complementable);
        if (cf.complementable) rb.equal(shorted_operator(b, pair, tol).shorted, a);
        rep.routes.push_back(rb.done());
    }
    const Route space = detail::space_route(a, b, tol);
    const Matrix bp = pinv(b, tol);
    rep.routes.push_back(detail::RouteBuilder("common_inner_inverse", tol)
                             .require(space.verdict, space.residual)
                             .equal(a * bp * a, a)
                             .done());
    {
        // rank(B) = rank(A) + rank(B-A); ranks of adjoints coincide, so one count serves both sides
        const Index rb = rank(b, tol);
        const Index sum = rank(a, tol) + rank_at_scale(b - a, spectral_norm(b), tol);
        rep.routes.push_back(detail::RouteBuilder("rank_additivity", tol)
                                 .require(rb == sum, static_cast<double>(std::abs(rb - sum)))
                                 .done());
    }
    rep.routes.push_back(detail::RouteBuilder("dagger_product_projection", tol)
                             .require(space.verdict, space.residual)
                             .idempotent(bp * a)
                             .done());
    return rep;
}

/// Diamond order through the definition, P_A B P_{A*} = A, the block form,
/// A^† B A^† = A^†, minus order of the daggers, and rank additivity of daggers.
inline OrderReport diamond_routes(const Matrix& a, const Matrix& b, const Tolerance& tol) {
    OrderReport rep = check(OrderKind::diamond, a, b, tol);
    const Svd da = svd(a, tol);
    const Frame f = frame_of(da);
    const Matrix pa = f.col_space * f.col_space.adjoint();
    const Matrix pas = f.row_space * f.row_space.adjoint();
    const Route space = detail::space_route(a, b, tol);

    rep.routes.push_back(detail::RouteBuilder("projection_compression", tol)
                             .require(space.verdict, space.residual)
                             .equal(pa * b * pas, a)
                             .done());

    const BlockDecomposition bd = block_decompose(a, b, f);
    rep.routes.push_back(detail::RouteBuilder("block_form", tol)
                             .equal(bd.b11, bd.a)
                             .included(f.left_null_space * bd.b21, b)
                             .included(f.null_space * bd.b12.adjoint(), b.adjoint())
                             .done());

    const Matrix ap = pinv(da);
    const Matrix bp = pinv(b, tol);
    rep.routes.push_back(detail::RouteBuilder("dagger_sandwich", tol)
                             .require(space.verdict, space.residual)
                             .equal(ap * b * ap, ap)
                             .done());

    const OrderReport dual = minus_routes(ap, bp, tol);
    rep.routes.push_back(detail::RouteBuilder("dagger_minus", tol).require(dual.holds).done());

    const Index rank_b = rank(b, tol);
    const Index sum = da.rank + rank_at_scale(bp - ap, spectral_norm(bp), tol);
    rep.routes.push_back(detail::RouteBuilder("dagger_rank_additivity", tol)
                             .require(rank_b == sum, static_cast<double>(std::abs(rank_b - sum)))
                             .done());
    return rep;
}

/// Operator-equation forms of the left star, minus and AA*A = AB*A conditions,
/// each paired with the verdict of the corresponding direct check.
struct EquationReport {
    Route left_star;
    bool left_star_check = false;
    Route minus;
    bool minus_check = false;
    Route diamond_core;
    bool diamond_core_check = false;

    bool agree() const {
        return left_star.verdict == left_star_check && minus.verdict == minus_check &&
               diamond_core.verdict == diamond_core_check;
    }
};

inline EquationReport equation_routes(const Matrix& a, const Matrix& b, const Tolerance& tol) {
    require_same_shape(a, b, "equation_routes");
    EquationReport rep;
    const Matrix c = b - a;
    const Matrix ah = a.adjoint();
    rep.left_star = detail::RouteBuilder("range_and_orthogonal_increment", tol)
                        .included(c, b)
                        .equal(ah * c, detail::zeros(ah.rows(), c.cols()))
                        .done();
    rep.left_star_check = check(OrderKind::left_star, a, b, tol).holds;

    const Matrix bp = pinv(b, tol);
    const Matrix xm = a * bp;
    const Matrix ym = bp * a;
    rep.minus = detail::RouteBuilder("xy_equations", tol).equal(xm * b, a).equal(b * ym, a).equal(xm * a, a).done();
    rep.minus_check = check(OrderKind::minus, a, b, tol).holds;

    rep.diamond_core = detail::RouteBuilder("increment_annihilation", tol)
                           .equal(a * c.adjoint() * a, detail::zeros(a.rows(), a.cols()))
                           .done();
    rep.diamond_core_check = tol.equal(a * ah * a, a * b.adjoint() * a);
    return rep;
}

/// Verdicts of every applicable relation, checked against the implication chains
/// star ⇒ minus ⇒ plus ⇒ space and star ⇒ diamond ⇒ plus ⇒ space.
inline std::vector<std::pair<OrderKind, bool>> implication_chain(const Matrix& a, const Matrix& b, const Tolerance& tol,
                                                                  const PlusSearchConfig& cfg = {}) {
    require_same_shape(a, b, "implication_chain");
    std::vector<std::pair<OrderKind, bool>> out;
    auto verdict = [&](OrderKind k) {
        for (const auto& [kind, v] : out)
            if (kind == k) return v;
        return false;
    };
    for (OrderKind k : all_order_kinds) {
        if (k == OrderKind::loewner && !(is_hermitian(a, tol) && is_hermitian(b, tol))) continue;
        out.emplace_back(k, check(k, a, b, tol, cfg).holds);
    }
    const std::pair<OrderKind, OrderKind> implications[] = {
        {OrderKind::star, OrderKind::left_star},   {OrderKind::star, OrderKind::right_star},
        {OrderKind::left_star, OrderKind::minus},  {OrderKind::right_star, OrderKind::minus},
        {OrderKind::star, OrderKind::minus},       {OrderKind::minus, OrderKind::plus},
        {OrderKind::star, OrderKind::diamond},     {OrderKind::diamond, OrderKind::plus},
        {OrderKind::plus, OrderKind::space},
    };
    std::string broken;
    for (const auto& [from, to] : implications) {
        if (verdict(from) && !verdict(to)) {
            broken += std::string(to_string(from)) + " => " + std::string(to_string(to)) + "; ";
        }
    }
    if (!broken.empty()) throw ChainViolation("implication chain broken: " + broken);
    return out;
}

}  // namespace oporder
