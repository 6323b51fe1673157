#pragma once

// Randomized property suites over seed ranges. Each suite runs independent,
// deterministic cases and reports the number of failures.

#include <chrono>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "oporder/factors.hpp"
#include "oporder/generators.hpp"
#include "oporder/hasse.hpp"
#include "oporder/means.hpp"
#include "oporder/orders.hpp"
#include "oporder/shorted.hpp"

namespace oporder {

struct SuiteResult {
    std::string name;
    std::size_t cases = 0;
    std::size_t failures = 0;
    std::vector<std::string> messages;  // first few failure descriptions
    double seconds = 0.0;

    bool passed() const { return failures == 0 && cases > 0; }
};

struct VerifyOptions {
    std::uint64_t seed_begin = 0;
    std::uint64_t seed_end = 99;  // inclusive
    Tolerance tol;
    PlusSearchConfig cfg;
};

namespace samples {

/// A pair (A, B) from a seeded family; `positive` means B was generated above A.
struct Pair {
    Matrix a;
    Matrix b;
    bool positive = false;
    std::string mode;
};

inline Matrix random_core(Rng& rng, Index m, Index n, Index r) { return rng.with_rank(m, n, r); }

/// Shapes up to 8x8 with mixed ranks; even seeds give generated positives, odd
/// seeds give perturbations that usually break the order.
inline Pair pair_for(OrderKind kind, std::uint64_t seed, const Tolerance& tol) {
    Rng rng(seed * 7919 + static_cast<std::uint64_t>(kind) * 104729 + 17);
    const Index m = rng.integer(1, 8);
    const Index n = rng.integer(1, 8);
    const Index r = seed % 13 == 5 ? 0 : rng.integer(1, std::min(m, n));
    const Matrix a = random_core(rng, m, n, r);
    const Index p = n - r;
    const Index q = m - r;
    GenSpec spec;
    spec.kind = kind;
    spec.seed = rng.next_seed();
    spec.b22_rank = rng.integer(0, std::min(p, q));
    Pair out;
    out.a = a;
    out.b = generate(a, spec, tol);
    out.positive = true;
    out.mode = "generated";
    if (seed % 2 == 0) return out;

    out.positive = false;
    const Frame f = frame_of(a, tol);
    switch ((seed / 2) % 6) {
        case 0:
            out.b += 0.3 * rng.gaussian(m, n);
            out.mode = "gaussian";
            break;
        case 1:
            out.b += f.col_space * rng.gaussian(r, r, 0.5) * f.row_space.adjoint();
            out.mode = "b11";
            break;
        case 2:
            out.b += f.col_space * rng.gaussian(r, p, 0.5) * f.null_space.adjoint();
            out.mode = "b12";
            break;
        case 3:
            out.b += f.left_null_space * rng.gaussian(q, r, 0.5) * f.row_space.adjoint();
            out.mode = "b21";
            break;
        case 4:
            out.b *= Complex(rng.uniform(1.5, 2.5), 0.0);
            out.mode = "scaled";
            break;
        default:
            out.b += rng.gaussian(m, 1) * rng.gaussian(1, n);
            out.mode = "rank_one";
            break;
    }
    return out;
}

inline Matrix partial_isometry(Rng& rng, Index m, Index n, Index r) {
    r = std::min({r, m, n});
    if (r <= 0) return Matrix::Zero(m, n);
    return rng.unitary(m).leftCols(r) * rng.unitary(n).leftCols(r).adjoint();
}

/// Orthogonal projections; even seeds nested.
inline std::pair<Matrix, Matrix> orth_projection_pair(std::uint64_t seed) {
    Rng rng(seed * 31 + 3);
    const Index n = rng.integer(1, 7);
    const Matrix u = rng.unitary(n);
    const Index k2 = rng.integer(0, n);
    const Index k1 = rng.integer(0, k2);
    const Matrix p2 = u.leftCols(k2) * u.leftCols(k2).adjoint();
    if (seed % 2 == 0) return {u.leftCols(k1) * u.leftCols(k1).adjoint(), p2};
    return {rng.orth_projection(n, rng.integer(0, n)), p2};
}

/// Partial isometries; even seeds star-related (F = G restricted to a subspace).
inline std::pair<Matrix, Matrix> partial_isometry_pair(std::uint64_t seed) {
    Rng rng(seed * 37 + 5);
    const Index m = rng.integer(1, 7);
    const Index n = rng.integer(1, 7);
    const Index r = rng.integer(1, std::min(m, n));
    const Matrix u = rng.unitary(m).leftCols(r);
    const Matrix v = rng.unitary(n).leftCols(r);
    const Matrix g = u * v.adjoint();
    if (seed % 2 == 0) {
        const Index k = rng.integer(0, r);
        return {u.leftCols(k) * v.leftCols(k).adjoint(), g};
    }
    return {partial_isometry(rng, m, n, rng.integer(1, std::min(m, n))), g};
}

/// Oblique projection S diag(D, 0) S^{-1} with D a k x k projection.
struct ProjectionFrame {
    Matrix s;
    Matrix s_inv;
    Index k = 0;

    Matrix embed(const Matrix& d) const {
        const Index n = s.rows();
        Matrix core = Matrix::Zero(n, n);
        core.topLeftCorner(d.rows(), d.cols()) = d;
        return s * core * s_inv;
    }
    Matrix full() const { return embed(Matrix::Identity(k, k)); }
};

inline ProjectionFrame projection_frame(Rng& rng, Index n, Index k) {
    ProjectionFrame f;
    f.s = rng.well_conditioned(n);
    f.s_inv = f.s.inverse();
    f.k = k;
    return f;
}

/// T2 = Ep Fp with canonical factors of one rank, and minus-smaller factors E, F.
struct QQCase {
    Matrix ep, fp, e, f;
};

inline QQCase qq_case(std::uint64_t seed) {
    Rng rng(seed * 41 + 11);
    const Index n = rng.integer(2, 6);
    const Index k = rng.integer(1, n);
    const ProjectionFrame pe = projection_frame(rng, n, k);
    const ProjectionFrame pf = projection_frame(rng, n, k);
    QQCase c;
    c.ep = pe.full();
    c.fp = pf.full();
    c.e = pe.embed(rng.projection(k, rng.integer(0, k)));
    c.f = pf.embed(rng.projection(k, rng.integer(0, k)));
    return c;
}

/// Three matrices with A <= B <= C in `kind`, built by applying the generator twice.
inline std::array<Matrix, 3> chain_for(OrderKind kind, std::uint64_t seed, const Tolerance& tol) {
    Rng rng(seed * 53 + 7);
    const Index m = rng.integer(2, 7);
    const Index n = rng.integer(2, 7);
    const Index r = rng.integer(0, std::min(m, n) - 1);
    const Matrix a = random_core(rng, m, n, r);
    GenSpec spec;
    spec.kind = kind;
    spec.seed = rng.next_seed();
    spec.b22_rank = 1;
    const Matrix b = generate(a, spec, tol);
    const Index rb = rank(b, tol);
    spec.seed = rng.next_seed();
    spec.b22_rank = std::min(m, n) > rb ? 1 : 0;
    const Matrix c = generate(b, spec, tol);
    return {a, b, c};
}

}  // namespace samples

namespace detail {

class SuiteRunner {
public:
    explicit SuiteRunner(std::string name) : start_(std::chrono::steady_clock::now()) { result_.name = std::move(name); }

    void expect(bool ok, const std::string& what) {
        ++result_.cases;
        if (!ok) fail(what);
    }

    void fail(const std::string& what) {
        ++result_.failures;
        if (result_.messages.size() < 8) result_.messages.push_back(what);
    }

    // Runs one case, converting library errors into failures.
    template <class F>
    void guarded(const std::string& label, F&& body) {
        try {
            body();
        } catch (const std::exception& e) {
            ++result_.cases;
            fail(label + ": " + e.what());
        }
    }

    SuiteResult finish() {
        result_.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
        return result_;
    }

private:
    SuiteResult result_;
    std::chrono::steady_clock::time_point start_;
};

inline std::string seed_label(std::uint64_t seed) { return "seed " + std::to_string(seed); }

}  // namespace detail

inline SuiteResult suite_linalg(const VerifyOptions& o) {
    detail::SuiteRunner run("linalg");
    for (std::uint64_t s = o.seed_begin; s <= o.seed_end; ++s) {
        run.guarded(detail::seed_label(s), [&] {
            Rng rng(s + 1000);
            const Index m = rng.integer(1, 8);
            const Index n = rng.integer(1, 8);
            const Matrix mtx = rng.with_rank(m, n, rng.integer(0, std::min(m, n)));
            const Matrix p = pinv(mtx, o.tol);
            const Tolerance& t = o.tol;
            run.expect(t.equal(mtx * p * mtx, mtx) && t.equal(p * mtx * p, p) && is_hermitian(mtx * p, t) &&
                           is_hermitian(p * mtx, t),
                       detail::seed_label(s) + ": Penrose identities");
            run.expect(t.equal(proj_range(mtx, t), mtx * p), detail::seed_label(s) + ": P_M == M M^dagger");
            const PolarParts pp = polar(mtx, t);
            run.expect(t.equal(pp.modulus_star * pp.isometry, mtx) &&
                           t.equal(pp.isometry.adjoint() * pp.isometry, proj_range(mtx.adjoint(), t)),
                       detail::seed_label(s) + ": polar round trip");
            const Matrix b = rng.gaussian(m, n);
            const BlockDecomposition bd = block_decompose(mtx, b, t);
            run.expect(t.equal(bd.reassemble_b(), b) && t.equal(bd.reassemble_a(), mtx),
                       detail::seed_label(s) + ": block reassembly");
        });
    }
    return run.finish();
}

/// Every route inside star/minus/diamond/equation routes gives one verdict.
inline SuiteResult suite_routes(const VerifyOptions& o) {
    detail::SuiteRunner run("routes");
    for (std::uint64_t s = o.seed_begin; s <= o.seed_end; ++s) {
        for (OrderKind kind : {OrderKind::star, OrderKind::minus, OrderKind::diamond}) {
            const std::string label = detail::seed_label(s) + " " + std::string(to_string(kind));
            run.guarded(label, [&] {
                const samples::Pair pr = samples::pair_for(kind, s, o.tol);
                const OrderReport rep = kind == OrderKind::star    ? star_routes(pr.a, pr.b, o.tol)
                                        : kind == OrderKind::minus ? minus_routes(pr.a, pr.b, o.tol)
                                                                   : diamond_routes(pr.a, pr.b, o.tol);
                run.expect(rep.routes_agree(), label + " (" + pr.mode + "): routes disagree");
                if (pr.positive) run.expect(rep.holds, label + ": generated pair not ordered");
                run.expect(equation_routes(pr.a, pr.b, o.tol).agree(), label + ": equation routes disagree");
            });
        }
    }
    return run.finish();
}

inline SuiteResult suite_chain(const VerifyOptions& o) {
    detail::SuiteRunner run("chain");
    for (std::uint64_t s = o.seed_begin; s <= o.seed_end; ++s) {
        for (OrderKind kind : {OrderKind::star, OrderKind::minus, OrderKind::diamond, OrderKind::plus}) {
            const std::string label = detail::seed_label(s) + " " + std::string(to_string(kind));
            run.guarded(label, [&] {
                const samples::Pair pr = samples::pair_for(kind, s, o.tol);
                const auto verdicts = implication_chain(pr.a, pr.b, o.tol, o.cfg);
                bool target = false;
                for (const auto& [k, v] : verdicts)
                    if (k == kind) target = v;
                run.expect(!pr.positive || target, label + ": generated pair not ordered");
            });
        }
    }
    return run.finish();
}

inline SuiteResult suite_duality(const VerifyOptions& o) {
    detail::SuiteRunner run("duality");
    for (std::uint64_t s = o.seed_begin; s <= o.seed_end; ++s) {
        for (OrderKind kind : {OrderKind::star, OrderKind::diamond}) {
            const std::string label = detail::seed_label(s) + " " + std::string(to_string(kind));
            run.guarded(label, [&] {
                const samples::Pair pr = samples::pair_for(kind, s, o.tol);
                const Matrix ap = pinv(pr.a, o.tol);
                const Matrix bp = pinv(pr.b, o.tol);
                const bool lhs = check(kind, pr.a, pr.b, o.tol).holds;
                const OrderKind dual = kind == OrderKind::star ? OrderKind::star : OrderKind::minus;
                run.expect(lhs == check(dual, ap, bp, o.tol).holds, label + ": dagger duality broken");
            });
        }
    }
    return run.finish();
}

/// Reflexivity, antisymmetry and transitivity on generated families.
inline SuiteResult suite_axioms(const VerifyOptions& o) {
    detail::SuiteRunner run("axioms");
    for (std::uint64_t s = o.seed_begin; s <= o.seed_end; ++s) {
        for (OrderKind kind : {OrderKind::star, OrderKind::minus, OrderKind::diamond, OrderKind::plus}) {
            const std::string label = detail::seed_label(s) + " " + std::string(to_string(kind));
            run.guarded(label, [&] {
                const auto [a, b, c] = samples::chain_for(kind, s, o.tol);
                run.expect(check(kind, a, a, o.tol, o.cfg).holds, label + ": reflexivity");
                const bool ab = check(kind, a, b, o.tol, o.cfg).holds;
                const bool ba = check(kind, b, a, o.tol, o.cfg).holds;
                run.expect(ab, label + ": generated A <= B");
                run.expect(!(ab && ba) || o.tol.equal(a, b), label + ": antisymmetry");
                if (kind != OrderKind::plus) {
                    run.expect(check(kind, b, c, o.tol).holds && check(kind, a, c, o.tol).holds,
                               label + ": transitivity");
                }
            });
        }
    }
    return run.finish();
}

inline SuiteResult suite_shorted(const VerifyOptions& o) {
    detail::SuiteRunner run("shorted");
    for (std::uint64_t s = o.seed_begin; s <= o.seed_end; ++s) {
        const std::string label = detail::seed_label(s);
        run.guarded(label, [&] {
            Rng rng(s * 3 + 2000);
            const Index m = rng.integer(1, 8);
            const Index n = rng.integer(1, 8);
            const Matrix a = rng.with_rank(m, n, rng.integer(0, std::min(m, n)));
            GenSpec spec;
            spec.kind = OrderKind::minus;
            spec.seed = rng.next_seed();
            const Frame f = frame_of(a, o.tol);
            spec.b22_rank = rng.integer(0, std::min(f.null_space.cols(), f.left_null_space.cols()));
            const Matrix b = generate(a, spec, o.tol);
            const SubspacePair pair = range_pair(f);
            const ShortedResult sr = shorted_operator(b, pair, o.tol);
            run.expect(sr.complementable, label + ": minus pair not complementable");
            run.expect((sr.shorted - a).norm() <= 1e-8 * (1.0 + a.norm()), label + ": shorted != A");
            run.expect(sr.formula_gap <= 1e-9 * (1.0 + b.norm()), label + ": shorted formulas disagree");
            run.expect(minus_routes(a, b, o.tol).holds, label + ": converse");

            // PSD with an invertible complementary block: classical Schur complement
            const Index np = rng.integer(2, 6);
            const Index k = rng.integer(1, np - 1);
            const Matrix psd = rng.psd(np, np);
            const Matrix id = Matrix::Identity(np, np);
            const SubspacePair sp{id.leftCols(k), id.leftCols(k)};
            const Matrix bb = psd.topLeftCorner(k, k);
            const Matrix cc = psd.topRightCorner(k, np - k);
            const Matrix dd = psd.bottomLeftCorner(np - k, k);
            const Matrix ee = psd.bottomRightCorner(np - k, np - k);
            Matrix schur = Matrix::Zero(np, np);
            schur.topLeftCorner(k, k) = bb - cc * ee.inverse() * dd;
            run.expect((shorted_operator(psd, sp, o.tol).shorted - schur).norm() <= 1e-9 * (1.0 + psd.norm()),
                       label + ": Schur complement");
        });
        run.guarded(label + " diamond", [&] {
            const samples::Pair pr = samples::pair_for(OrderKind::diamond, s, o.tol);
            bool via = false;
            try {
                via = diamond_via_shorted(pr.a, pr.b, o.tol).holds;
            } catch (const NotComplementable&) {
                return;
            }
            run.expect(via == check(OrderKind::diamond, pr.a, pr.b, o.tol).holds,
                       label + " (" + pr.mode + "): shorted diamond criterion disagrees");
        });
    }
    return run.finish();
}

inline SuiteResult suite_means(const VerifyOptions& o) {
    detail::SuiteRunner run("means");
    for (std::uint64_t s = o.seed_begin; s <= o.seed_end; ++s) {
        const std::string label = detail::seed_label(s);
        run.guarded(label, [&] {
            Rng rng(s * 5 + 3000);
            const Index n = rng.integer(1, 6);
            const PsdMatrix b(rng.psd(n, n), o.tol);
            const PsdMatrix c(rng.psd(n, n), o.tol);
            const Matrix x = geometric_mean(b, c, o.tol).value;
            const Matrix y = geometric_mean(c, b, o.tol).value;
            run.expect((x - y).norm() <= 1e-8, label + ": symmetry");
            run.expect((x * b.matrix().inverse() * x - c.matrix()).norm() <= 1e-8 * (1.0 + c.matrix().norm()),
                       label + ": X B^-1 X == C");
            const double alpha = rng.uniform(0.1, 10.0);
            const Matrix scaled =
                geometric_mean(PsdMatrix(alpha * b.matrix(), o.tol), PsdMatrix(alpha * c.matrix(), o.tol), o.tol).value;
            run.expect((scaled - alpha * x).norm() <= 1e-8 * (1.0 + alpha * x.norm()), label + ": homogeneity");

            // X + Delta with Delta PSD nonzero is never admissible
            const Matrix v = rng.gaussian(n, 1);
            const Matrix delta = 1e-6 * v * v.adjoint() / v.squaredNorm();
            const Matrix xd = x + delta;
            const Matrix schur = hermitian_part(c.matrix() - xd * b.matrix().inverse() * xd);
            run.expect(min_eigenvalue(schur) < 0.0, label + ": maximality");

            // T = B^{-1} H with H Hermitian makes B T Hermitian
            const Matrix t = b.matrix().inverse() * hermitian_part(rng.gaussian(n, n));
            const PsdMatrix cc(rng.psd(n, rng.integer(0, n)), o.tol);
            const RiccatiResult ric = riccati_solve(b, t, cc, o.tol);
            run.expect(ric.residual <= 1e-7 * (1.0 + cc.matrix().norm()), label + ": Riccati residual");
        });
    }
    return run.finish();
}

inline SuiteResult suite_psd_diamond(const VerifyOptions& o) {
    detail::SuiteRunner run("psd_diamond");
    for (std::uint64_t s = o.seed_begin; s <= o.seed_end; ++s) {
        const std::string label = detail::seed_label(s);
        run.guarded(label, [&] {
            Rng rng(s * 7 + 4000);
            const Index r = rng.integer(1, 4);
            const Index p = rng.integer(1, 4);
            const PsdMatrix a(rng.psd(r, r), o.tol);
            const Matrix y = rng.gaussian(p, r);
            const PsdMatrix b22(rng.psd(p, rng.integer(0, p)), o.tol);
            const Matrix u = rng.unitary(r + p);
            const DiamondPsdResult g0 = gen_diamond_psd(a, y, b22, o.tol);
            const Matrix aa = u * g0.a * u.adjoint();
            const Matrix bb = u * g0.b * u.adjoint();
            const OrderReport rep = diamond_routes(aa, bb, o.tol);
            run.expect(rep.holds && rep.routes_agree(), label + ": diamond routes");
            run.expect(is_psd(bb, o.tol), label + ": B not PSD");
            const Matrix c = y.adjoint() * b22.matrix() * y;
            run.expect(g0.riccati_residual <= 1e-7 * (1.0 + c.norm()), label + ": Riccati residual");
            const DiamondPsdParameters ex = extract_diamond_psd(aa, bb, o.tol);
            const DiamondPsdResult g1 = gen_diamond_psd(aa, ex.y, PsdMatrix(ex.b22, o.tol), o.tol);
            run.expect((g1.b - bb).norm() <= 1e-7, label + ": extraction round trip");
        });
    }
    return run.finish();
}

/// Generators land in their order with every route agreeing.
inline SuiteResult suite_generators(const VerifyOptions& o) {
    detail::SuiteRunner run("generators");
    for (std::uint64_t s = o.seed_begin; s <= o.seed_end; ++s) {
        for (OrderKind kind : {OrderKind::left_star, OrderKind::right_star, OrderKind::star, OrderKind::minus,
                               OrderKind::diamond, OrderKind::plus}) {
            const std::string label = detail::seed_label(s) + " " + std::string(to_string(kind));
            run.guarded(label, [&] {
                const samples::Pair pr = samples::pair_for(kind, 2 * s, o.tol);
                bool ok = check(kind, pr.a, pr.b, o.tol, o.cfg).holds;
                if (kind == OrderKind::star) ok = ok && star_routes(pr.a, pr.b, o.tol).routes_agree();
                if (kind == OrderKind::minus) {
                    ok = ok && minus_routes(pr.a, pr.b, o.tol).routes_agree();
                    const MinusParameters mp = extract_minus_parameters(pr.a, pr.b, o.tol);
                    ok = ok && o.tol.equal(gen_minus(pr.a, mp.x, mp.y, mp.b22, o.tol), pr.b);
                }
                if (kind == OrderKind::diamond) ok = ok && diamond_routes(pr.a, pr.b, o.tol).routes_agree();
                run.expect(ok, label + ": generator round trip");
            });
        }
    }
    return run.finish();
}

/// Projections, products of projections and partial isometries.
inline SuiteResult suite_structure(const VerifyOptions& o) {
    detail::SuiteRunner run("structure");
    const Tolerance& t = o.tol;
    for (std::uint64_t s = o.seed_begin; s <= o.seed_end; ++s) {
        const std::string label = detail::seed_label(s);
        run.guarded(label + " projections", [&] {
            const auto [p, p2] = samples::orth_projection_pair(s);
            const bool ref = check(OrderKind::loewner, p, p2, t).holds;
            bool same = true;
            for (OrderKind k : {OrderKind::star, OrderKind::minus, OrderKind::diamond, OrderKind::plus,
                                OrderKind::space})
                same = same && check(k, p, p2, t, o.cfg).holds == ref;
            run.expect(same, label + ": orders differ on orthogonal projections");
        });
        run.guarded(label + " oblique projections", [&] {
            Rng rng(s * 43 + 9);
            const Index n = rng.integer(1, 6);
            const samples::ProjectionFrame pf = samples::projection_frame(rng, n, rng.integer(0, n));
            const Matrix q2 = pf.full();
            const Matrix q = s % 2 == 0 ? pf.embed(rng.projection(pf.k, rng.integer(0, pf.k))) : rng.projection(n, rng.integer(0, n));
            const bool minus = check(OrderKind::minus, q, q2, t).holds;
            const bool space = check(OrderKind::space, q, q2, t).holds;
            const bool loew = check(OrderKind::loewner, proj_range(q, t), proj_range(q2, t), t).holds &&
                              check(OrderKind::loewner, proj_range(q.adjoint(), t), proj_range(q2.adjoint(), t), t).holds;
            run.expect(minus == space && space == loew, label + ": projection lemma");
        });
        run.guarded(label + " partial isometries", [&] {
            const auto [f, g] = samples::partial_isometry_pair(s);
            const IsometryVerdicts v = isometry_order_coincidence(f, g, t, o.cfg);
            run.expect(s % 2 != 0 || (v.star && v.plus), label + ": nested partial isometries not ordered");
        });
        run.guarded(label + " PP", [&] {
            Rng rng(s * 47 + 13);
            const Index n = rng.integer(1, 6);
            const Matrix t2 = rng.orth_projection(n, rng.integer(0, n)) * rng.orth_projection(n, rng.integer(0, n));
            Matrix t1;
            if (s % 2 == 0) {
                const Matrix rb = range_basis(t2, t);
                const Matrix cb = range_basis(t2.adjoint(), t);
                const Matrix pa = rb * rng.orth_projection(rb.cols(), rng.integer(0, rb.cols())) * rb.adjoint();
                const Matrix pb = cb * rng.orth_projection(cb.cols(), rng.integer(0, cb.cols())) * cb.adjoint();
                t1 = pa * pb;
            } else {
                t1 = rng.orth_projection(n, rng.integer(0, n)) * rng.orth_projection(n, rng.integer(0, n));
            }
            const PPDiamond pd = pp_diamond(t1, t2, t);
            const bool projections = check(OrderKind::loewner, proj_range(t1, t), proj_range(t2, t), t).holds &&
                                     check(OrderKind::loewner, proj_range(t1.adjoint(), t), proj_range(t2.adjoint(), t), t).holds;
            run.expect(pd.diamond == projections, label + ": PP range projections");
        });
        run.guarded(label + " QQ", [&] {
            const samples::QQCase c = samples::qq_case(s);
            const Matrix t2 = c.ep * c.fp;
            const Matrix t1 = c.e * c.f;
            const QQPlusWitness w = qq_minus_to_plus(c.e, c.f, c.ep, c.fp, t);
            run.expect(check(OrderKind::plus, t1, t2, t, o.cfg).holds && w.residual <= t.bound(t1.norm(), t1.norm()),
                       label + ": minus factors give a plus pair");
            const std::optional<SandwichWitness> sw = find_sandwich_witness(t1, t2, t, o.cfg);
            if (!sw) {
                run.fail(label + ": no sandwich witness for a QQ plus pair");
                return;
            }
            const QQFactorization fac = qq_plus_to_minus(t1, t2, c.ep, c.fp, sw->q_tilde, sw->q, t);
            run.expect(t.equal(fac.e * fac.f, t1), label + ": plus pair gives minus factors");
        });
        run.guarded(label + " intervals", [&] {
            Rng rng(s * 59 + 21);
            const Index n = rng.integer(1, 5);
            const Matrix zero = Matrix::Zero(n, n);
            const Matrix id = Matrix::Identity(n, n);
            const Matrix p = rng.orth_projection(n, rng.integer(0, n));
            bool ok = true;
            for (OrderKind k : all_order_kinds) ok = ok && check(k, zero, p, t, o.cfg).holds && check(k, p, id, t, o.cfg).holds;
            const Matrix q = rng.projection(n, rng.integer(0, n));
            ok = ok && check(OrderKind::minus, zero, q, t).holds && check(OrderKind::minus, q, id, t).holds;
            const Matrix pp = rng.orth_projection(n, rng.integer(0, n)) * rng.orth_projection(n, rng.integer(0, n));
            ok = ok && check(OrderKind::diamond, zero, pp, t).holds && check(OrderKind::diamond, pp, id, t).holds;
            const Matrix qq = rng.projection(n, rng.integer(0, n)) * rng.projection(n, rng.integer(0, n));
            ok = ok && check(OrderKind::plus, zero, qq, t, o.cfg).holds && check(OrderKind::plus, qq, id, t, o.cfg).holds;
            run.expect(ok, label + ": interval membership");
        });
    }
    return run.finish();
}

/// Polar-factor implications on star-generated pairs, rotated examples of the
/// plus construction, and unrelated pairs.
inline SuiteResult suite_polar(const VerifyOptions& o) {
    detail::SuiteRunner run("polar");
    for (std::uint64_t s = o.seed_begin; s <= o.seed_end; ++s) {
        const std::string label = detail::seed_label(s);
        run.guarded(label, [&] {
            Rng rng(s * 61 + 23);
            Matrix a, b;
            switch (s % 3) {
                case 0: {
                    const samples::Pair pr = samples::pair_for(OrderKind::star, 2 * s, o.tol);
                    a = pr.a;
                    b = pr.b;
                    break;
                }
                case 1: {
                    // alpha F <= (alpha P_F + beta (I - P_F)) G, rotated
                    const double h = std::sqrt(0.5);
                    Matrix f(2, 2), g(2, 2), pf(2, 2);
                    f << h, 0, h, 0;
                    g << 0, 1, 1, 0;
                    pf << 0.5, 0.5, 0.5, 0.5;
                    const double alpha = rng.uniform(0.5, 2.0);
                    const double beta = rng.uniform(0.5, 2.0);
                    const Matrix u = rng.unitary(2);
                    const Matrix w = rng.unitary(2);
                    a = u * (alpha * f) * w.adjoint();
                    b = u * (alpha * pf + beta * (Matrix::Identity(2, 2) - pf)) * g * w.adjoint();
                    break;
                }
                default: {
                    const Index n = rng.integer(1, 5);
                    a = rng.with_rank(n, n, rng.integer(0, n));
                    b = rng.gaussian(n, n);
                    break;
                }
            }
            const PolarTransferReport d = polar_order_transfer(a, b, OrderKind::diamond, o.tol, o.cfg);
            const PolarTransferReport p = polar_order_transfer(a, b, OrderKind::plus, o.tol, o.cfg);
            partial_converse_modulus(a, b, o.tol);
            run.expect(s % 3 != 1 || (p.hyp_modulus && p.hyp_isometry && p.conclusion), label + ": plus construction");
            run.expect(s % 3 != 0 || (d.hyp_modulus && d.hyp_isometry && d.conclusion), label + ": star pair");
        });
    }
    return run.finish();
}

inline SuiteResult suite_reweight(const VerifyOptions& o) {
    detail::SuiteRunner run("reweight");
    for (std::uint64_t s = o.seed_begin; s <= o.seed_end; ++s) {
        const std::string label = detail::seed_label(s);
        run.guarded(label, [&] {
            const samples::Pair pr = samples::pair_for(OrderKind::plus, 2 * s, o.tol);
            const OrderReport rep = check(OrderKind::plus, pr.a, pr.b, o.tol, o.cfg);
            if (!rep.witnesses) {
                run.fail(label + ": no witness for a generated plus pair");
                return;
            }
            const ReweightReport rw = reweight_to_diamond(pr.a, pr.b, rep.witnesses->q_tilde, rep.witnesses->q, o.tol);
            run.expect(rw.diamond_weighted, label + ": weighted diamond");
        });
    }
    return run.finish();
}

inline SuiteResult suite_hasse(const VerifyOptions& o) {
    detail::SuiteRunner run("hasse");
    for (std::uint64_t s = o.seed_begin; s <= o.seed_end; ++s) {
        const std::string label = detail::seed_label(s);
        run.guarded(label, [&] {
            Rng rng(s * 67 + 29);
            const std::size_t n = static_cast<std::size_t>(rng.integer(0, 12));
            BoolMatrix rel(n, std::vector<bool>(n, false));
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = i + 1; j < n; ++j) rel[i][j] = rng.coin(0.3);
            BoolMatrix from_covers(n, std::vector<bool>(n, false));
            for (const auto& [i, j] : transitive_reduction(rel)) from_covers[i][j] = true;
            run.expect(transitive_closure(from_covers) == transitive_closure(rel), label + ": reduction closure");

            const Index dim = 3;
            std::vector<std::pair<std::string, Matrix>> items;
            const Matrix u = rng.unitary(dim);
            for (Index k = 0; k <= dim; ++k) items.emplace_back("P" + std::to_string(k), u.leftCols(k) * u.leftCols(k).adjoint());
            const std::string first = to_dot(build_hasse(items, OrderKind::star, o.tol, o.cfg));
            const std::string second = to_dot(build_hasse(items, OrderKind::star, o.tol, o.cfg));
            run.expect(first == second, label + ": DOT determinism");
        });
    }
    return run.finish();
}

struct SuiteEntry {
    const char* name;
    SuiteResult (*run)(const VerifyOptions&);
};

inline const std::vector<SuiteEntry>& all_suites() {
    static const std::vector<SuiteEntry> suites = {
        {"linalg", suite_linalg},       {"routes", suite_routes},         {"chain", suite_chain},
        {"duality", suite_duality},     {"axioms", suite_axioms},         {"shorted", suite_shorted},
        {"means", suite_means},         {"psd_diamond", suite_psd_diamond}, {"generators", suite_generators},
        {"structure", suite_structure}, {"polar", suite_polar},           {"reweight", suite_reweight},
        {"hasse", suite_hasse},
    };
    return suites;
}

/// Runs one named suite or, for "all", every suite in order.
inline std::vector<SuiteResult> run_suites(const std::string& name, const VerifyOptions& o) {
    if (o.seed_end < o.seed_begin) throw InvalidTolerance("empty seed range");
    std::vector<SuiteResult> out;
    for (const SuiteEntry& e : all_suites()) {
        if (name == "all" || name == e.name) out.push_back(e.run(o));
    }
    if (out.empty()) throw Error("unknown suite: " + name);
    return out;
}

}  // namespace oporder
