#include "support.hpp"

using namespace oporder;
using namespace oporder::testing;

namespace {

const Tolerance tol;

TEST(PPMembership, Projections) {
    Rng rng(1);
    for (Index k = 0; k <= 4; ++k) EXPECT_TRUE(pp_membership(rng.orth_projection(4, k), tol));
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        const Matrix t = random_rank(seed, 4, 4, 2);
        // independent construction of P_T P_{T*} from QR bases
        Eigen::HouseholderQR<Matrix> qa(t);
        Eigen::HouseholderQR<Matrix> qb(Matrix(t.adjoint()));
        const Matrix ua = (qa.householderQ() * Matrix::Identity(4, 4)).leftCols(2);
        const Matrix ub = (qb.householderQ() * Matrix::Identity(4, 4)).leftCols(2);
        EXPECT_TRUE(pp_membership(ua * ua.adjoint() * ub * ub.adjoint(), tol)) << "seed " << seed;
    }
}

TEST(PPMembership, ExamplePartialIsometryIsNotPP) {
    // P_F P_{F*} = [[1/2, 0], [1/2, 0]] differs from F
    const Matrix f = example_f();
    const Matrix prod = proj_range(f, tol) * proj_range(f.adjoint(), tol);
    EXPECT_LE((prod - real_matrix({{0.5, 0.0}, {0.5, 0.0}})).norm(), 1e-14);
    EXPECT_GT((prod - f).norm(), 0.1);
    EXPECT_FALSE(pp_membership(f, tol));
    EXPECT_FALSE(pp_membership(Matrix::Zero(2, 3), tol));
}

TEST(PPDiamond, Examples) {
    Rng rng(2);
    const Matrix t = rng.orth_projection(4, 2) * rng.orth_projection(4, 3);
    const PPDiamond same = pp_diamond(t, t, tol);
    EXPECT_TRUE(same.diamond && same.space);

    const Matrix u = rng.unitary(4);
    const PPDiamond nested = pp_diamond(u.leftCols(1) * u.leftCols(1).adjoint(), u.leftCols(3) * u.leftCols(3).adjoint(), tol);
    EXPECT_TRUE(nested.diamond && nested.space);

    const Matrix t1 = u.col(3) * u.col(3).adjoint();
    const PPDiamond apart = pp_diamond(t1, u.leftCols(3) * u.leftCols(3).adjoint(), tol);
    EXPECT_FALSE(apart.diamond);
    EXPECT_FALSE(apart.space);

    EXPECT_THROW(pp_diamond(example_f(), example_f(), tol), NotPP);
}

TEST(QQ, ReflexiveFactorization) {
    Rng rng(3);
    const samples::ProjectionFrame pe = samples::projection_frame(rng, 4, 2);
    const samples::ProjectionFrame pf = samples::projection_frame(rng, 4, 2);
    const Matrix ep = pe.full();
    const Matrix fp = pf.full();
    const Matrix t = ep * fp;
    const auto w = find_sandwich_witness(t, t, tol, {});
    ASSERT_TRUE(w.has_value());
    const QQFactorization fac = qq_plus_to_minus(t, t, ep, fp, w->q_tilde, w->q, tol);
    EXPECT_LE((fac.e * fac.f - t).norm(), 1e-9);
    EXPECT_TRUE(check(OrderKind::minus, fac.e, ep, tol).holds);
    EXPECT_TRUE(check(OrderKind::minus, fac.f, fp, tol).holds);
}

TEST(QQ, BothDirectionsOnRandomProducts) {
    for (std::uint64_t seed = 0; seed < 30; ++seed) {
        const samples::QQCase c = samples::qq_case(seed);
        const Matrix t2 = c.ep * c.fp;
        const Matrix t1 = c.e * c.f;
        const QQPlusWitness w = qq_minus_to_plus(c.e, c.f, c.ep, c.fp, tol);
        EXPECT_LE((w.q_tilde * t2 * w.q - t1).norm(), 1e-9) << "seed " << seed;
        EXPECT_LE((w.q_tilde * w.q_tilde - w.q_tilde).norm(), 1e-9);
        EXPECT_LE((w.q * w.q - w.q).norm(), 1e-9);

        const auto sw = find_sandwich_witness(t1, t2, tol, {});
        ASSERT_TRUE(sw.has_value()) << "seed " << seed;
        const QQFactorization fac = qq_plus_to_minus(t1, t2, c.ep, c.fp, sw->q_tilde, sw->q, tol);
        EXPECT_LE((fac.e * fac.f - t1).norm(), 1e-8) << "seed " << seed;
        EXPECT_LE((fac.e * fac.e - fac.e).norm(), 1e-8);
        EXPECT_LE((fac.f * fac.f - fac.f).norm(), 1e-8);
        EXPECT_TRUE(minus_oracle(fac.e, c.ep)) << "seed " << seed;
        EXPECT_TRUE(minus_oracle(fac.f, c.fp)) << "seed " << seed;
    }
}

TEST(QQ, RejectsInvalidInput) {
    const Matrix id = Matrix::Identity(2, 2);
    EXPECT_THROW(qq_plus_to_minus(id, id, example_g(), id, id, id, tol), FactorizationInvalid);
    EXPECT_THROW(qq_minus_to_plus(id, id, diag({1.0, 0.0}), id, tol), FactorizationInvalid);
}

TEST(IsometryCoincidence, Examples) {
    const IsometryVerdicts fg = isometry_order_coincidence(example_f(), example_g(), tol);
    EXPECT_FALSE(fg.star);
    EXPECT_FALSE(fg.minus);
    EXPECT_FALSE(fg.diamond);
    EXPECT_TRUE(fg.plus);

    const IsometryVerdicts same = isometry_order_coincidence(example_g(), example_g(), tol);
    EXPECT_TRUE(same.star && same.minus && same.diamond && same.plus);

    const PolarParts pa = polar(remark_a(), tol);
    const PolarParts pb = polar(remark_b(), tol);
    EXPECT_FALSE(isometry_order_coincidence(pa.isometry, pb.isometry, tol).diamond);

    EXPECT_THROW(isometry_order_coincidence(remark_a(), example_g(), tol), NotPartialIsometry);
}

TEST(IsometryCoincidence, RandomPairs) {
    for (std::uint64_t seed = 0; seed < 40; ++seed) {
        const auto [f, g] = samples::partial_isometry_pair(seed);
        const IsometryVerdicts v = isometry_order_coincidence(f, g, tol);
        EXPECT_EQ(v.star, star_oracle(f, g)) << "seed " << seed;
        EXPECT_EQ(v.minus, v.star);
        EXPECT_EQ(v.diamond, v.star);
    }
}

TEST(PolarTransfer, RemarkPair) {
    const PolarTransferReport r = polar_order_transfer(remark_a(), remark_b(), OrderKind::diamond, tol);
    EXPECT_TRUE(r.conclusion);
    EXPECT_FALSE(r.hyp_isometry);
    EXPECT_FALSE(partial_converse_modulus(remark_a(), remark_b(), tol).has_value());
}

TEST(PolarTransfer, EqualArguments) {
    const Matrix a = random_rank(4, 3, 3, 2);
    for (OrderKind k : {OrderKind::diamond, OrderKind::plus}) {
        const PolarTransferReport r = polar_order_transfer(a, a, k, tol);
        EXPECT_TRUE(r.hyp_modulus && r.hyp_isometry && r.conclusion) << to_string(k);
    }
    EXPECT_EQ(partial_converse_modulus(a, a, tol), std::optional<bool>(true));
}

TEST(PolarTransfer, PlusConstruction) {
    // alpha F <= (alpha P_F + beta (I - P_F)) G: star-related moduli, plus-related isometries
    const Matrix pf = real_matrix({{0.5, 0.5}, {0.5, 0.5}});
    for (double alpha : {0.5, 1.0, 3.0})
        for (double beta : {0.25, 2.0}) {
            const Matrix a = alpha * example_f();
            const Matrix b = (alpha * pf + beta * (Matrix::Identity(2, 2) - pf)) * example_g();
            const PolarTransferReport r = polar_order_transfer(a, b, OrderKind::plus, tol);
            EXPECT_TRUE(r.hyp_modulus);
            EXPECT_TRUE(r.hyp_isometry);
            EXPECT_TRUE(r.conclusion);
        }
}

TEST(PolarTransfer, StarPairsSatisfyPartialConverse) {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const Matrix a = random_rank(seed, 4, 4, 2);
        const Matrix b = generate(a, {OrderKind::star, seed, 1, 1.0}, tol);
        EXPECT_EQ(partial_converse_modulus(a, b, tol), std::optional<bool>(true)) << "seed " << seed;
    }
}

TEST(Reweight, OrthogonalWitnessIsPlainDiamond) {
    const Matrix a = remark_a();
    const Matrix b = remark_b();
    const Matrix qt = proj_range(a, tol);
    const Matrix q = proj_range(a.adjoint(), tol);
    ASSERT_LE((qt * b * q - a).norm(), 1e-12);
    const ReweightReport r = reweight_to_diamond(a, b, qt, q, tol);
    EXPECT_LE((r.w_h - Matrix::Identity(2, 2)).norm(), 1e-12);
    EXPECT_LE((r.w_k - Matrix::Identity(2, 2)).norm(), 1e-12);
    EXPECT_TRUE(r.diamond_weighted);
}

TEST(Reweight, MinusWitnesses) {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const Matrix a = random_rank(seed, 4, 4, 2);
        const Matrix b = generate(a, {OrderKind::minus, seed, 2, 1.0}, tol);
        const OrderReport rep = check(OrderKind::plus, a, b, tol);
        ASSERT_TRUE(rep.witnesses.has_value());
        const ReweightReport r = reweight_to_diamond(a, b, rep.witnesses->q_tilde, rep.witnesses->q, tol);
        EXPECT_TRUE(r.diamond_weighted) << "seed " << seed;
        EXPECT_GE(r.cond_h, 1.0);
    }
}

TEST(Reweight, RejectsBadWitness) {
    EXPECT_THROW(reweight_to_diamond(example_f(), example_g(), Matrix::Identity(2, 2), Matrix::Identity(2, 2), tol),
                 WitnessInvalid);
}

}  // namespace
