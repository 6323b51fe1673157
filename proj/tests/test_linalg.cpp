#include "support.hpp"

using namespace oporder;
using namespace oporder::testing;

namespace {

const Tolerance tol;

TEST(Tolerance, RejectsNegativeFields) {
    Tolerance t;
    t.eq_abs = -1.0;
    EXPECT_THROW(t.validate(), InvalidTolerance);
    EXPECT_NO_THROW(Tolerance{}.validate());
}

TEST(Pinv, DiagonalCase) {
    EXPECT_TRUE(pinv(diag({2.0, 0.0}), tol).isApprox(diag({0.5, 0.0})));
}

TEST(Pinv, Identity) {
    const Matrix id = Matrix::Identity(4, 4);
    EXPECT_LE((pinv(id, tol) - id).norm(), 1e-14);
}

TEST(Pinv, RankOneSatisfiesPenrose) {
    const Matrix a = remark_a();
    const Matrix x = pinv(a, tol);
    EXPECT_LE((x - real_matrix({{0.5, 0.5}, {0.0, 0.0}})).norm(), 1e-14);
    EXPECT_LE(penrose_residual(a, x), 1e-14);
}

TEST(Pinv, RandomRectangularSatisfiesPenrose) {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const Matrix a = random_rank(seed, 6, 4, 1 + seed % 4);
        EXPECT_LE(penrose_residual(a, pinv(a, tol)), 1e-10) << "seed " << seed;
    }
}

TEST(Pinv, RejectsNonFinite) {
    Matrix a = Matrix::Identity(2, 2);
    a(0, 1) = std::nan("");
    EXPECT_THROW(pinv(a, tol), NonFinite);
}

TEST(ProjRange, RankOne) {
    EXPECT_LE((proj_range(remark_a(), tol) - real_matrix({{0.5, 0.5}, {0.5, 0.5}})).norm(), 1e-14);
}

TEST(ProjRange, ZeroAndFullRank) {
    EXPECT_LE(proj_range(Matrix::Zero(3, 2), tol).norm(), 0.0);
    const Matrix m = Rng(4).well_conditioned(3);
    ASSERT_EQ(qr_rank(m), 3);
    EXPECT_LE((proj_range(m, tol) - Matrix::Identity(3, 3)).norm(), 1e-12);
}

TEST(ProjRange, IsOrthogonalProjection) {
    const Matrix m = random_rank(9, 5, 7, 3);
    const Matrix p = proj_range(m, tol);
    EXPECT_LE((p * p - p).norm(), 1e-12);
    EXPECT_LE((p - p.adjoint()).norm(), 1e-12);
    EXPECT_LE((p * m - m).norm(), 1e-12);
}

TEST(RangeIncluded, Examples) {
    EXPECT_TRUE(range_included(remark_a(), remark_b(), tol));
    EXPECT_FALSE(range_included(Matrix::Identity(2, 2), remark_a(), tol));
    Rng rng(3);
    const Matrix b = rng.with_rank(5, 5, 2);
    EXPECT_TRUE(range_included(b * rng.gaussian(5, 3), b, tol));
    EXPECT_FALSE(range_included(rng.gaussian(5, 1), b, tol));
}

TEST(PsdSqrt, Examples) {
    EXPECT_LE((psd_sqrt(diag({4.0, 9.0}), tol) - diag({2.0, 3.0})).norm(), 1e-14);
    EXPECT_LE(psd_sqrt(Matrix::Zero(3, 3), tol).norm(), 0.0);
    const Matrix x = Rng(11).gaussian(4, 4);
    const Matrix g = x.adjoint() * x;
    const Matrix s = psd_sqrt(g, tol);
    EXPECT_LE((s * s - g).norm(), 1e-10 * g.norm());
    EXPECT_LE((s - s.adjoint()).norm(), 1e-12);
}

TEST(PsdSqrt, RejectsIndefinite) { EXPECT_THROW(psd_sqrt(diag({1.0, -1.0}), tol), NotPsd); }

TEST(Polar, RemarkMatrices) {
    const PolarParts pa = polar(remark_a(), tol);
    EXPECT_LE((pa.isometry - example_f()).norm(), 1e-14);
    EXPECT_LE((pa.modulus_star * pa.isometry - remark_a()).norm(), 1e-14);
    const PolarParts pb = polar(remark_b(), tol);
    EXPECT_LE((pb.modulus_star - 2.0 * Matrix::Identity(2, 2)).norm(), 1e-14);
    EXPECT_LE((pb.isometry - example_g()).norm(), 1e-14);
}

TEST(Polar, UnitaryAndRectangular) {
    const Matrix u = Rng(5).unitary(4);
    const PolarParts pu = polar(u, tol);
    EXPECT_LE((pu.modulus_star - Matrix::Identity(4, 4)).norm(), 1e-12);
    EXPECT_LE((pu.isometry - u).norm(), 1e-12);

    const Matrix t = random_rank(6, 5, 3, 2);
    const PolarParts pt = polar(t, tol);
    EXPECT_LE((pt.modulus_star * pt.isometry - t).norm(), 1e-12);
    const Matrix v = pt.isometry;
    EXPECT_LE((v * v.adjoint() * v - v).norm(), 1e-12);
    EXPECT_LE((v * v.adjoint() - proj_range(t, tol)).norm(), 1e-12);
}

TEST(BlockDecompose, CanonicalCoordinates) {
    const BlockDecomposition bd = block_decompose(diag({1.0, 0.0}), real_matrix({{1, 2}, {3, 4}}), tol);
    EXPECT_NEAR(std::abs(bd.a(0, 0)), 1.0, 1e-15);
    EXPECT_NEAR(std::abs(bd.b11(0, 0)), 1.0, 1e-15);
    EXPECT_NEAR(std::abs(bd.b12(0, 0)), 2.0, 1e-15);
    EXPECT_NEAR(std::abs(bd.b21(0, 0)), 3.0, 1e-15);
    EXPECT_NEAR(std::abs(bd.b22(0, 0)), 4.0, 1e-15);
    // the canonical basis is normalized to positive leading entries
    EXPECT_NEAR(bd.b12(0, 0).real(), 2.0, 1e-15);
}

TEST(BlockDecompose, SelfAndRoundTrip) {
    const Matrix a = random_rank(1, 5, 4, 2);
    const BlockDecomposition self = block_decompose(a, a, tol);
    EXPECT_LE((self.b11 - self.a).norm(), 1e-12);
    EXPECT_LE(self.b12.norm() + self.b21.norm() + self.b22.norm(), 1e-12);

    const Matrix b = Rng(2).gaussian(5, 4);
    const BlockDecomposition bd = block_decompose(a, b, tol);
    EXPECT_LE((bd.reassemble_b() - b).norm(), 1e-12);
    EXPECT_LE((bd.reassemble_a() - a).norm(), 1e-12);
    EXPECT_EQ(qr_rank(bd.a), 2);
}

TEST(BlockDecompose, ShapeMismatch) {
    EXPECT_THROW(block_decompose(Matrix::Zero(2, 3), Matrix::Zero(3, 2), tol), ShapeMismatch);
}

TEST(Classify, Examples) {
    const Matrix oblique = real_matrix({{1.0, 0.0}, {std::sqrt(2.0) - 1.0, 0.0}});
    const MatrixClass c = classify(oblique, tol);
    EXPECT_TRUE(c.is_projection);
    EXPECT_FALSE(c.is_orth_projection);
    EXPECT_TRUE(classify(example_f(), tol).is_partial_isometry);
    const MatrixClass id = classify(Matrix::Identity(3, 3), tol);
    EXPECT_TRUE(id.is_projection && id.is_orth_projection && id.is_partial_isometry && id.is_psd);
}

TEST(Frame, SubspacesAreOrthonormalAndComplementary) {
    const Matrix a = random_rank(8, 6, 5, 3);
    const Frame f = frame_of(a, tol);
    EXPECT_EQ(f.rank(), 3);
    EXPECT_LE((f.left().adjoint() * f.left() - Matrix::Identity(6, 6)).norm(), 1e-12);
    EXPECT_LE((f.right().adjoint() * f.right() - Matrix::Identity(5, 5)).norm(), 1e-12);
    EXPECT_LE((a * f.null_space).norm(), 1e-12);
    EXPECT_LE((f.left_null_space.adjoint() * a).norm(), 1e-12);
}

TEST(RankAtScale, IgnoresNoiseRelativeToScale) {
    const Matrix noise = 1e-14 * Rng(3).gaussian(3, 3);
    EXPECT_EQ(rank(noise, tol), 3);
    EXPECT_EQ(rank_at_scale(noise, 10.0, tol), 0);
}

TEST(ObliqueProjection, RangeAndKernel) {
    Rng rng(12);
    const Matrix r = rng.gaussian(4, 2);
    const Matrix k = rng.gaussian(4, 2);
    const Matrix p = oblique_projection(r, k);
    EXPECT_LE((p * p - p).norm(), 1e-10);
    EXPECT_LE((p * r - r).norm(), 1e-10);
    EXPECT_LE((p * k).norm(), 1e-10);
}

}  // namespace
