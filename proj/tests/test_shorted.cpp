#include "support.hpp"

using namespace oporder;
using namespace oporder::testing;

namespace {

const Tolerance tol;

Matrix e1(Index n) { return Matrix::Identity(n, 1); }

TEST(Complementability, PsdIsWeaklyComplementable) {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        Rng rng(seed);
        const Matrix a = rng.psd(4, 1 + seed % 4);
        const Matrix s = rng.unitary(4).leftCols(2);
        EXPECT_TRUE(complementability(a, {s, s}, tol).weakly) << "seed " << seed;
    }
}

TEST(Complementability, InvertibleCornerIsComplementable) {
    const Matrix a = Rng(2).well_conditioned(3);
    const Complementability c = complementability(a, {e1(3), e1(3)}, tol);
    ASSERT_EQ(qr_rank(a.bottomRightCorner(2, 2)), 2);
    EXPECT_TRUE(c.complementable);
    EXPECT_TRUE(c.weakly);
}

TEST(Complementability, NilpotentFails) {
    const Complementability c = complementability(real_matrix({{0, 1}, {0, 0}}), {e1(2), e1(2)}, tol);
    EXPECT_FALSE(c.complementable);
    EXPECT_FALSE(c.weakly);
    EXPECT_THROW(shorted_operator(real_matrix({{0, 1}, {0, 0}}), {e1(2), e1(2)}, tol), NotWeaklyComplementable);
}

TEST(Complementability, RejectsNonOrthonormalBasis) {
    EXPECT_THROW(complementability(Matrix::Identity(2, 2), {2.0 * e1(2), e1(2)}, tol), BasisNotOrthonormal);
}

TEST(Shorted, BlockDiagonal) {
    const Matrix a = diag({3.0, 5.0, 7.0});
    const ShortedResult r = shorted_operator(a, {e1(3), e1(3)}, tol);
    EXPECT_TRUE(r.complementable);
    EXPECT_LE((r.shorted - diag({3.0, 0.0, 0.0})).norm(), 1e-14);
}

TEST(Shorted, SchurComplementOracle) {
    const ShortedResult r = shorted_operator(real_matrix({{2, 1}, {1, 1}}), {e1(2), e1(2)}, tol);
    EXPECT_LE((r.shorted - diag({1.0, 0.0})).norm(), 1e-12);

    for (std::uint64_t seed = 0; seed < 30; ++seed) {
        Rng rng(seed);
        const Matrix a = rng.psd(5, 5);
        const Matrix u = rng.unitary(5);
        const Matrix s = u.leftCols(2);
        const Matrix sp = u.rightCols(3);
        // classical formula b - c e^{-1} d in the basis [S S⊥]
        const Matrix b = s.adjoint() * a * s;
        const Matrix c = s.adjoint() * a * sp;
        const Matrix e = sp.adjoint() * a * sp;
        const Matrix expected = s * (b - c * e.inverse() * c.adjoint()) * s.adjoint();
        const ShortedResult r = shorted_operator(a, {s, s}, tol);
        EXPECT_LE((r.shorted - expected).norm(), 1e-9) << "seed " << seed;
    }
}

TEST(Shorted, MinusGeneratedPairRecoversA) {
    for (std::uint64_t seed = 0; seed < 30; ++seed) {
        const Matrix a = random_rank(seed, 5, 4, 2);
        const Matrix b = generate(a, {OrderKind::minus, seed, 2, 1.0}, tol);
        const Frame f = frame_of(a, tol);
        const ShortedResult r = shorted_operator(b, range_pair(f), tol);
        EXPECT_TRUE(r.complementable) << "seed " << seed;
        EXPECT_LE((r.shorted - a).norm(), 1e-8 * (1 + a.norm())) << "seed " << seed;
    }
}

TEST(Shorted, MapsIntoTAndVanishesOnSPerp) {
    Rng rng(3);
    const Matrix a = rng.gaussian(4, 5);
    const Matrix s = rng.unitary(5).leftCols(2);
    // dim S⊥ = dim T⊥ = 3, so the complementary block is generically invertible
    const Matrix t = rng.unitary(4).leftCols(1);
    const ShortedResult r = shorted_operator(a, {s, t}, tol);
    ASSERT_TRUE(r.complementable);
    const Matrix sp = Matrix::Identity(5, 5) - s * s.adjoint();
    EXPECT_LE((r.shorted * sp).norm(), 1e-10);
    EXPECT_LE(((Matrix::Identity(4, 4) - t * t.adjoint()) * r.shorted).norm(), 1e-10);
    EXPECT_LE(r.formula_gap, 1e-9);
}

TEST(DiamondViaShorted, Examples) {
    EXPECT_TRUE(diamond_via_shorted(remark_a(), remark_b(), tol).holds);

    const Matrix a = random_rank(1, 4, 4, 2);
    const DiamondShortedResult self = diamond_via_shorted(a, a, tol);
    EXPECT_TRUE(self.holds);
    EXPECT_LE(self.shorted.norm(), 1e-12);

    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        Rng rng(seed);
        const PsdMatrix core(rng.psd(2, 2), tol);
        const PsdMatrix b22(rng.psd(3, 1 + seed % 3), tol);
        const DiamondPsdResult g = gen_diamond_psd(core, rng.gaussian(3, 2), b22, tol);
        EXPECT_TRUE(diamond_via_shorted(g.a, g.b, tol).holds) << "seed " << seed;
    }
}

TEST(DiamondViaShorted, AgreesWithDefinition) {
    for (std::uint64_t seed = 0; seed < 40; ++seed) {
        const samples::Pair p = samples::pair_for(OrderKind::diamond, seed, tol);
        bool via = false;
        try {
            via = diamond_via_shorted(p.a, p.b, tol).holds;
        } catch (const NotComplementable&) {
            via = false;
        }
        EXPECT_EQ(via, diamond_oracle(p.a, p.b)) << "seed " << seed;
    }
}

}  // namespace
