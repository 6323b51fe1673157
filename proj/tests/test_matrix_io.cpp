#include <limits>

#include "support.hpp"

using namespace oporder;
using namespace oporder::testing;

namespace {

TEST(MatrixIo, RoundTripIsBitExact) {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        Rng rng(seed);
        Matrix m = rng.gaussian(1 + seed % 4, 1 + seed % 3, std::pow(10.0, static_cast<double>(seed % 7) - 3.0));
        m(0, 0) = Complex(-0.0, 1e-300);
        const Matrix back = parse_matrix(serialize_matrix(m));
        ASSERT_EQ(back.rows(), m.rows());
        ASSERT_EQ(back.cols(), m.cols());
        for (Index i = 0; i < m.rows(); ++i)
            for (Index k = 0; k < m.cols(); ++k) {
                EXPECT_EQ(back(i, k).real(), m(i, k).real());
                EXPECT_EQ(back(i, k).imag(), m(i, k).imag());
                EXPECT_EQ(std::signbit(back(i, k).real()), std::signbit(m(i, k).real()));
            }
        EXPECT_EQ(serialize_matrix(back), serialize_matrix(m));
    }
}

TEST(MatrixIo, ExtremeValues) {
    Matrix m(1, 3);
    m << Complex(std::numeric_limits<double>::max(), std::numeric_limits<double>::denorm_min()),
        Complex(std::numeric_limits<double>::min(), -1.0 / 3.0), Complex(0.1, 0.2);
    const Matrix back = parse_matrix(serialize_matrix(m));
    EXPECT_EQ((back - m).cwiseAbs().maxCoeff(), 0.0);
}

TEST(MatrixIo, AcceptsBareReals) {
    const Matrix m = parse_matrix(R"({"rows": 1, "cols": 2, "data": [[1.5, [2, -1]]]})");
    EXPECT_EQ(m(0, 0), Complex(1.5, 0.0));
    EXPECT_EQ(m(0, 1), Complex(2.0, -1.0));
}

TEST(MatrixIo, EmptyMatrix) {
    const Matrix m = parse_matrix(serialize_matrix(Matrix(0, 3)));
    EXPECT_EQ(m.rows(), 0);
    EXPECT_EQ(m.cols(), 3);
}

TEST(MatrixIo, RejectsMalformedInput) {
    EXPECT_THROW(parse_matrix("not json"), ParseError);
    EXPECT_THROW(parse_matrix(R"({"rows": 1, "cols": 1})"), ParseError);
    EXPECT_THROW(parse_matrix(R"({"rows": 2, "cols": 1, "data": [[[1, 0]]]})"), ParseError);
    EXPECT_THROW(parse_matrix(R"({"rows": 1, "cols": 2, "data": [[[1, 0]]]})"), ParseError);
    EXPECT_THROW(parse_matrix(R"({"rows": 1, "cols": 1, "data": [[[1, 0, 0]]]})"), ParseError);
    EXPECT_THROW(parse_matrix(R"({"rows": 1, "cols": 1, "data": [[["a", 0]]]})"), ParseError);
    EXPECT_THROW(parse_matrix(R"({"rows": -1, "cols": 1, "data": []})"), ParseError);
}

TEST(MatrixIo, RefusesToSerializeNonFinite) {
    Matrix m = Matrix::Zero(1, 1);
    m(0, 0) = std::numeric_limits<double>::infinity();
    EXPECT_THROW(serialize_matrix(m), NonFinite);
}

}  // namespace
