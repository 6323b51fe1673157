#include <functional>

#include "support.hpp"

using namespace oporder;
using namespace oporder::testing;

namespace {

const Tolerance tol;

// Reachability by depth-first search from every node.
BoolMatrix dfs_closure(const BoolMatrix& rel) {
    const std::size_t n = rel.size();
    BoolMatrix out(n, std::vector<bool>(n, false));
    for (std::size_t s = 0; s < n; ++s) {
        std::vector<std::size_t> stack{s};
        out[s][s] = true;
        while (!stack.empty()) {
            const std::size_t v = stack.back();
            stack.pop_back();
            for (std::size_t w = 0; w < n; ++w)
                if (rel[v][w] && !out[s][w]) {
                    out[s][w] = true;
                    stack.push_back(w);
                }
        }
    }
    return out;
}

TEST(Closure, MatchesDfsOnRandomDags) {
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
        Rng rng(seed);
        const std::size_t n = static_cast<std::size_t>(rng.integer(0, 12));
        BoolMatrix rel(n, std::vector<bool>(n, false));
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j) rel[i][j] = rng.coin(0.3);
        EXPECT_EQ(transitive_closure(rel), dfs_closure(rel)) << "seed " << seed;

        BoolMatrix covers(n, std::vector<bool>(n, false));
        for (const auto& [i, j] : transitive_reduction(rel)) covers[i][j] = true;
        EXPECT_EQ(dfs_closure(covers), dfs_closure(rel)) << "seed " << seed;
        // minimality: dropping any cover changes the closure
        for (const auto& [i, j] : transitive_reduction(rel)) {
            BoolMatrix fewer = covers;
            fewer[i][j] = false;
            EXPECT_NE(dfs_closure(fewer), dfs_closure(rel));
        }
    }
}

TEST(BuildHasse, ProjectionChain) {
    Rng rng(1);
    const Matrix u = rng.unitary(3);
    const Matrix p = u.leftCols(1) * u.leftCols(1).adjoint();
    const HasseGraph g = build_hasse({{"I", Matrix::Identity(3, 3)}, {"P", p}, {"Z", Matrix::Zero(3, 3)}},
                                     OrderKind::star, tol);
    ASSERT_EQ(g.covers.size(), 2u);
    const std::string dot = to_dot(g);
    EXPECT_NE(dot.find("\"Z\" -> \"P\";"), std::string::npos);
    EXPECT_NE(dot.find("\"P\" -> \"I\";"), std::string::npos);
    EXPECT_EQ(dot.find("\"Z\" -> \"I\""), std::string::npos);
}

TEST(BuildHasse, ExamplePair) {
    const std::vector<std::pair<std::string, Matrix>> items = {{"F", example_f()}, {"G", example_g()}};
    const std::string plus = to_dot(build_hasse(items, OrderKind::plus, tol));
    EXPECT_EQ(plus, "digraph {\n  order=plus;\n  \"F\";\n  \"G\";\n  \"F\" -> \"G\";\n}\n");
    const std::string diamond = to_dot(build_hasse(items, OrderKind::diamond, tol));
    EXPECT_EQ(diamond, "digraph {\n  order=diamond;\n  \"F\";\n  \"G\";\n}\n");
}

TEST(BuildHasse, GeneratedMinusChain) {
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
        const auto abc = samples::chain_for(OrderKind::minus, seed, tol);
        const HasseGraph g = build_hasse({{"A", abc[0]}, {"B", abc[1]}, {"C", abc[2]}}, OrderKind::minus, tol);
        const std::string dot = to_dot(g);
        if (tol.equal(abc[1], abc[2])) {
            // B had no room to grow: C is merged into B
            EXPECT_NE(dot.find("\"B\" [label=\"B = C\"]"), std::string::npos) << dot;
            EXPECT_NE(dot.find("\"A\" -> \"B\";"), std::string::npos) << dot;
            continue;
        }
        EXPECT_NE(dot.find("\"A\" -> \"B\";"), std::string::npos) << dot;
        EXPECT_NE(dot.find("\"B\" -> \"C\";"), std::string::npos) << dot;
        EXPECT_EQ(dot.find("\"A\" -> \"C\""), std::string::npos) << dot;
    }
}

TEST(BuildHasse, MergesEqualMatrices) {
    const HasseGraph g = build_hasse({{"X", example_g()}, {"Y", example_g()}}, OrderKind::star, tol);
    ASSERT_EQ(g.node_ids.size(), 1u);
    EXPECT_EQ(to_dot(g), "digraph {\n  order=star;\n  \"X\" [label=\"X = Y\"];\n}\n");
}

TEST(BuildHasse, Errors) {
    EXPECT_THROW(build_hasse({{"A", Matrix::Zero(2, 2)}, {"B", Matrix::Zero(2, 3)}}, OrderKind::star, tol), ShapeMismatch);
    EXPECT_THROW(build_hasse({{"A", Matrix::Zero(2, 2)}, {"A", Matrix::Identity(2, 2)}}, OrderKind::star, tol), Error);
    // the space pre-order is not antisymmetric: distinct invertible matrices relate both ways
    EXPECT_THROW(build_hasse({{"A", Matrix::Identity(2, 2)}, {"B", 2.0 * Matrix::Identity(2, 2)}}, OrderKind::space, tol),
                 AntisymmetryViolation);
}

TEST(ToDot, EmptyAndDashed) {
    EXPECT_EQ(to_dot(build_hasse({}, OrderKind::star, tol)), "digraph {\n  order=star;\n}\n");
    HasseGraph g;
    g.kind = OrderKind::plus;
    g.node_ids = {"b", "a"};
    g.aliases = {{}, {}};
    g.covers = {{"b", "a", false}, {"a", "b", true}};
    EXPECT_EQ(to_dot(g), "digraph {\n  order=plus;\n  \"a\";\n  \"b\";\n  \"a\" -> \"b\";\n  \"b\" -> \"a\" [style=dashed];\n}\n");
}

TEST(ToDot, DeterministicBytes) {
    Rng rng(6);
    std::vector<std::pair<std::string, Matrix>> items;
    const Matrix u = rng.unitary(4);
    for (Index k = 4; k >= 0; --k) items.emplace_back("P" + std::to_string(k), u.leftCols(k) * u.leftCols(k).adjoint());
    const std::string first = to_dot(build_hasse(items, OrderKind::minus, tol));
    std::reverse(items.begin(), items.end());
    EXPECT_EQ(to_dot(build_hasse(items, OrderKind::minus, tol)), first);
}

}  // namespace
