#pragma once

// Finite order relations, transitive reduction and DOT output.

#include <algorithm>
#include <set>
#include <sstream>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "oporder/orders.hpp"

namespace oporder {

using BoolMatrix = std::vector<std::vector<bool>>;

/// Reflexive-transitive closure (Warshall).
inline BoolMatrix transitive_closure(BoolMatrix rel) {
    const std::size_t n = rel.size();
    for (std::size_t i = 0; i < n; ++i) rel[i][i] = true;
    for (std::size_t k = 0; k < n; ++k)
        for (std::size_t i = 0; i < n; ++i)
            if (rel[i][k])
                for (std::size_t j = 0; j < n; ++j)
                    if (rel[k][j]) rel[i][j] = true;
    return rel;
}

/// Cover pairs (i, j), i != j, of the closure of `rel` with no k strictly between.
/// The closure must be antisymmetric.
inline std::vector<std::pair<std::size_t, std::size_t>> transitive_reduction(const BoolMatrix& rel) {
    const BoolMatrix c = transitive_closure(rel);
    const std::size_t n = c.size();
    std::vector<std::pair<std::size_t, std::size_t>> covers;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            if (i == j || !c[i][j]) continue;
            bool direct = true;
            for (std::size_t k = 0; k < n && direct; ++k) {
                if (k != i && k != j && c[i][k] && c[k][j]) direct = false;
            }
            if (direct) covers.emplace_back(i, j);
        }
    }
    return covers;
}

struct HasseEdge {
    std::string from;
    std::string to;
    // false for plus pairs where the space pre-order holds but the witness search gave up
    bool certified = true;
};

struct HasseGraph {
    OrderKind kind = OrderKind::star;
    std::vector<std::string> node_ids;
    std::vector<std::vector<std::string>> aliases;  // labels merged into each node
    BoolMatrix adjacency;
    std::vector<HasseEdge> covers;
};

inline HasseGraph build_hasse(const std::vector<std::pair<std::string, Matrix>>& items, OrderKind kind,
                              const Tolerance& tol, const PlusSearchConfig& cfg = {}) {
    std::set<std::string> seen;
    for (const auto& [label, m] : items) {
        if (!seen.insert(label).second) throw Error("duplicate label: " + label);
        if (m.rows() != items.front().second.rows() || m.cols() != items.front().second.cols()) {
            throw ShapeMismatch("hasse: matrix '" + label + "' has shape " + shape_string(m) + ", expected " +
                                shape_string(items.front().second));
        }
    }

    HasseGraph g;
    g.kind = kind;
    std::vector<const Matrix*> nodes;
    for (const auto& [label, m] : items) {
        bool merged = false;
        for (std::size_t k = 0; k < nodes.size() && !merged; ++k) {
            if (tol.equal(*nodes[k], m)) {
                g.aliases[k].push_back(label);
                merged = true;
            }
        }
        if (!merged) {
            nodes.push_back(&m);
            g.node_ids.push_back(label);
            g.aliases.push_back({});
        }
    }

    const std::size_t n = nodes.size();
    g.adjacency.assign(n, std::vector<bool>(n, false));
    BoolMatrix uncertified(n, std::vector<bool>(n, false));
    for (std::size_t i = 0; i < n; ++i) {
        g.adjacency[i][i] = true;
        for (std::size_t j = 0; j < n; ++j) {
            if (i == j) continue;
            const OrderReport rep = check(kind, *nodes[i], *nodes[j], tol, cfg);
            g.adjacency[i][j] = rep.holds;
            uncertified[i][j] = rep.search_exhausted;
        }
    }
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            if (g.adjacency[i][j] && g.adjacency[j][i]) {
                throw AntisymmetryViolation("'" + g.node_ids[i] + "' and '" + g.node_ids[j] +
                                            "' are mutually related but not equal within tolerance");
            }

    const BoolMatrix closure = transitive_closure(g.adjacency);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            if (closure[i][j] && closure[j][i]) {
                throw AntisymmetryViolation("closure relates '" + g.node_ids[i] + "' and '" + g.node_ids[j] +
                                            "' both ways");
            }

    for (const auto& [i, j] : transitive_reduction(g.adjacency)) g.covers.push_back({g.node_ids[i], g.node_ids[j], true});
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (uncertified[i][j] && !closure[i][j]) g.covers.push_back({g.node_ids[i], g.node_ids[j], false});
    return g;
}

namespace detail {

inline std::string dot_quote(const std::string& s) {
    std::string out = "\"";
    for (char ch : s) {
        if (ch == '"' || ch == '\\') out += '\\';
        out += ch;
    }
    return out + "\"";
}

}  // namespace detail

/// Deterministic DOT text: nodes and edges sorted by label.
inline std::string to_dot(const HasseGraph& g) {
    std::ostringstream os;
    os << "digraph {\n  order=" << to_string(g.kind) << ";\n";
    std::vector<std::size_t> order(g.node_ids.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) { return g.node_ids[x] < g.node_ids[y]; });
    for (std::size_t i : order) {
        os << "  " << detail::dot_quote(g.node_ids[i]);
        if (!g.aliases[i].empty()) {
            std::vector<std::string> names = g.aliases[i];
            std::sort(names.begin(), names.end());
            std::string label = g.node_ids[i];
            for (const auto& a : names) label += " = " + a;
            os << " [label=" << detail::dot_quote(label) << "]";
        }
        os << ";\n";
    }
    std::vector<HasseEdge> edges = g.covers;
    std::sort(edges.begin(), edges.end(), [](const HasseEdge& x, const HasseEdge& y) {
        return std::tie(x.from, x.to) < std::tie(y.from, y.to);
    });
    for (const HasseEdge& e : edges) {
        os << "  " << detail::dot_quote(e.from) << " -> " << detail::dot_quote(e.to);
        if (!e.certified) os << " [style=dashed]";
        os << ";\n";
    }
    os << "}\n";
    return os.str();
}

}  // namespace oporder
