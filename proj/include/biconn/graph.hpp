#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace biconn {

struct Error : std::exception {
    std::string msg;
    explicit Error(std::string m) : msg(std::move(m)) {}
    const char* what() const noexcept override { return msg.c_str(); }
};

/// Finite bipartite multigraph. Edges between even vertex i and odd vertex j
/// are enumerated as (i, j, t) with 0 <= t < mult[i][j], lexicographically.
struct BipartiteGraph {
    std::vector<std::string> even;
    std::vector<std::string> odd;
    std::vector<std::vector<int>> mult;  // mult[even][odd] >= 0

    BipartiteGraph() = default;
    BipartiteGraph(std::vector<std::string> ev, std::vector<std::string> od,
                   std::vector<std::vector<int>> m);

    int n_even() const { return static_cast<int>(even.size()); }
    int n_odd() const { return static_cast<int>(odd.size()); }
    long edge_count() const;
    int even_index(const std::string& id) const;
    int odd_index(const std::string& id) const;

    BipartiteGraph transposed() const;

    bool operator==(const BipartiteGraph& o) const {
        return even == o.even && odd == o.odd && mult == o.mult;
    }
};

struct PFData {
    double beta = 0.0;
    std::map<std::string, double> mu;  // vertex id -> weight, strictly positive
    std::string normalization;         // "distinguished:<id>" or "max-one"
};

struct Connectivity {
    bool connected = false;
    // Each component is a set of vertex ids, "e:<id>" / "o:<id>" prefixed to
    // keep the two sides apart when the same id appears on both.
    std::vector<std::vector<std::string>> components;
};

Connectivity connectivity(const BipartiteGraph& g);

/// Perron-Frobenius eigenvalue and eigenvector by power iteration with an
/// all-ones start vector. Deterministic; throws on disconnected or empty
/// graphs. If basepoint is given, mu[basepoint] = 1, else max weight = 1.
PFData pf_data(const BipartiteGraph& g, double tol,
               const std::optional<std::string>& basepoint = std::nullopt);

/// Parity-preserving isomorphism (even->even, odd->odd vertex bijection
/// matching multiplicity matrices), or nullopt. Exhaustive with degree
/// pruning; fine for the graphs handled here (<= ~30 vertices).
std::optional<std::pair<std::vector<int>, std::vector<int>>>
graph_isomorphic(const BipartiteGraph& g1, const BipartiteGraph& g2);

}  // namespace biconn
