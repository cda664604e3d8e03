#pragma once

#include <string>
#include <vector>

#include "biconn/connection.hpp"

namespace biconn {

/// Dynkin diagram of type A/D/E as an (unoriented, simple) graph with its
/// Perron-Frobenius data and Coxeter number. Vertices are named "v0".."vN"
/// with v0 the basepoint (smallest PF weight, end of the longest arm).
struct DynkinDiagram {
    std::string name;  // "A5", "D4", "E6", ...
    int rank = 0;
    int coxeter = 0;
    std::vector<std::string> verts;
    std::vector<std::vector<int>> adj;  // symmetric 0/1
    std::vector<double> mu;             // PF weights, basepoint = 1
    double beta = 0.0;
    std::string basepoint;
    std::vector<int> color;  // 2-coloring, color[basepoint] = 0

    /// The diagram as a bipartite graph (even = color 0).
    BipartiteGraph bipartite() const;
};

DynkinDiagram dynkin(const std::string& name);

/// The explicit cell system on a Dynkin diagram:
///   W(cell) = delta_{x1 x3} eps + sqrt(mu(x1) mu(x3) / (mu(x0) mu(x2))) delta_{x0 x2} conj(eps)
/// with eps = i exp(i pi / (2p)). The exponent p is selected from
/// {h-1, h, h+1} by the bi-unitarity residual at construction; chirality '-'
/// conjugates eps.
Connection ocneanu_connection(const DynkinDiagram& d, char chirality = '+');

/// The p actually selected by ocneanu_connection for this diagram.
int ocneanu_epsilon_exponent(const DynkinDiagram& d);

}  // namespace biconn
