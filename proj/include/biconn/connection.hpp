#pragma once

#include <array>
#include <complex>
#include <map>
#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "biconn/graph.hpp"

namespace biconn {

using cplx = std::complex<double>;
using Mat = Eigen::MatrixXcd;

/// Four vertex sets on the corners of a square and the four bipartite graphs
/// between them. V0/V2 are the even sides, V1/V3 the odd sides:
///
///      V0 --g_top-- V3
///      |             |
///    h_left       h_right
///      |             |
///      V1 --g_bot-- V2
///
/// Stored with even vertices first: g_top on (V0,V3), h_left on (V0,V1),
/// g_bot on (V2,V1), h_right on (V2,V3). Weight maps are per vertex set.
struct ConnectionShape {
    std::vector<std::string> V0, V1, V2, V3;
    BipartiteGraph g_top, h_left, g_bot, h_right;
    std::vector<double> w0, w1, w2, w3;

    void validate() const;
    int i0(const std::string& v) const;
    int i1(const std::string& v) const;
    int i2(const std::string& v) const;
    int i3(const std::string& v) const;
};

/// One closed square of edges, referenced positionally.
struct Cell {
    // top (x0,x3,t), left (x0,x1,l), bot (x2,x1,b), right (x2,x3,r)
    std::string x0, x1, x2, x3;
    int t = 0, l = 0, b = 0, r = 0;
};

struct CellValue {
    Cell cell;
    cplx value;
};

/// Dense block of cell values over one corner quadruple, laid out as
/// value[l][b][t][r] with dims (left-mult, bot-mult, top-mult, right-mult).
struct CellBlock {
    int ml = 0, mb = 0, mt = 0, mr = 0;
    std::vector<cplx> v;
    cplx& at(int l, int b, int t, int r) { return v[((l * mb + b) * mt + t) * mr + r]; }
    cplx at(int l, int b, int t, int r) const { return v[((l * mb + b) * mt + t) * mr + r]; }
};

struct Connection {
    ConnectionShape shape;
    // Keyed by corner indices (i0,i1,i2,i3); present iff all four mults > 0.
    std::map<std::array<int, 4>, CellBlock> blocks;

    const CellBlock* block(int i0, int i1, int i2, int i3) const;
    std::vector<CellValue> cell_values() const;
};

struct GaugeFamily {
    std::map<std::pair<int, int>, Mat> left;   // keyed (i0,i1), shape m'(x0,x1) x m(x0,x1)
    std::map<std::pair<int, int>, Mat> right;  // keyed (i2,i3)
};

struct BiunitarityReport {
    double unitarity_residual = 0.0;
    double crossing_residual = 0.0;
    bool pass = false;
};

/// A horizontal boundary read left-to-right, used when stacking connections.
struct HorizGraph {
    std::vector<std::string> left, right;
    std::vector<std::vector<int>> mult;  // mult[left][right]
    std::vector<double> wl, wr;
};

HorizGraph top_view(const ConnectionShape& s);
HorizGraph bot_view(const ConnectionShape& s);
bool same_horiz(const HorizGraph& a, const HorizGraph& b, double tol = 1e-9);

Connection make_connection(const ConnectionShape& shape, const std::vector<CellValue>& values);

BiunitarityReport verify_biunitarity(const Connection& w, double tol = 1e-9);
double unitarity_residual(const Connection& w);

/// Crossing-symmetric reflection: V0<->V3 and V1<->V2 swapped, graphs
/// transposed, values sqrt(mu(x0)mu(x2)/(mu(x1)mu(x3))) * conj(W(cell)).
/// An exact involution.
Connection conjugate(const Connection& w);

/// Plain 180-degree rotation (relabeling; values untouched).
Connection rot180(const Connection& w);

/// rot180(conjugate(w)): the reflection across the horizontal axis. Stacks
/// under w (its top boundary equals w's bottom boundary), playing the role
/// of the adjoint in vertical composition.
Connection dual(const Connection& w);

Connection gauge_transform(const Connection& w, const GaugeFamily& g, bool strict = false);

Connection direct_sum(const Connection& a, const Connection& b);

/// Identity connection over a horizontal boundary: both horizontal graphs
/// equal g, vertical graphs identity matchings, values delta.
Connection identity_connection(const HorizGraph& g);

/// Phase gauge making the first nonzero entry of each left/right gauge block
/// column real positive; used before serialization for reproducible output.
Connection canonicalize_phases(const Connection& w);

}  // namespace biconn
