#include "biconn/connection.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace biconn {

namespace {
int index_of(const std::vector<std::string>& v, const std::string& id, const char* what) {
    auto it = std::find(v.begin(), v.end(), id);
    if (it == v.end()) throw Error(std::string("dangling edge reference: ") + what + " '" + id + "'");
    return static_cast<int>(it - v.begin());
}
}  // namespace

void ConnectionShape::validate() const {
    auto chk = [](const std::vector<std::string>& v, const char* name) {
        std::set<std::string> s(v.begin(), v.end());
        if (s.size() != v.size()) throw Error(std::string("shape: duplicate ids in ") + name);
    };
    chk(V0, "V0");
    chk(V1, "V1");
    chk(V2, "V2");
    chk(V3, "V3");
    auto same = [](const std::vector<std::string>& a, const std::vector<std::string>& b,
                   const char* name) {
        if (a != b) throw Error(std::string("shape: graph vertex list mismatch at ") + name);
    };
    same(g_top.even, V0, "g_top/V0");
    same(g_top.odd, V3, "g_top/V3");
    same(h_left.even, V0, "h_left/V0");
    same(h_left.odd, V1, "h_left/V1");
    same(g_bot.even, V2, "g_bot/V2");
    same(g_bot.odd, V1, "g_bot/V1");
    same(h_right.even, V2, "h_right/V2");
    same(h_right.odd, V3, "h_right/V3");
    auto wchk = [](const std::vector<double>& w, size_t n, const char* name) {
        if (w.size() != n) throw Error(std::string("shape: weight size mismatch at ") + name);
        for (double x : w)
            if (!(x > 0)) throw Error(std::string("shape: nonpositive weight at ") + name);
    };
    wchk(w0, V0.size(), "V0");
    wchk(w1, V1.size(), "V1");
    wchk(w2, V2.size(), "V2");
    wchk(w3, V3.size(), "V3");
}

int ConnectionShape::i0(const std::string& v) const { return index_of(V0, v, "V0 vertex"); }
int ConnectionShape::i1(const std::string& v) const { return index_of(V1, v, "V1 vertex"); }
int ConnectionShape::i2(const std::string& v) const { return index_of(V2, v, "V2 vertex"); }
int ConnectionShape::i3(const std::string& v) const { return index_of(V3, v, "V3 vertex"); }

const CellBlock* Connection::block(int i0, int i1, int i2, int i3) const {
    auto it = blocks.find({i0, i1, i2, i3});
    return it == blocks.end() ? nullptr : &it->second;
}

std::vector<CellValue> Connection::cell_values() const {
    std::vector<CellValue> out;
    for (const auto& [key, blk] : blocks) {
        for (int l = 0; l < blk.ml; ++l)
            for (int b = 0; b < blk.mb; ++b)
                for (int t = 0; t < blk.mt; ++t)
                    for (int r = 0; r < blk.mr; ++r) {
                        CellValue cv;
                        cv.cell = Cell{shape.V0[key[0]], shape.V1[key[1]], shape.V2[key[2]],
                                       shape.V3[key[3]], t,  l,  b,  r};
                        cv.value = blk.at(l, b, t, r);
                        out.push_back(cv);
                    }
    }
    return out;
}

HorizGraph top_view(const ConnectionShape& s) {
    return HorizGraph{s.V0, s.V3, s.g_top.mult, s.w0, s.w3};
}

HorizGraph bot_view(const ConnectionShape& s) {
    std::vector<std::vector<int>> m(s.V1.size(), std::vector<int>(s.V2.size(), 0));
    for (size_t i = 0; i < s.V2.size(); ++i)
        for (size_t j = 0; j < s.V1.size(); ++j) m[j][i] = s.g_bot.mult[i][j];
    return HorizGraph{s.V1, s.V2, m, s.w1, s.w2};
}

bool same_horiz(const HorizGraph& a, const HorizGraph& b, double tol) {
    if (a.left != b.left || a.right != b.right || a.mult != b.mult) return false;
    for (size_t i = 0; i < a.wl.size(); ++i)
        if (std::abs(a.wl[i] - b.wl[i]) > tol * std::max(1.0, std::abs(a.wl[i]))) return false;
    for (size_t i = 0; i < a.wr.size(); ++i)
        if (std::abs(a.wr[i] - b.wr[i]) > tol * std::max(1.0, std::abs(a.wr[i]))) return false;
    return true;
}

namespace {

// Allocates the zero-filled block table for every corner quadruple of the
// shape that supports at least one cell.
std::map<std::array<int, 4>, CellBlock> empty_blocks(const ConnectionShape& s) {
    std::map<std::array<int, 4>, CellBlock> out;
    int n0 = s.V0.size(), n1 = s.V1.size(), n2 = s.V2.size(), n3 = s.V3.size();
    for (int a = 0; a < n0; ++a)
        for (int b = 0; b < n1; ++b) {
            if (s.h_left.mult[a][b] == 0) continue;
            for (int c = 0; c < n2; ++c) {
                if (s.g_bot.mult[c][b] == 0) continue;
                for (int d = 0; d < n3; ++d) {
                    if (s.g_top.mult[a][d] == 0 || s.h_right.mult[c][d] == 0) continue;
                    CellBlock blk;
                    blk.ml = s.h_left.mult[a][b];
                    blk.mb = s.g_bot.mult[c][b];
                    blk.mt = s.g_top.mult[a][d];
                    blk.mr = s.h_right.mult[c][d];
                    blk.v.assign((size_t)blk.ml * blk.mb * blk.mt * blk.mr, cplx(0, 0));
                    out[{a, b, c, d}] = std::move(blk);
                }
            }
        }
    return out;
}

}  // namespace

Connection make_connection(const ConnectionShape& shape, const std::vector<CellValue>& values) {
    shape.validate();
    Connection w;
    w.shape = shape;
    w.blocks = empty_blocks(shape);
    std::map<std::array<int, 4>, std::vector<bool>> seen;
    for (const auto& [key, blk] : w.blocks) seen[key].assign(blk.v.size(), false);
    for (const auto& cv : values) {
        const Cell& c = cv.cell;
        int a = shape.i0(c.x0), b = shape.i1(c.x1), cc = shape.i2(c.x2), d = shape.i3(c.x3);
        auto it = w.blocks.find({a, b, cc, d});
        if (it == w.blocks.end()) throw Error("dangling edge reference: no cell at given corners");
        CellBlock& blk = it->second;
        if (c.l < 0 || c.l >= blk.ml || c.b < 0 || c.b >= blk.mb || c.t < 0 || c.t >= blk.mt ||
            c.r < 0 || c.r >= blk.mr)
            throw Error("dangling edge reference: multiplicity index out of range");
        size_t flat = ((size_t(c.l) * blk.mb + c.b) * blk.mt + c.t) * blk.mr + c.r;
        if (seen[{a, b, cc, d}][flat]) throw Error("duplicate cell");
        seen[{a, b, cc, d}][flat] = true;
        blk.v[flat] = cv.value;
    }
    for (const auto& [key, flags] : seen)
        for (bool f : flags)
            if (!f) throw Error("missing cell");
    return w;
}

double unitarity_residual(const Connection& w) {
    const ConnectionShape& s = w.shape;
    double res = 0.0;
    int n0 = s.V0.size(), n1 = s.V1.size(), n2 = s.V2.size(), n3 = s.V3.size();
    for (int a = 0; a < n0; ++a)
        for (int c = 0; c < n2; ++c) {
            // rows: paths x0 -> x1 -> x2, cols: paths x0 -> x3 -> x2
            std::vector<std::tuple<int, int, int>> rows, cols;
            for (int b = 0; b < n1; ++b)
                for (int l = 0; l < s.h_left.mult[a][b]; ++l)
                    for (int bb = 0; bb < s.g_bot.mult[c][b]; ++bb) rows.emplace_back(b, l, bb);
            for (int d = 0; d < n3; ++d)
                for (int t = 0; t < s.g_top.mult[a][d]; ++t)
                    for (int rr = 0; rr < s.h_right.mult[c][d]; ++rr) cols.emplace_back(d, t, rr);
            if (rows.empty() && cols.empty()) continue;
            if (rows.empty() || cols.empty()) {
                res = std::max(res, 1.0);
                continue;
            }
            Mat U(rows.size(), cols.size());
            for (size_t i = 0; i < rows.size(); ++i) {
                auto [b, l, bb] = rows[i];
                for (size_t j = 0; j < cols.size(); ++j) {
                    auto [d, t, rr] = cols[j];
                    const CellBlock* blk = w.block(a, b, c, d);
                    U(i, j) = blk ? blk->at(l, bb, t, rr) : cplx(0, 0);
                }
            }
            Mat e1 = U.adjoint() * U - Mat::Identity(cols.size(), cols.size());
            Mat e2 = U * U.adjoint() - Mat::Identity(rows.size(), rows.size());
            res = std::max(res, e1.cwiseAbs().maxCoeff());
            res = std::max(res, e2.cwiseAbs().maxCoeff());
        }
    return res;
}

BiunitarityReport verify_biunitarity(const Connection& w, double tol) {
    BiunitarityReport rep;
    rep.unitarity_residual = unitarity_residual(w);
    rep.crossing_residual = unitarity_residual(conjugate(w));
    rep.pass = rep.unitarity_residual < tol && rep.crossing_residual < tol;
    return rep;
}

Connection conjugate(const Connection& w) {
    const ConnectionShape& s = w.shape;
    ConnectionShape ns;
    ns.V0 = s.V3;
    ns.V1 = s.V2;
    ns.V2 = s.V1;
    ns.V3 = s.V0;
    ns.g_top = s.g_top.transposed();
    ns.h_left = s.h_right.transposed();
    ns.g_bot = s.g_bot.transposed();
    ns.h_right = s.h_left.transposed();
    ns.w0 = s.w3;
    ns.w1 = s.w2;
    ns.w2 = s.w1;
    ns.w3 = s.w0;
    Connection out;
    out.shape = ns;
    out.blocks = empty_blocks(ns);
    for (const auto& [key, blk] : w.blocks) {
        auto [a, b, c, d] = key;
        double f = std::sqrt(s.w0[a] * s.w2[c] / (s.w1[b] * s.w3[d]));
        CellBlock& nb = out.blocks.at({d, c, b, a});
        for (int l = 0; l < blk.ml; ++l)
            for (int bb = 0; bb < blk.mb; ++bb)
                for (int t = 0; t < blk.mt; ++t)
                    for (int r = 0; r < blk.mr; ++r)
                        nb.at(r, bb, t, l) = f * std::conj(blk.at(l, bb, t, r));
    }
    return out;
}

Connection rot180(const Connection& w) {
    const ConnectionShape& s = w.shape;
    ConnectionShape ns;
    ns.V0 = s.V2;
    ns.V1 = s.V3;
    ns.V2 = s.V0;
    ns.V3 = s.V1;
    ns.g_top = s.g_bot;
    ns.h_left = s.h_right;
    ns.g_bot = s.g_top;
    ns.h_right = s.h_left;
    ns.w0 = s.w2;
    ns.w1 = s.w3;
    ns.w2 = s.w0;
    ns.w3 = s.w1;
    Connection out;
    out.shape = ns;
    out.blocks = empty_blocks(ns);
    for (const auto& [key, blk] : w.blocks) {
        auto [a, b, c, d] = key;
        CellBlock& nb = out.blocks.at({c, d, a, b});
        for (int l = 0; l < blk.ml; ++l)
            for (int bb = 0; bb < blk.mb; ++bb)
                for (int t = 0; t < blk.mt; ++t)
                    for (int r = 0; r < blk.mr; ++r) nb.at(r, t, bb, l) = blk.at(l, bb, t, r);
    }
    return out;
}

Connection dual(const Connection& w) { return rot180(conjugate(w)); }

Connection gauge_transform(const Connection& w, const GaugeFamily& g, bool strict) {
    const ConnectionShape& s = w.shape;
    auto block_for = [&](const std::map<std::pair<int, int>, Mat>& m, int i, int j,
                         int dim) -> Mat {
        auto it = m.find({i, j});
        if (it == m.end()) return Mat::Identity(dim, dim);
        if (it->second.cols() != dim) throw Error("gauge_transform: block dimension mismatch");
        if (strict) {
            Mat d = it->second.adjoint() * it->second - Mat::Identity(dim, dim);
            if (d.cwiseAbs().maxCoeff() > 1e-8) throw Error("gauge_transform: non-unitary block");
        }
        return it->second;
    };

    ConnectionShape ns = s;
    for (size_t a = 0; a < s.V0.size(); ++a)
        for (size_t b = 0; b < s.V1.size(); ++b)
            if (s.h_left.mult[a][b] > 0)
                ns.h_left.mult[a][b] =
                    block_for(g.left, a, b, s.h_left.mult[a][b]).rows();
    for (size_t c = 0; c < s.V2.size(); ++c)
        for (size_t d = 0; d < s.V3.size(); ++d)
            if (s.h_right.mult[c][d] > 0)
                ns.h_right.mult[c][d] =
                    block_for(g.right, c, d, s.h_right.mult[c][d]).rows();

    Connection out;
    out.shape = ns;
    out.blocks = empty_blocks(ns);
    for (const auto& [key, blk] : w.blocks) {
        auto [a, b, c, d] = key;
        Mat gl = block_for(g.left, a, b, blk.ml);
        Mat gr = block_for(g.right, c, d, blk.mr);
        auto it = out.blocks.find(key);
        if (it == out.blocks.end()) continue;  // gauge block of rank 0
        CellBlock& nb = it->second;
        for (int lp = 0; lp < nb.ml; ++lp)
            for (int bb = 0; bb < nb.mb; ++bb)
                for (int t = 0; t < nb.mt; ++t)
                    for (int rp = 0; rp < nb.mr; ++rp) {
                        cplx acc(0, 0);
                        for (int l = 0; l < blk.ml; ++l)
                            for (int r = 0; r < blk.mr; ++r)
                                acc += gl(lp, l) * blk.at(l, bb, t, r) * std::conj(gr(rp, r));
                        nb.at(lp, bb, t, rp) = acc;
                    }
    }
    return out;
}

Connection direct_sum(const Connection& a, const Connection& b) {
    if (!same_horiz(top_view(a.shape), top_view(b.shape)) ||
        !same_horiz(bot_view(a.shape), bot_view(b.shape)))
        throw Error("direct_sum: horizontal-graph mismatch");
    ConnectionShape ns = a.shape;
    for (size_t i = 0; i < ns.V0.size(); ++i)
        for (size_t j = 0; j < ns.V1.size(); ++j)
            ns.h_left.mult[i][j] += b.shape.h_left.mult[i][j];
    for (size_t i = 0; i < ns.V2.size(); ++i)
        for (size_t j = 0; j < ns.V3.size(); ++j)
            ns.h_right.mult[i][j] += b.shape.h_right.mult[i][j];
    Connection out;
    out.shape = ns;
    out.blocks = empty_blocks(ns);
    for (auto& [key, nb] : out.blocks) {
        auto [i0, i1, i2, i3] = key;
        int la = a.shape.h_left.mult[i0][i1], ra = a.shape.h_right.mult[i2][i3];
        const CellBlock* ba = a.block(i0, i1, i2, i3);
        const CellBlock* bb2 = b.block(i0, i1, i2, i3);
        for (int l = 0; l < nb.ml; ++l)
            for (int bb = 0; bb < nb.mb; ++bb)
                for (int t = 0; t < nb.mt; ++t)
                    for (int r = 0; r < nb.mr; ++r) {
                        cplx v(0, 0);
                        if (l < la && r < ra) {
                            if (ba) v = ba->at(l, bb, t, r);
                        } else if (l >= la && r >= ra) {
                            if (bb2) v = bb2->at(l - la, bb, t, r - ra);
                        }
                        nb.at(l, bb, t, r) = v;
                    }
    }
    return out;
}

Connection identity_connection(const HorizGraph& g) {
    ConnectionShape s;
    s.V0 = g.left;
    s.V3 = g.right;
    s.V1 = g.left;
    s.V2 = g.right;
    s.g_top = BipartiteGraph(g.left, g.right, g.mult);
    std::vector<std::vector<int>> botm(g.right.size(), std::vector<int>(g.left.size(), 0));
    for (size_t i = 0; i < g.left.size(); ++i)
        for (size_t j = 0; j < g.right.size(); ++j) botm[j][i] = g.mult[i][j];
    s.g_bot = BipartiteGraph(g.right, g.left, botm);
    std::vector<std::vector<int>> idl(g.left.size(), std::vector<int>(g.left.size(), 0));
    for (size_t i = 0; i < g.left.size(); ++i) idl[i][i] = 1;
    s.h_left = BipartiteGraph(g.left, g.left, idl);
    std::vector<std::vector<int>> idr(g.right.size(), std::vector<int>(g.right.size(), 0));
    for (size_t i = 0; i < g.right.size(); ++i) idr[i][i] = 1;
    s.h_right = BipartiteGraph(g.right, g.right, idr);
    s.w0 = s.w1 = g.wl;
    s.w2 = s.w3 = g.wr;
    Connection out;
    out.shape = s;
    out.blocks = empty_blocks(s);
    for (auto& [key, blk] : out.blocks) {
        auto [i0, i1, i2, i3] = key;
        (void)i1;
        (void)i3;
        for (int t = 0; t < blk.mt; ++t)
            for (int b = 0; b < blk.mb; ++b) blk.at(0, b, t, 0) = (t == b) ? 1.0 : 0.0;
    }
    return out;
}

Connection canonicalize_phases(const Connection& w) {
    const ConnectionShape& s = w.shape;
    GaugeFamily g;
    auto first_phase = [&](bool left_side) {
        std::map<std::pair<int, int>, std::vector<cplx>> found;
        for (const auto& [key, blk] : w.blocks) {
            auto [a, b, c, d] = key;
            auto k = left_side ? std::pair(a, (int)b) : std::pair(c, (int)d);
            int dim = left_side ? blk.ml : blk.mr;
            auto& slot = found[k];
            if (slot.empty()) slot.assign(dim, cplx(0, 0));
            for (int l = 0; l < blk.ml; ++l)
                for (int bb = 0; bb < blk.mb; ++bb)
                    for (int t = 0; t < blk.mt; ++t)
                        for (int r = 0; r < blk.mr; ++r) {
                            int idx = left_side ? l : r;
                            if (std::abs(slot[idx]) < 1e-12 &&
                                std::abs(blk.at(l, bb, t, r)) > 1e-12)
                                slot[idx] = blk.at(l, bb, t, r);
                        }
        }
        std::map<std::pair<int, int>, Mat> out;
        for (auto& [k, vals] : found) {
            Mat m = Mat::Zero(vals.size(), vals.size());
            for (size_t i = 0; i < vals.size(); ++i) {
                cplx v = vals[i];
                m(i, i) = (std::abs(v) > 1e-12) ? std::conj(v) / std::abs(v) : cplx(1, 0);
            }
            out[k] = m;
        }
        return out;
    };
    g.left = first_phase(true);
    Connection mid = gauge_transform(w, g);
    GaugeFamily gr;
    {
        // Right phases from the left-fixed values; they enter conjugated in
        // gauge_transform, hence the sign of the phase below.
        std::map<std::pair<int, int>, std::vector<cplx>> found;
        for (const auto& [key, blk] : mid.blocks) {
            auto [a, b, c, d] = key;
            auto k = std::pair(c, (int)d);
            auto& slot = found[k];
            if (slot.empty()) slot.assign(blk.mr, cplx(0, 0));
            for (int l = 0; l < blk.ml; ++l)
                for (int bb = 0; bb < blk.mb; ++bb)
                    for (int t = 0; t < blk.mt; ++t)
                        for (int r = 0; r < blk.mr; ++r)
                            if (std::abs(slot[r]) < 1e-12 && std::abs(blk.at(l, bb, t, r)) > 1e-12)
                                slot[r] = blk.at(l, bb, t, r);
        }
        for (auto& [k, vals] : found) {
            Mat m = Mat::Zero(vals.size(), vals.size());
            for (size_t i = 0; i < vals.size(); ++i) {
                cplx v = vals[i];
                m(i, i) = (std::abs(v) > 1e-12) ? v / std::abs(v) : cplx(1, 0);
            }
            gr.right[k] = m;
        }
    }
    return gauge_transform(mid, gr);
}

}  // namespace biconn
