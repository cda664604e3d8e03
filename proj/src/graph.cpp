#include "biconn/graph.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace biconn {

BipartiteGraph::BipartiteGraph(std::vector<std::string> ev, std::vector<std::string> od,
                               std::vector<std::vector<int>> m)
    : even(std::move(ev)), odd(std::move(od)), mult(std::move(m)) {
    if (mult.size() != even.size())
        throw Error("graph: mult has " + std::to_string(mult.size()) + " rows, expected " +
                    std::to_string(even.size()));
    for (const auto& row : mult) {
        if (row.size() != odd.size()) throw Error("graph: ragged mult matrix");
        for (int x : row)
            if (x < 0) throw Error("graph: negative multiplicity");
    }
}

long BipartiteGraph::edge_count() const {
    long n = 0;
    for (const auto& row : mult) n = std::accumulate(row.begin(), row.end(), n);
    return n;
}

int BipartiteGraph::even_index(const std::string& id) const {
    auto it = std::find(even.begin(), even.end(), id);
    if (it == even.end()) throw Error("graph: unknown even vertex '" + id + "'");
    return static_cast<int>(it - even.begin());
}

int BipartiteGraph::odd_index(const std::string& id) const {
    auto it = std::find(odd.begin(), odd.end(), id);
    if (it == odd.end()) throw Error("graph: unknown odd vertex '" + id + "'");
    return static_cast<int>(it - odd.begin());
}

BipartiteGraph BipartiteGraph::transposed() const {
    std::vector<std::vector<int>> m(odd.size(), std::vector<int>(even.size(), 0));
    for (int i = 0; i < n_even(); ++i)
        for (int j = 0; j < n_odd(); ++j) m[j][i] = mult[i][j];
    return BipartiteGraph(odd, even, m);
}

Connectivity connectivity(const BipartiteGraph& g) {
    int ne = g.n_even(), no = g.n_odd();
    std::vector<int> comp(ne + no, -1);  // even first, then odd
    int ncomp = 0;
    for (int s = 0; s < ne + no; ++s) {
        if (comp[s] >= 0) continue;
        std::vector<int> stack{s};
        comp[s] = ncomp;
        while (!stack.empty()) {
            int v = stack.back();
            stack.pop_back();
            if (v < ne) {
                for (int j = 0; j < no; ++j)
                    if (g.mult[v][j] > 0 && comp[ne + j] < 0) {
                        comp[ne + j] = ncomp;
                        stack.push_back(ne + j);
                    }
            } else {
                for (int i = 0; i < ne; ++i)
                    if (g.mult[i][v - ne] > 0 && comp[i] < 0) {
                        comp[i] = ncomp;
                        stack.push_back(i);
                    }
            }
        }
        ++ncomp;
    }
    Connectivity out;
    out.components.resize(ncomp);
    for (int i = 0; i < ne; ++i) out.components[comp[i]].push_back("e:" + g.even[i]);
    for (int j = 0; j < no; ++j) out.components[comp[ne + j]].push_back("o:" + g.odd[j]);
    out.connected = (ncomp == 1);
    return out;
}

PFData pf_data(const BipartiteGraph& g, double tol, const std::optional<std::string>& basepoint) {
    int ne = g.n_even(), no = g.n_odd();
    if (ne + no == 0 || g.edge_count() == 0) throw Error("PF undefined on empty graph");
    if (!connectivity(g).connected) throw Error("PF undefined on disconnected graph");

    std::vector<double> ve(ne, 1.0), vo(no, 1.0);
    double beta = 0.0;
    // One step applies the adjacency to both sides; eigenvalue read off from
    // the norm growth of the combined vector.
    for (int it = 0; it < 100000; ++it) {
        std::vector<double> we(ne, 0.0), wo(no, 0.0);
        for (int i = 0; i < ne; ++i)
            for (int j = 0; j < no; ++j) {
                we[i] += g.mult[i][j] * vo[j];
                wo[j] += g.mult[i][j] * ve[i];
            }
        double norm = 0.0;
        for (double x : we) norm = std::max(norm, std::abs(x));
        for (double x : wo) norm = std::max(norm, std::abs(x));
        for (double& x : we) x /= norm;
        for (double& x : wo) x /= norm;
        double diff = 0.0;
        for (int i = 0; i < ne; ++i) diff = std::max(diff, std::abs(we[i] - ve[i]));
        for (int j = 0; j < no; ++j) diff = std::max(diff, std::abs(wo[j] - vo[j]));
        ve = we;
        vo = wo;
        beta = norm;
        if (it > 2 && diff < 0.01 * tol * std::max(beta, 1.0)) break;
    }

    PFData out;
    out.beta = beta;
    double scale;
    if (basepoint) {
        double b = -1;
        for (int i = 0; i < ne; ++i)
            if (g.even[i] == *basepoint) b = ve[i];
        for (int j = 0; j < no; ++j)
            if (g.odd[j] == *basepoint) b = vo[j];
        if (b <= 0) throw Error("pf_data: basepoint '" + *basepoint + "' not found");
        scale = 1.0 / b;
        out.normalization = "distinguished:" + *basepoint;
    } else {
        double m = 0.0;
        for (double x : ve) m = std::max(m, x);
        for (double x : vo) m = std::max(m, x);
        scale = 1.0 / m;
        out.normalization = "max-one";
    }
    for (int i = 0; i < ne; ++i) out.mu[g.even[i]] = ve[i] * scale;
    for (int j = 0; j < no; ++j) out.mu[g.odd[j]] = vo[j] * scale;

    // Residual check against the eigen-equations.
    for (int i = 0; i < ne; ++i) {
        double s = 0.0;
        for (int j = 0; j < no; ++j) s += g.mult[i][j] * out.mu.at(g.odd[j]);
        if (std::abs(s - beta * out.mu.at(g.even[i])) > tol * std::max(1.0, beta))
            throw Error("pf_data: eigen-equation residual exceeds tol");
    }
    for (int j = 0; j < no; ++j) {
        double s = 0.0;
        for (int i = 0; i < ne; ++i) s += g.mult[i][j] * out.mu.at(g.even[i]);
        if (std::abs(s - beta * out.mu.at(g.odd[j])) > tol * std::max(1.0, beta))
            throw Error("pf_data: eigen-equation residual exceeds tol");
    }
    return out;
}

namespace {

bool iso_search(const BipartiteGraph& g1, const BipartiteGraph& g2, std::vector<int>& pe,
                std::vector<int>& po, std::vector<bool>& usede, std::vector<bool>& usedo,
                size_t pos) {
    int ne = g1.n_even(), no = g1.n_odd();
    if (static_cast<int>(pos) == ne + no) return true;
    if (static_cast<int>(pos) < ne) {
        int i = static_cast<int>(pos);
        for (int c = 0; c < ne; ++c) {
            if (usede[c]) continue;
            bool ok = true;
            for (int j = 0; j < no && ok; ++j)
                if (po[j] >= 0 && g1.mult[i][j] != g2.mult[c][po[j]]) ok = false;
            if (!ok) continue;
            pe[i] = c;
            usede[c] = true;
            if (iso_search(g1, g2, pe, po, usede, usedo, pos + 1)) return true;
            pe[i] = -1;
            usede[c] = false;
        }
    } else {
        int j = static_cast<int>(pos) - ne;
        for (int c = 0; c < no; ++c) {
            if (usedo[c]) continue;
            bool ok = true;
            for (int i = 0; i < ne && ok; ++i)
                if (pe[i] >= 0 && g1.mult[i][j] != g2.mult[pe[i]][c]) ok = false;
            if (!ok) continue;
            po[j] = c;
            usedo[c] = true;
            if (iso_search(g1, g2, pe, po, usede, usedo, pos + 1)) return true;
            po[j] = -1;
            usedo[c] = false;
        }
    }
    return false;
}

}  // namespace

std::optional<std::pair<std::vector<int>, std::vector<int>>> graph_isomorphic(
    const BipartiteGraph& g1, const BipartiteGraph& g2) {
    if (g1.n_even() != g2.n_even() || g1.n_odd() != g2.n_odd()) return std::nullopt;
    // Degree-sequence pruning before the exhaustive search.
    auto degs = [](const BipartiteGraph& g) {
        std::vector<int> de(g.n_even(), 0), dd(g.n_odd(), 0);
        for (int i = 0; i < g.n_even(); ++i)
            for (int j = 0; j < g.n_odd(); ++j) {
                de[i] += g.mult[i][j];
                dd[j] += g.mult[i][j];
            }
        std::sort(de.begin(), de.end());
        std::sort(dd.begin(), dd.end());
        return std::pair(de, dd);
    };
    if (degs(g1) != degs(g2)) return std::nullopt;
    std::vector<int> pe(g1.n_even(), -1), po(g1.n_odd(), -1);
    std::vector<bool> ue(g1.n_even(), false), uo(g1.n_odd(), false);
    if (iso_search(g1, g2, pe, po, ue, uo, 0)) return std::pair(pe, po);
    return std::nullopt;
}

}  // namespace biconn
