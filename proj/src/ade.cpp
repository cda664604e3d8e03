#include "biconn/ade.hpp"

#include <cmath>

namespace biconn {

namespace {

const double kPi = 3.14159265358979323846;

void add_edge(std::vector<std::vector<int>>& a, int i, int j) { a[i][j] = a[j][i] = 1; }

}  // namespace

BipartiteGraph DynkinDiagram::bipartite() const {
    std::vector<std::string> ev, od;
    std::vector<int> emap(rank, -1), omap(rank, -1);
    for (int i = 0; i < rank; ++i) {
        if (color[i] == 0) {
            emap[i] = ev.size();
            ev.push_back(verts[i]);
        } else {
            omap[i] = od.size();
            od.push_back(verts[i]);
        }
    }
    std::vector<std::vector<int>> m(ev.size(), std::vector<int>(od.size(), 0));
    for (int i = 0; i < rank; ++i)
        for (int j = 0; j < rank; ++j)
            if (adj[i][j] && color[i] == 0) m[emap[i]][omap[j]] = adj[i][j];
    return BipartiteGraph(ev, od, m);
}

DynkinDiagram dynkin(const std::string& name) {
    if (name.size() < 2) throw Error("dynkin: invalid name '" + name + "'");
    char type = name[0];
    int n = 0;
    try {
        n = std::stoi(name.substr(1));
    } catch (...) {
        throw Error("dynkin: invalid name '" + name + "'");
    }
    DynkinDiagram d;
    d.name = name;
    d.rank = n;
    if (type == 'A') {
        if (n < 1) throw Error("dynkin: A_n needs n >= 1");
        d.adj.assign(n, std::vector<int>(n, 0));
        for (int i = 0; i + 1 < n; ++i) add_edge(d.adj, i, i + 1);
        d.coxeter = n + 1;
    } else if (type == 'D') {
        if (n < 4) throw Error("dynkin: D_n needs n >= 4");
        d.adj.assign(n, std::vector<int>(n, 0));
        // tail v0..v(n-3), fork tips v(n-2), v(n-1)
        for (int i = 0; i + 1 < n - 2; ++i) add_edge(d.adj, i, i + 1);
        add_edge(d.adj, n - 3, n - 2);
        add_edge(d.adj, n - 3, n - 1);
        d.coxeter = 2 * n - 2;
    } else if (type == 'E' && (n == 6 || n == 7 || n == 8)) {
        d.adj.assign(n, std::vector<int>(n, 0));
        // long arm first: v0..v(n-3) is the chain, v(n-2) continues the chain,
        // v(n-1) hangs off the trivalent node.
        // E6: chain v0-v1-v2-v3-v4, v5 attached to v2 (arms 2,2,1)
        // E7: chain v0..v5, v6 attached to v3 (arms 3,2,1)
        // E8: chain v0..v6, v7 attached to v4 (arms 4,2,1)
        int chain = n - 1;
        for (int i = 0; i + 1 < chain; ++i) add_edge(d.adj, i, i + 1);
        int branch = n == 6 ? 2 : (n == 7 ? 3 : 4);
        add_edge(d.adj, branch, n - 1);
        d.coxeter = n == 6 ? 12 : (n == 7 ? 18 : 30);
    } else {
        throw Error("dynkin: invalid name '" + name + "'");
    }
    for (int i = 0; i < n; ++i) d.verts.push_back("v" + std::to_string(i));

    // PF data via the bipartite machinery on the 2-colored graph.
    d.color.assign(n, -1);
    d.color[0] = 0;
    std::vector<int> stack{0};
    while (!stack.empty()) {
        int v = stack.back();
        stack.pop_back();
        for (int u = 0; u < n; ++u)
            if (d.adj[v][u] && d.color[u] < 0) {
                d.color[u] = 1 - d.color[v];
                stack.push_back(u);
            }
    }
    if (n == 1) {
        d.beta = 0.0;  // A_1 has no edges; beta fixed from Coxeter number below
        d.mu = {1.0};
    } else {
        PFData pf = pf_data(d.bipartite(), 1e-13, d.verts[0]);
        d.beta = pf.beta;
        for (int i = 0; i < n; ++i) d.mu.push_back(pf.mu.at(d.verts[i]));
    }
    if (n == 1) d.beta = 2 * std::cos(kPi / d.coxeter);
    d.basepoint = d.verts[0];

    // Basepoint must carry the smallest weight and beta must match 2cos(pi/h).
    for (double m : d.mu)
        if (m < d.mu[0] - 1e-9) throw Error("dynkin: basepoint weight not minimal");
    if (std::abs(d.beta - 2 * std::cos(kPi / d.coxeter)) > 1e-9)
        throw Error("dynkin: Perron-Frobenius eigenvalue does not match Coxeter number");
    return d;
}

namespace {

Connection build_dynkin_cells(const DynkinDiagram& d, cplx eps) {
    BipartiteGraph g = d.bipartite();
    ConnectionShape s;
    s.V0 = g.even;
    s.V3 = g.odd;
    s.V1 = g.odd;
    s.V2 = g.even;
    s.g_top = g;
    s.h_left = g;
    s.g_bot = g;
    s.h_right = g;
    auto wfor = [&](const std::vector<std::string>& vs) {
        std::vector<double> w;
        for (const auto& id : vs) {
            int i = std::stoi(id.substr(1));
            w.push_back(d.mu[i]);
        }
        return w;
    };
    s.w0 = wfor(s.V0);
    s.w1 = wfor(s.V1);
    s.w2 = wfor(s.V2);
    s.w3 = wfor(s.V3);

    std::vector<CellValue> vals;
    for (size_t a = 0; a < s.V0.size(); ++a)
        for (size_t b = 0; b < s.V1.size(); ++b) {
            if (!s.h_left.mult[a][b]) continue;
            for (size_t c = 0; c < s.V2.size(); ++c) {
                if (!s.g_bot.mult[c][b]) continue;
                for (size_t e = 0; e < s.V3.size(); ++e) {
                    if (!s.g_top.mult[a][e] || !s.h_right.mult[c][e]) continue;
                    cplx v(0, 0);
                    if (s.V1[b] == s.V3[e]) v += eps;
                    if (s.V0[a] == s.V2[c])
                        v += std::sqrt(s.w1[b] * s.w3[e] / (s.w0[a] * s.w2[c])) * std::conj(eps);
                    CellValue cv;
                    cv.cell = Cell{s.V0[a], s.V1[b], s.V2[c], s.V3[e], 0, 0, 0, 0};
                    cv.value = v;
                    vals.push_back(cv);
                }
            }
        }
    return make_connection(s, vals);
}

int select_exponent(const DynkinDiagram& d) {
    int best = 0;
    double best_res = 1e99;
    for (int p : {d.coxeter - 1, d.coxeter, d.coxeter + 1}) {
        cplx eps = cplx(0, 1) * std::exp(cplx(0, kPi / (2.0 * p)));
        Connection w = build_dynkin_cells(d, eps);
        double res = std::max(unitarity_residual(w), unitarity_residual(conjugate(w)));
        if (res < best_res) {
            best_res = res;
            best = p;
        }
    }
    return best;
}

}  // namespace

int ocneanu_epsilon_exponent(const DynkinDiagram& d) {
    static std::map<std::string, int> cache;
    auto it = cache.find(d.name);
    if (it != cache.end()) return it->second;
    int p = select_exponent(d);
    cache[d.name] = p;
    return p;
}

Connection ocneanu_connection(const DynkinDiagram& d, char chirality) {
    int p = ocneanu_epsilon_exponent(d);
    cplx eps = cplx(0, 1) * std::exp(cplx(0, kPi / (2.0 * p)));
    if (chirality == '-') eps = std::conj(eps);
    else if (chirality != '+') throw Error("ocneanu_connection: chirality must be '+' or '-'");
    Connection w = build_dynkin_cells(d, eps);
    double res = std::max(unitarity_residual(w), unitarity_residual(conjugate(w)));
    if (res > 1e-10)
        throw Error("ocneanu_connection: bi-unitarity residual " + std::to_string(res) +
                    " too large (epsilon convention)");
    return w;
}

}  // namespace biconn
