#include "hyperloc/polytope.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace hyperloc {

FiberPolyhedron build_P(const TorusAction& action, const Character& delta) {
    if (delta.coords.size() != static_cast<std::size_t>(action.d))
        throw std::invalid_argument("build_P: delta must have length d");
    FiberPolyhedron p;
    p.action = action;
    p.delta = delta;
    const int n = action.n, d = action.d;
    p.eq.assign(d, IntVec(2 * n, 0));
    for (int j = 0; j < d; ++j)
        for (int i = 0; i < n; ++i) {
            p.eq[j][i] = action.a[i][j];
            p.eq[j][n + i] = -action.a[i][j];
        }
    return p;
}

namespace {
void subset_rec(const FiberPolyhedron& p, std::size_t start, std::size_t max_size,
                std::vector<std::size_t>& picked, std::set<IntVec>& points) {
    const std::size_t nc = col_count(p.eq);
    if (!picked.empty()) {
        if (column_rank(p.eq, picked) == picked.size()) {
            IntMat sub(row_count(p.eq), IntVec(picked.size()));
            for (std::size_t i = 0; i < row_count(p.eq); ++i)
                for (std::size_t j = 0; j < picked.size(); ++j) sub[i][j] = p.eq[i][picked[j]];
            auto sol = solve_unique_rational(sub, p.delta.coords);
            if (sol) {
                bool ok = true;
                IntVec point(nc, 0);
                for (std::size_t j = 0; j < picked.size() && ok; ++j) {
                    const Rat& x = (*sol)[j];
                    if (x < 0) { ok = false; break; }
                    if (x.get_den() != 1)
                        throw std::logic_error(
                            "enumerate_vertices: non-unimodular input slipped through "
                            "(non-integral basic solution)");
                    point[picked[j]] = x.get_num();
                }
                if (ok) points.insert(point);
            }
        } else {
            return;  // dependent subset; supersets stay dependent
        }
    } else {
        // The zero solution is a vertex exactly when delta = 0.
        bool zero = std::all_of(p.delta.coords.begin(), p.delta.coords.end(),
                                [](const Int& x) { return x == 0; });
        if (zero) points.insert(IntVec(nc, 0));
    }
    if (picked.size() == max_size) return;
    for (std::size_t c = start; c < nc; ++c) {
        picked.push_back(c);
        subset_rec(p, c + 1, max_size, picked, points);
        picked.pop_back();
    }
}
}  // namespace

std::vector<Vertex> enumerate_vertices(const FiberPolyhedron& p) {
    std::set<IntVec> points;
    std::vector<std::size_t> picked;
    subset_rec(p, 0, static_cast<std::size_t>(p.action.d), picked, points);
    std::vector<Vertex> out;
    for (const IntVec& pt : points) out.push_back(Vertex{pt});
    return out;
}

VertexMonomial vertex_monomial(const Vertex& v, int n) {
    if (v.coords.size() != static_cast<std::size_t>(2 * n))
        throw std::invalid_argument("vertex_monomial: length must be 2n");
    VertexMonomial m;
    m.x_exponents.assign(v.coords.begin(), v.coords.begin() + n);
    m.d_exponents.assign(v.coords.begin() + n, v.coords.end());
    return m;
}

NStats n_stats(const std::vector<Vertex>& vertices) {
    if (vertices.empty()) throw std::invalid_argument("n_stats: empty polyhedron");
    NStats stats;
    stats.n_delta = 0;
    for (const Vertex& v : vertices) {
        Int ni = 0;
        for (const Int& c : v.coords) {
            Int a = abs(c);
            if (a > ni) ni = a;
        }
        stats.per_vertex.push_back(ni);
        stats.n_delta = std::max(stats.n_delta, ni);
    }
    return stats;
}

MinNResult search_min_N(const TorusAction& action, long radius) {
    if (radius < 1) throw std::invalid_argument("search_min_N: radius must be >= 1");
    const int d = action.d;
    IntVec current(d, -radius);
    bool found = false;
    MinNResult best;
    best.radius = radius;
    while (true) {
        Character delta{current};
        if (is_admissible_parameter(action, delta)) {
            auto vertices = enumerate_vertices(build_P(action, delta));
            if (!vertices.empty()) {
                Int nv = n_stats(vertices).n_delta;
                if (!found || nv < best.n_value) {  // lex scan order breaks ties
                    found = true;
                    best.delta_star = delta;
                    best.n_value = nv;
                }
            }
        }
        // Advance lexicographically through the box.
        int pos = d - 1;
        while (pos >= 0 && current[pos] == radius) {
            current[pos] = -radius;
            --pos;
        }
        if (pos < 0) break;
        current[pos] += 1;
    }
    if (!found)
        throw std::runtime_error("search_min_N: no admissible delta in box; increase radius");
    return best;
}

}  // namespace hyperloc
