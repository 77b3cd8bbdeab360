#include "hyperloc/lattice.hpp"

#include <algorithm>
#include <stdexcept>

namespace hyperloc {

TorusAction build_action(const IntMat& a) {
    const std::size_t n = row_count(a);
    const std::size_t d = col_count(a);
    if (n == 0 || d == 0) throw std::invalid_argument("build_action: empty matrix");
    for (const auto& row : a)
        if (row.size() != d) throw std::invalid_argument("build_action: ragged matrix");
    if (!(d > 0 && d < n))
        throw std::invalid_argument("build_action: require 0 < d < n");
    if (int_rank(a) != d)
        throw std::invalid_argument("build_action: matrix is rank deficient");

    TorusAction action;
    action.n = static_cast<int>(n);
    action.d = static_cast<int>(d);
    action.a = a;
    action.pi = left_kernel(a);  // bottom rows of the HNF transform, a Z-basis
    if (row_count(action.pi) != n - d)
        throw std::logic_error("build_action: kernel rank mismatch");
    // pi is surjective by construction (its rows extend to a basis of Z^n);
    // check the no-torsion invariant anyway.
    std::vector<Int> inv = smith_invariants(action.pi);
    for (const Int& f : inv)
        if (f != 1) throw std::logic_error("build_action: quotient map not surjective");
    return action;
}

bool is_unimodular(const TorusAction& action) {
    // All nonzero maximal minors of pi must share one absolute value; the
    // surjectivity invariant normalizes that common value to 1.
    std::vector<Int> minors = maximal_minors(action.pi);
    Int g = 0;
    for (const Int& m : minors) {
        if (m == 0) continue;
        Int am = abs(m);
        if (g == 0)
            g = am;
        else if (am != g)
            return false;
    }
    return g != 0;
}

Character restrict_tilde_character(const TorusAction& action, const TildeCharacter& chi) {
    const int n = action.n, d = action.d;
    if (chi.coords.size() != static_cast<std::size_t>(2 * n))
        throw std::invalid_argument("restrict_tilde_character: length must be 2n");
    Character out;
    out.coords.assign(d, 0);
    for (int i = 0; i < n; ++i) {
        Int w = chi.coords[i] - chi.coords[n + i];
        if (w == 0) continue;
        for (int j = 0; j < d; ++j) out.coords[j] += w * action.a[i][j];
    }
    return out;
}

CocharacterIntersection cocharacter_intersection(const TorusAction& action,
                                                 const std::set<int>& index_set) {
    const int d = action.d;
    IntMat constraints;
    for (int i : index_set) {
        if (i < 1 || i > action.n)
            throw std::invalid_argument("cocharacter_intersection: index out of range");
        constraints.push_back(action.a[i - 1]);
    }
    CocharacterIntersection out;
    if (constraints.empty()) {
        out.rank = d;
        if (d == 1) {
            Cocharacter gen;
            gen.coords = {Int(1)};
            gen.embedded = mat_vec(action.a, gen.coords);
            out.generator = gen;
        }
        return out;
    }
    IntMat ker = right_kernel(constraints);
    out.rank = static_cast<int>(row_count(ker));
    if (out.rank == 1) {
        Cocharacter gen;
        gen.coords = ker[0];
        gen.embedded = mat_vec(action.a, gen.coords);
        out.generator = gen;
    }
    return out;
}

namespace {
std::vector<Wall> walls_from_subsets(const TorusAction& action, bool complement_labels) {
    const int n = action.n;
    std::vector<Wall> walls;
    std::vector<IntVec> seen_normals;
    for (unsigned mask = 0; mask < (1u << n); ++mask) {
        std::set<int> idx;
        for (int i = 0; i < n; ++i)
            if (mask & (1u << i)) idx.insert(i + 1);
        CocharacterIntersection ci = cocharacter_intersection(action, idx);
        if (ci.rank != 1) continue;
        IntVec normal = ci.generator->coords;
        // Canonical sign: first nonzero entry positive.
        for (const Int& x : normal) {
            if (x == 0) continue;
            if (x < 0)
                for (Int& y : normal) y = -y;
            break;
        }
        if (std::find(seen_normals.begin(), seen_normals.end(), normal) != seen_normals.end())
            continue;
        seen_normals.push_back(normal);
        Wall w;
        if (complement_labels) {
            for (int i = 1; i <= n; ++i)
                if (!idx.count(i)) w.index_set.insert(i);
        } else {
            w.index_set = idx;
        }
        w.normal.coords = normal;
        w.normal.embedded = mat_vec(action.a, normal);
        walls.push_back(w);
    }
    return walls;
}
}  // namespace

std::vector<Wall> wall_arrangement(const TorusAction& action) {
    return walls_from_subsets(action, false);
}

std::vector<Wall> wall_arrangement_complementary(const TorusAction& action) {
    return walls_from_subsets(action, true);
}

bool is_smooth_parameter(const TorusAction& action, const Character& delta) {
    for (const Wall& w : wall_arrangement(action))
        if (dot(delta.coords, w.normal.coords) == 0) return false;
    return true;
}

bool is_admissible_parameter(const TorusAction& action, const Character& delta) {
    if (!is_smooth_parameter(action, delta)) return false;
    // Span condition: delta must avoid the Z-span of every set of fewer than
    // d coordinate-character restrictions.
    const int n = action.n, d = action.d;
    for (unsigned mask = 0; mask < (1u << n); ++mask) {
        int size = __builtin_popcount(mask);
        if (size >= d) continue;
        IntMat rows;
        for (int i = 0; i < n; ++i)
            if (mask & (1u << i)) rows.push_back(action.a[i]);
        if (rows.empty()) {
            bool zero = true;
            for (const Int& x : delta.coords)
                if (x != 0) zero = false;
            if (zero) return false;
            continue;
        }
        if (in_row_lattice(rows, delta.coords)) return false;
    }
    return true;
}

}  // namespace hyperloc
