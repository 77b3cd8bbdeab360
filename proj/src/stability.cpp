#include "hyperloc/stability.hpp"

#include <algorithm>

namespace hyperloc {

namespace {

// T~-weight of coordinate i (1-based in {1..2n}): +a_i for i <= n,
// -a_{i-n} for i > n.
IntVec coordinate_weight(const TorusAction& action, int i) {
    IntVec w(action.d);
    if (i <= action.n) {
        for (int k = 0; k < action.d; ++k) w[k] = action.a[i - 1][k];
    } else {
        for (int k = 0; k < action.d; ++k) w[k] = -action.a[i - action.n - 1][k];
    }
    return w;
}

Int binom(long n, long k) {
    if (k < 0 || k > n) return 0;
    Int r;
    mpz_bin_uiui(r.get_mpz_t(), n, k);
    return r;
}

}  // namespace

bool support_semistable(const TorusAction& action, const Character& delta,
                        const SupportPattern& s) {
    for (int i : s.support)
        if (i < 1 || i > 2 * action.n)
            throw std::invalid_argument("support index out of range");
    // delta = 0: the constant monomial (u = 0) has weight m*0 for any m > 0.
    bool zero = std::all_of(delta.coords.begin(), delta.coords.end(),
                            [](const Int& c) { return c == 0; });
    if (zero) return true;
    // Caratheodory over the cone: delta lies in cone(w_i : i in S) iff it is
    // a nonnegative combination of some linearly independent subset.
    std::vector<IntVec> gens;
    for (int i : s.support) gens.push_back(coordinate_weight(action, i));
    const std::size_t g = gens.size();
    const int d = action.d;
    std::vector<std::size_t> pick;
    auto try_pick = [&]() -> bool {
        IntMat m(d, IntVec(pick.size()));
        for (int r = 0; r < d; ++r)
            for (std::size_t c = 0; c < pick.size(); ++c) m[r][c] = gens[pick[c]][r];
        std::vector<std::size_t> all_cols(pick.size());
        for (std::size_t c = 0; c < pick.size(); ++c) all_cols[c] = c;
        if (column_rank(m, all_cols) != pick.size()) return false;
        auto sol = solve_unique_rational(m, delta.coords);
        if (!sol) return false;
        for (const Rat& u : *sol)
            if (u < 0) return false;
        return true;
    };
    auto rec = [&](auto&& self, std::size_t start) -> bool {
        if (!pick.empty() && try_pick()) return true;
        if (pick.size() == static_cast<std::size_t>(d)) return false;
        for (std::size_t i = start; i < g; ++i) {
            pick.push_back(i);
            if (self(self, i + 1)) {
                pick.pop_back();
                return true;
            }
            pick.pop_back();
        }
        return false;
    };
    return rec(rec, 0);
}

namespace {

// Semistability per support pattern, memoized over the 2^{2n} patterns.
std::vector<char> semistable_by_support(const TorusAction& action, const Character& delta) {
    const int nn = 2 * action.n;
    std::vector<char> table(1u << nn, 0);
    for (unsigned mask = 0; mask < table.size(); ++mask) {
        SupportPattern s;
        for (int i = 0; i < nn; ++i)
            if (mask & (1u << i)) s.support.insert(i + 1);
        table[mask] = support_semistable(action, delta, s) ? 1 : 0;
    }
    return table;
}

template <class CB>
void foreach_point(int nn, long q, unsigned long long guard, CB cb) {
    unsigned long long total = 1;
    for (int i = 0; i < nn; ++i) {
        total *= static_cast<unsigned long long>(q);
        if (total > guard)
            throw GuardExceeded("stability table: q^(2n) exceeds the enumeration guard");
    }
    std::vector<long> point(nn, 0);
    while (true) {
        cb(point);
        int pos = nn - 1;
        while (pos >= 0 && point[pos] == q - 1) point[pos--] = 0;
        if (pos < 0) return;
        ++point[pos];
    }
}

unsigned support_mask(const std::vector<long>& point) {
    unsigned mask = 0;
    for (std::size_t i = 0; i < point.size(); ++i)
        if (point[i] != 0) mask |= (1u << i);
    return mask;
}

}  // namespace

std::set<std::vector<long>> unstable_table(const TorusAction& action, const Character& delta,
                                           long q, unsigned long long guard) {
    if (q < 2) throw std::invalid_argument("q must be at least 2");
    auto ss = semistable_by_support(action, delta);
    std::set<std::vector<long>> out;
    foreach_point(2 * action.n, q, guard, [&](const std::vector<long>& pt) {
        if (!ss[support_mask(pt)]) out.insert(pt);
    });
    return out;
}

bool check_unstable_generators_with(const TorusAction& action, const Character& delta, long q,
                                    const std::vector<Vertex>& vertices,
                                    unsigned long long guard) {
    if (q < 2) throw std::invalid_argument("q must be at least 2");
    auto ss = semistable_by_support(action, delta);
    // f_v vanishes at a point iff some coordinate in the support of v is zero,
    // so its vanishing is a support-pattern condition too.
    const int nn = 2 * action.n;
    std::vector<unsigned> vertex_masks;
    for (const Vertex& v : vertices) {
        unsigned mask = 0;
        for (int i = 0; i < nn; ++i)
            if (v.coords[i] != 0) mask |= (1u << i);
        vertex_masks.push_back(mask);
    }
    bool equal = true;
    foreach_point(nn, q, guard, [&](const std::vector<long>& pt) {
        if (!equal) return;
        unsigned mask = support_mask(pt);
        bool all_vanish = true;
        for (unsigned vm : vertex_masks)
            if ((mask & vm) == vm) {  // every coordinate of the monomial is nonzero
                all_vanish = false;
                break;
            }
        bool unstable = !ss[mask];
        if (all_vanish != unstable) equal = false;
    });
    return equal;
}

bool check_unstable_generators(const TorusAction& action, const Character& delta, long q,
                               unsigned long long guard) {
    auto verts = enumerate_vertices(build_P(action, delta));
    return check_unstable_generators_with(action, delta, q, verts, guard);
}

namespace {

// k-subsets of {0..s-1} in lexicographic order.
std::vector<std::vector<int>> subsets_of_size(int s, int k) {
    std::vector<std::vector<int>> out;
    std::vector<int> cur;
    auto rec = [&](auto&& self, int start) -> void {
        if (static_cast<int>(cur.size()) == k) {
            out.push_back(cur);
            return;
        }
        for (int i = start; i < s; ++i) {
            cur.push_back(i);
            self(self, i + 1);
            cur.pop_back();
        }
    };
    rec(rec, 0);
    return out;
}

}  // namespace

KoszulData koszul_data(const std::vector<Vertex>& vertices, long m) {
    if (vertices.empty()) throw std::invalid_argument("koszul_data: empty vertex list");
    KoszulData k;
    k.s = static_cast<long>(vertices.size());
    k.m = m;
    k.weights.assign(k.s, 1);
    for (long deg = k.s; deg >= 0; --deg)
        k.terms.push_back(KoszulTerm{deg, binom(k.s, deg), Int(m + (k.s - deg))});
    const int s = static_cast<int>(k.s);
    for (int deg = 1; deg <= s; ++deg) {
        auto rows = subsets_of_size(s, deg - 1);
        auto cols = subsets_of_size(s, deg);
        std::map<std::vector<int>, std::size_t> row_index;
        for (std::size_t i = 0; i < rows.size(); ++i) row_index[rows[i]] = i;
        std::vector<KoszulEntry> diff;
        for (std::size_t c = 0; c < cols.size(); ++c) {
            const auto& sub = cols[c];
            for (int pos = 0; pos < deg; ++pos) {
                std::vector<int> rest;
                for (int i = 0; i < deg; ++i)
                    if (i != pos) rest.push_back(sub[i]);
                KoszulEntry e;
                e.row = row_index.at(rest);
                e.col = c;
                e.sign = (pos % 2 == 0) ? 1 : -1;
                e.gen = static_cast<std::size_t>(sub[pos]);
                diff.push_back(e);
            }
        }
        k.differentials.push_back(std::move(diff));
    }
    return k;
}

bool koszul_d_squared_zero(const KoszulData& k) {
    // Entries commute (polynomial symbols), so the composite entry at
    // (row, col) is a signed sum of monomials f_i f_j; collect and compare.
    for (std::size_t step = 1; step < k.differentials.size(); ++step) {
        const auto& d_hi = k.differentials[step];      // degree step+1 -> step
        const auto& d_lo = k.differentials[step - 1];  // degree step -> step-1
        // composite[(row, col)][(i<=j)] -> coefficient
        std::map<std::pair<std::size_t, std::size_t>,
                 std::map<std::pair<std::size_t, std::size_t>, long>>
            composite;
        for (const auto& hi : d_hi)
            for (const auto& lo : d_lo) {
                if (lo.col != hi.row) continue;
                auto mono = std::minmax(lo.gen, hi.gen);
                composite[{lo.row, hi.col}][{mono.first, mono.second}] +=
                    lo.sign * hi.sign;
            }
        for (const auto& [cell, poly] : composite)
            for (const auto& [mono, coef] : poly)
                if (coef != 0) return false;
    }
    return true;
}

}  // namespace hyperloc
