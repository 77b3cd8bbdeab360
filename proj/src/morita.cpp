#include "hyperloc/morita.hpp"

#include <algorithm>
#include <map>
#include <unordered_set>

namespace hyperloc {

namespace {

long mod_reduce(long v, long p) { return ((v % p) + p) % p; }

long mod_reduce(const Int& v, long p) {
    Int r = v % p;
    if (r < 0) r += p;
    return r.get_si();
}

void require_prime(long p) {
    if (!is_prime(p)) throw std::invalid_argument("p must be prime");
}

std::vector<long> delta_residue(const Character& delta, long p) {
    std::vector<long> r;
    r.reserve(delta.coords.size());
    for (const Int& c : delta.coords) r.push_back(mod_reduce(c, p));
    return r;
}

std::vector<long> add_mod(const std::vector<long>& a, const std::vector<long>& b, long p,
                          long mult = 1) {
    std::vector<long> out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = mod_reduce(a[i] + mult * b[i], p);
    return out;
}

unsigned long long ipow(unsigned long long b, unsigned e) {
    unsigned long long r = 1;
    while (e--) r *= b;
    return r;
}

unsigned long long encode(const std::vector<long>& v, long p) {
    unsigned long long code = 0;
    for (auto it = v.rbegin(); it != v.rend(); ++it) code = code * p + *it;
    return code;
}

std::vector<long> decode(unsigned long long code, long p, std::size_t d) {
    std::vector<long> v(d);
    for (std::size_t i = 0; i < d; ++i) {
        v[i] = static_cast<long>(code % p);
        code /= p;
    }
    return v;
}

// A pinning box: per coordinate either a fixed residue or kFree.
constexpr long kFree = -1;

// Per-system, per-coordinate root residues, deduplicated.
std::vector<std::vector<std::vector<long>>> residue_roots(
    const std::vector<EulerFactorSystem>& systems, long p) {
    std::vector<std::vector<std::vector<long>>> out;
    for (const auto& sys : systems) {
        std::vector<std::vector<long>> per_coord(sys.n);
        for (int j = 0; j < sys.n; ++j) {
            std::set<long> uniq;
            for (long r : sys.roots[j]) uniq.insert(mod_reduce(r, p));
            per_coord[j].assign(uniq.begin(), uniq.end());
        }
        out.push_back(std::move(per_coord));
    }
    return out;
}

void boxes_rec(const std::vector<std::vector<std::vector<long>>>& roots, std::size_t i, int n,
               std::vector<long>& pins, std::set<std::vector<long>>& out) {
    if (i == roots.size()) {
        out.insert(pins);
        return;
    }
    // Already satisfied by an earlier pin?
    for (int j = 0; j < n; ++j)
        if (pins[j] != kFree &&
            std::binary_search(roots[i][j].begin(), roots[i][j].end(), pins[j])) {
            boxes_rec(roots, i + 1, n, pins, out);
            return;
        }
    for (int j = 0; j < n; ++j) {
        if (pins[j] != kFree) continue;
        for (long r : roots[i][j]) {
            pins[j] = r;
            boxes_rec(roots, i + 1, n, pins, out);
            pins[j] = kFree;
        }
    }
}

std::set<std::vector<long>> common_root_boxes(const std::vector<EulerFactorSystem>& systems,
                                              long p, int n) {
    auto roots = residue_roots(systems, p);
    std::set<std::vector<long>> boxes;
    std::vector<long> pins(n, kFree);
    boxes_rec(roots, 0, n, pins, boxes);
    return boxes;
}

long inv_mod(long a, long p) {
    long r = 1, b = a % p, e = p - 2;
    while (e) {
        if (e & 1) r = r * b % p;
        b = b * b % p;
        e >>= 1;
    }
    return r;
}

// Rows of the coefficient matrix for the free coordinates of a box: the
// mu-dual image over the box is { base + sum t_f * row_f : t in F_p^F }.
struct BoxImage {
    std::vector<long> base;                  // length d
    std::vector<std::vector<long>> echelon;  // row-echelon basis of the span, mod p
    std::vector<int> pivot_cols;
};

BoxImage box_image(const TorusAction& action, const std::vector<long>& box, long p) {
    const int n = action.n, d = action.d;
    BoxImage img;
    img.base.assign(d, 0);
    std::vector<std::vector<long>> rows;
    for (int i = 0; i < n; ++i) {
        if (box[i] == kFree) {
            std::vector<long> row(d);
            for (int k = 0; k < d; ++k) row[k] = mod_reduce(action.a[i][k], p);
            rows.push_back(row);
        } else {
            for (int k = 0; k < d; ++k)
                img.base[k] = mod_reduce(img.base[k] + box[i] * mod_reduce(action.a[i][k], p), p);
        }
    }
    // Row echelon form mod p.
    std::size_t rank = 0;
    for (int col = 0; col < d && rank < rows.size(); ++col) {
        std::size_t piv = rank;
        while (piv < rows.size() && rows[piv][col] == 0) ++piv;
        if (piv == rows.size()) continue;
        std::swap(rows[rank], rows[piv]);
        long inv = inv_mod(rows[rank][col], p);
        for (int k = 0; k < d; ++k) rows[rank][k] = rows[rank][k] * inv % p;
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (i == rank || rows[i][col] == 0) continue;
            long f = rows[i][col];
            for (int k = 0; k < d; ++k)
                rows[i][k] = mod_reduce(rows[i][k] - f * rows[rank][k], p);
        }
        img.pivot_cols.push_back(col);
        ++rank;
    }
    rows.resize(rank);
    img.echelon = rows;
    return img;
}

// If target lies in the box image, produce a witness root xi.
std::optional<std::vector<long>> box_witness(const TorusAction& action,
                                             const std::vector<long>& box, long p,
                                             const std::vector<long>& target) {
    const int n = action.n, d = action.d;
    BoxImage img = box_image(action, box, p);
    std::vector<long> rem(d);
    for (int k = 0; k < d; ++k) rem[k] = mod_reduce(target[k] - img.base[k], p);
    std::vector<long> scale(img.echelon.size(), 0);
    for (std::size_t r = 0; r < img.echelon.size(); ++r) {
        long c = rem[img.pivot_cols[r]];
        scale[r] = c;
        for (int k = 0; k < d; ++k) rem[k] = mod_reduce(rem[k] - c * img.echelon[r][k], p);
    }
    for (int k = 0; k < d; ++k)
        if (rem[k] != 0) return std::nullopt;
    // Reconstruct a point: solve for the free coordinates giving the echelon
    // combination. Greedy back-substitution on the original free rows.
    std::vector<long> want(d);
    for (int k = 0; k < d; ++k) want[k] = mod_reduce(target[k] - img.base[k], p);
    // Gaussian solve of (free rows)^T t = want with augmented elimination.
    std::vector<int> free_idx;
    for (int i = 0; i < n; ++i)
        if (box[i] == kFree) free_idx.push_back(i);
    std::size_t m = free_idx.size();
    std::vector<std::vector<long>> aug(d, std::vector<long>(m + 1, 0));
    for (int k = 0; k < d; ++k) {
        for (std::size_t f = 0; f < m; ++f) aug[k][f] = mod_reduce(action.a[free_idx[f]][k], p);
        aug[k][m] = want[k];
    }
    std::size_t row = 0;
    std::vector<std::size_t> pivot_col_of_row;
    for (std::size_t col = 0; col < m && row < static_cast<std::size_t>(d); ++col) {
        std::size_t piv = row;
        while (piv < static_cast<std::size_t>(d) && aug[piv][col] == 0) ++piv;
        if (piv == static_cast<std::size_t>(d)) continue;
        std::swap(aug[row], aug[piv]);
        long inv = inv_mod(aug[row][col], p);
        for (std::size_t j = col; j <= m; ++j) aug[row][j] = aug[row][j] * inv % p;
        for (std::size_t i = 0; i < static_cast<std::size_t>(d); ++i) {
            if (i == row || aug[i][col] == 0) continue;
            long f = aug[i][col];
            for (std::size_t j = col; j <= m; ++j)
                aug[i][j] = mod_reduce(aug[i][j] - f * aug[row][j], p);
        }
        pivot_col_of_row.push_back(col);
        ++row;
    }
    for (std::size_t i = row; i < static_cast<std::size_t>(d); ++i)
        if (aug[i][m] != 0) return std::nullopt;  // membership said yes, keep safe anyway
    std::vector<long> t(m, 0);
    for (std::size_t r2 = 0; r2 < row; ++r2) t[pivot_col_of_row[r2]] = aug[r2][m];
    std::vector<long> xi(box);
    for (std::size_t f = 0; f < m; ++f) xi[free_idx[f]] = t[f];
    return xi;
}

// Enumerate the mu-dual image of a box, calling cb(value, witness_xi).
template <class CB>
void box_image_foreach(const TorusAction& action, const std::vector<long>& box, long p, CB cb) {
    BoxImage img = box_image(action, box, p);
    std::size_t rank = img.echelon.size();
    std::vector<long> coeff(rank, 0);
    const int d = action.d;
    auto emit = [&]() {
        std::vector<long> value = img.base;
        for (std::size_t r = 0; r < rank; ++r)
            for (int k = 0; k < d; ++k)
                value[k] = mod_reduce(value[k] + coeff[r] * img.echelon[r][k], p);
        auto xi = box_witness(action, box, p, value);
        cb(value, *xi);
    };
    // Odometer over F_p^rank.
    while (true) {
        emit();
        std::size_t pos = 0;
        while (pos < rank && coeff[pos] == p - 1) coeff[pos++] = 0;
        if (pos == rank) break;
        ++coeff[pos];
    }
}

// Brute-force scan over F_p^n with per-coordinate satisfaction bitmasks.
template <class CB>
void brute_foreach(const std::vector<EulerFactorSystem>& systems, long p,
                   unsigned long long guard, int n, CB cb) {
    require_prime(p);
    if (systems.size() > 63) throw std::invalid_argument("too many systems");
    unsigned long long total = 1;
    for (int i = 0; i < n; ++i) {
        total *= static_cast<unsigned long long>(p);
        if (total > guard)
            throw GuardExceeded(
                "common_roots_brute: p^n exceeds the enumeration guard; "
                "use common_roots_solve or raise the guard explicitly");
    }
    const std::uint64_t full = systems.empty() ? 0 : ((1ULL << systems.size()) - 1);
    auto roots = residue_roots(systems, p);
    // mask[j][x]: systems satisfied when coordinate j takes value x.
    std::vector<std::vector<std::uint64_t>> mask(n, std::vector<std::uint64_t>(p, 0));
    for (std::size_t i = 0; i < systems.size(); ++i)
        for (int j = 0; j < n; ++j)
            for (long r : roots[i][j]) mask[j][r] |= (1ULL << i);
    std::vector<long> point(n, 0);
    auto rec = [&](auto&& self, int j, std::uint64_t acc) -> void {
        if (j == n - 1) {
            for (long x = 0; x < p; ++x)
                if ((acc | mask[j][x]) == full) {
                    point[j] = x;
                    cb(point);
                }
            return;
        }
        for (long x = 0; x < p; ++x) {
            point[j] = x;
            self(self, j + 1, acc | mask[j][x]);
        }
    };
    if (n == 0) {
        if (full == 0) cb(point);
        return;
    }
    rec(rec, 0, 0);
}

int systems_dim(const std::vector<EulerFactorSystem>& systems) {
    return systems.empty() ? 0 : systems.front().n;
}

std::vector<Vertex> vertices_or_throw(const TorusAction& action, const Character& delta) {
    if (!is_smooth_parameter(action, delta))
        throw std::invalid_argument("delta is not a smooth parameter");
    auto verts = enumerate_vertices(build_P(action, delta));
    if (verts.empty()) throw std::runtime_error("empty polyhedron: no Koszul generators");
    return verts;
}

}  // namespace

FpWeight reduce_weight(const IntVec& v, long p) {
    FpWeight w;
    w.p = p;
    for (const Int& x : v) w.coords.push_back(mod_reduce(x, p));
    return w;
}

FpWeight reduce_weight(const std::vector<long>& v, long p) {
    FpWeight w;
    w.p = p;
    for (long x : v) w.coords.push_back(mod_reduce(x, p));
    return w;
}

std::vector<long> signed_lift(const FpWeight& w) {
    std::vector<long> out;
    for (long x : w.coords) out.push_back(2 * x < w.p ? x : x - w.p);
    return out;
}

FpWeight mu_dual(const TorusAction& action, const std::vector<long>& xi, long p) {
    require_prime(p);
    if (xi.size() != static_cast<std::size_t>(action.n))
        throw std::invalid_argument("mu_dual: point length mismatch");
    FpWeight w;
    w.p = p;
    w.coords.assign(action.d, 0);
    for (int k = 0; k < action.d; ++k) {
        long acc = 0;
        for (int i = 0; i < action.n; ++i)
            acc = mod_reduce(acc + mod_reduce(xi[i], p) * mod_reduce(action.a[i][k], p), p);
        w.coords[k] = acc;
    }
    return w;
}

std::vector<EulerFactorSystem> vertex_systems(const std::vector<Vertex>& vertices, long a,
                                              int n, bool gf) {
    std::vector<EulerFactorSystem> out;
    for (const Vertex& v : vertices)
        out.push_back(gf ? factor_system_gf(v, a, n) : factor_system_fg(v, a, n));
    return out;
}

std::vector<std::vector<long>> common_roots_brute_dim(
    const std::vector<EulerFactorSystem>& systems, int n, long p, unsigned long long guard) {
    std::vector<std::vector<long>> out;
    brute_foreach(systems, p, guard, n, [&](const std::vector<long>& xi) { out.push_back(xi); });
    return out;
}

std::vector<std::vector<long>> common_roots_brute(const std::vector<EulerFactorSystem>& systems,
                                                  long p, unsigned long long guard) {
    int n = systems_dim(systems);
    if (n == 0)
        throw std::invalid_argument("common_roots_brute: ambient dimension unknown for empty list");
    return common_roots_brute_dim(systems, n, p, guard);
}

std::vector<std::vector<long>> common_roots_solve_dim(
    const std::vector<EulerFactorSystem>& systems, int n, long p) {
    require_prime(p);
    if (systems.empty()) {
        // No constraints: every point of F_p^n is a common root.
        return common_roots_brute_dim(systems, n, p);
    }
    std::set<std::vector<long>> points;
    for (const auto& box : common_root_boxes(systems, p, n)) {
        // Expand the free coordinates of the box.
        std::vector<int> free_idx;
        for (int i = 0; i < n; ++i)
            if (box[i] == kFree) free_idx.push_back(i);
        std::vector<long> point(box);
        std::vector<long> coeff(free_idx.size(), 0);
        while (true) {
            for (std::size_t f = 0; f < free_idx.size(); ++f) point[free_idx[f]] = coeff[f];
            points.insert(point);
            std::size_t pos = 0;
            while (pos < coeff.size() && coeff[pos] == p - 1) coeff[pos++] = 0;
            if (pos == coeff.size()) break;
            ++coeff[pos];
        }
    }
    return {points.begin(), points.end()};
}

std::vector<std::vector<long>> common_roots_solve(const std::vector<EulerFactorSystem>& systems,
                                                  long p) {
    int n = systems_dim(systems);
    if (n == 0)
        throw std::invalid_argument("common_roots_solve: ambient dimension unknown for empty list");
    return common_roots_solve_dim(systems, n, p);
}

BadSet bad_set(const TorusAction& action, const Character& delta, long p, long a_max) {
    require_prime(p);
    if (a_max < 0) throw std::invalid_argument("bad_set: a_max must be >= 0");
    auto verts = vertices_or_throw(action, delta);
    std::vector<long> ddelta = delta_residue(delta, p);
    BadSet bs;
    bs.p = p;
    bs.a_max = a_max;
    for (long a = 1; a <= a_max; ++a) {
        for (bool gf : {true, false}) {
            auto systems = vertex_systems(verts, a, action.n, gf);
            for (const auto& box : common_root_boxes(systems, p, action.n)) {
                box_image_foreach(action, box, p,
                                  [&](const std::vector<long>& mu, const std::vector<long>& xi) {
                                      std::vector<long> elem =
                                          gf ? mu : add_mod(mu, ddelta, p, -a);
                                      bs.elements[elem].push_back(
                                          RootWitness{a, gf ? "gf" : "fg", xi});
                                  });
            }
        }
    }
    return bs;
}

namespace {

// Does any common root of `systems` have mu-dual equal to `target`?
std::optional<std::vector<long>> find_obstruction(const TorusAction& action,
                                                  const std::vector<EulerFactorSystem>& systems,
                                                  long p, const std::vector<long>& target,
                                                  unsigned long long* boxes_checked = nullptr) {
    for (const auto& box : common_root_boxes(systems, p, action.n)) {
        if (boxes_checked) ++*boxes_checked;
        if (auto xi = box_witness(action, box, p, target)) return xi;
    }
    return std::nullopt;
}

}  // namespace

SingleStepResult single_step_relation(const TorusAction& action, const Character& delta,
                                      long p, const FpWeight& lambda) {
    require_prime(p);
    auto verts = vertices_or_throw(action, delta);
    std::vector<long> ddelta = delta_residue(delta, p);
    SingleStepResult res;
    auto gf = vertex_systems(verts, 1, action.n, true);
    auto fg = vertex_systems(verts, 1, action.n, false);
    auto ob1 = find_obstruction(action, gf, p, lambda.coords);
    res.leq = !ob1.has_value();
    res.leq_witness = ob1;
    auto ob2 = find_obstruction(action, fg, p, add_mod(lambda.coords, ddelta, p, 1));
    res.geq = !ob2.has_value();
    res.geq_witness = ob2;
    return res;
}

namespace {

Certificate make_cert_shell(const TorusAction& action, const Character& delta, long p,
                            const FpWeight& lambda, const std::string& strategy,
                            const std::vector<Vertex>& verts) {
    Certificate cert;
    cert.a_matrix = action.a;
    cert.n = action.n;
    cert.d = action.d;
    cert.delta = delta.coords;
    cert.p = p;
    cert.lambda = lambda.coords;
    cert.strategy = strategy;
    cert.s_delta = static_cast<long>(verts.size());
    cert.n_delta = n_stats(verts).n_delta;
    cert.bound_m = bound_M(action, cert.n_delta);
    cert.p_exceeds_bound = cert.bound_m < p;
    return cert;
}

}  // namespace

CertifyOutcome certify_direct(const TorusAction& action, const Character& delta, long p,
                              const FpWeight& lambda) {
    require_prime(p);
    auto verts = vertices_or_throw(action, delta);
    std::vector<long> ddelta = delta_residue(delta, p);
    Certificate cert = make_cert_shell(action, delta, p, lambda, "direct", verts);
    const long s = cert.s_delta;
    for (long a = 1; a <= s; ++a) {
        for (bool gf : {true, false}) {
            auto systems = vertex_systems(verts, a, action.n, gf);
            std::vector<long> target =
                gf ? lambda.coords : add_mod(lambda.coords, ddelta, p, a);
            unsigned long long boxes = 0;
            if (auto xi = find_obstruction(action, systems, p, target, &boxes))
                return CertifyOutcome{std::nullopt, Refusal{a, gf ? "gf" : "fg", *xi}};
            cert.steps.push_back(CertStep{a, gf ? "gf" : "fg", target, boxes});
        }
    }
    return CertifyOutcome{cert, std::nullopt};
}

CertifyOutcome certify_chain(const TorusAction& action, const Character& delta, long p,
                             const FpWeight& lambda) {
    require_prime(p);
    auto verts = vertices_or_throw(action, delta);
    std::vector<long> ddelta = delta_residue(delta, p);
    Certificate cert = make_cert_shell(action, delta, p, lambda, "chain", verts);
    const long s = cert.s_delta;
    auto gf = vertex_systems(verts, 1, action.n, true);
    auto fg = vertex_systems(verts, 1, action.n, false);
    for (long b = 0; b < s; ++b) {
        std::vector<long> shifted = add_mod(lambda.coords, ddelta, p, b);
        unsigned long long boxes = 0;
        if (auto xi = find_obstruction(action, gf, p, shifted, &boxes))
            return CertifyOutcome{std::nullopt, Refusal{b, "gf", *xi}};
        cert.steps.push_back(CertStep{b, "gf", shifted, boxes});
        std::vector<long> target = add_mod(shifted, ddelta, p, 1);
        boxes = 0;
        if (auto xi = find_obstruction(action, fg, p, target, &boxes))
            return CertifyOutcome{std::nullopt, Refusal{b, "fg", *xi}};
        cert.steps.push_back(CertStep{b, "fg", target, boxes});
    }
    return CertifyOutcome{cert, std::nullopt};
}

namespace {
Int binom(long n, long k) {
    if (k < 0 || k > n) return 0;
    Int r;
    mpz_bin_uiui(r.get_mpz_t(), n, k);
    return r;
}

Int int_pow(const Int& b, long e) {
    Int r;
    mpz_pow_ui(r.get_mpz_t(), b.get_mpz_t(), e);
    return r;
}
}  // namespace

Int bound_prop(const TorusAction& action, const Int& n_value) {
    if (n_value < 0) throw std::invalid_argument("bound_prop: N must be >= 0");
    return binom(action.n, action.d - 1) * int_pow(2 * n_value, action.n - action.d + 1);
}

Int bound_M(const TorusAction& action, const Int& n_value) {
    if (n_value < 0) throw std::invalid_argument("bound_M: N must be >= 0");
    Int base = 2 * binom(action.n, action.d - 1) * n_value + 1;
    return 2 * binom(action.n, action.d) * binom(action.n, action.d - 1) *
           int_pow(base, action.n - action.d + 1);
}

namespace {

// Encoded residue set of uncertifiable lambdas under a strategy. Returns
// nullopt when the whole weight space is bad (a box image of full rank).
std::optional<std::unordered_set<unsigned long long>> bad_codes(
    const TorusAction& action, const std::vector<Vertex>& verts,
    const std::vector<long>& ddelta, long p, const std::string& strategy) {
    const int d = action.d;
    std::unordered_set<unsigned long long> codes;
    const long s = static_cast<long>(verts.size());
    auto absorb = [&](long a, bool gf) -> bool {
        auto systems = vertex_systems(verts, a, action.n, gf);
        for (const auto& box : common_root_boxes(systems, p, action.n)) {
            BoxImage img = box_image(action, box, p);
            if (static_cast<int>(img.echelon.size()) == d) return false;  // everything bad
            box_image_foreach(action, box, p,
                              [&](const std::vector<long>& mu, const std::vector<long>&) {
                                  std::vector<long> elem = gf ? mu : add_mod(mu, ddelta, p, -a);
                                  codes.insert(encode(elem, p));
                              });
        }
        return true;
    };
    if (strategy == "direct") {
        for (long a = 1; a <= s; ++a)
            for (bool gf : {true, false})
                if (!absorb(a, gf)) return std::nullopt;
    } else if (strategy == "chain") {
        std::unordered_set<unsigned long long> step;
        {
            std::unordered_set<unsigned long long> saved;
            std::swap(saved, codes);
            if (!absorb(1, true) || !absorb(1, false)) return std::nullopt;
            std::swap(step, codes);
            std::swap(saved, codes);
        }
        // Chain shifts the single-step obstruction by -b*ddelta.
        for (long b = 0; b < s; ++b)
            for (unsigned long long c : step) {
                std::vector<long> v = decode(c, p, d);
                codes.insert(encode(add_mod(v, ddelta, p, -b), p));
            }
    } else {
        throw std::invalid_argument("unknown strategy: " + strategy);
    }
    return codes;
}

}  // namespace

std::vector<std::vector<long>> certified_lambdas(const TorusAction& action,
                                                 const Character& delta, long p,
                                                 const std::string& strategy,
                                                 unsigned long long guard) {
    require_prime(p);
    auto verts = vertices_or_throw(action, delta);
    unsigned long long total = ipow(p, action.d);
    if (total > guard)
        throw GuardExceeded("certified_lambdas: p^d exceeds the enumeration guard");
    auto codes = bad_codes(action, verts, delta_residue(delta, p), p, strategy);
    std::vector<std::vector<long>> out;
    if (!codes) return out;
    std::vector<long> lam(action.d, 0);
    while (true) {
        if (!codes->count(encode(lam, p))) out.push_back(lam);
        int pos = action.d - 1;
        while (pos >= 0 && lam[pos] == p - 1) lam[pos--] = 0;
        if (pos < 0) break;
        ++lam[pos];
    }
    return out;
}

std::vector<ScanRow> scan_primes(const TorusAction& action, const Character& delta,
                                 long p_lo, long p_hi, const std::string& strategy,
                                 unsigned long long guard) {
    std::vector<ScanRow> rows;
    auto verts = vertices_or_throw(action, delta);
    Int nv = n_stats(verts).n_delta;
    for (long p = std::max(2L, p_lo); p <= p_hi; ++p) {
        if (!is_prime(p)) continue;
        ScanRow row;
        row.p = p;
        try {
            row.p_exceeds_bound = bound_M(action, nv) < p;
            unsigned long long total = ipow(p, action.d);
            if (total > guard) throw GuardExceeded("p^d exceeds guard");
            auto codes = bad_codes(action, verts, delta_residue(delta, p), p, strategy);
            if (!codes) {
                row.certified_count = 0;
            } else {
                row.certified_count = total - codes->size();
                // Sample: lexicographically smallest certified lambda.
                std::vector<long> lam(action.d, 0);
                bool found = false;
                while (!found) {
                    if (!codes->count(encode(lam, p))) {
                        found = true;
                        break;
                    }
                    int pos = action.d - 1;
                    while (pos >= 0 && lam[pos] == p - 1) lam[pos--] = 0;
                    if (pos < 0) break;
                    ++lam[pos];
                }
                if (found) {
                    FpWeight w = reduce_weight(lam, p);
                    auto outcome = strategy == "chain" ? certify_chain(action, delta, p, w)
                                                       : certify_direct(action, delta, p, w);
                    if (outcome.certified()) row.sample = outcome.certificate;
                }
            }
        } catch (const GuardExceeded&) {
            row.guard_exceeded = true;
        }
        rows.push_back(row);
    }
    return rows;
}

VerifyResult verify_certificate(const Certificate& cert, unsigned long long guard) {
    VerifyResult res;
    res.ok = true;
    auto fail = [&](const std::string& msg) {
        res.ok = false;
        res.trail.push_back("FAIL: " + msg);
    };
    TorusAction action;
    try {
        action = build_action(cert.a_matrix);
    } catch (const std::exception& e) {
        fail(std::string("action rebuild: ") + e.what());
        return res;
    }
    if (action.n != cert.n || action.d != cert.d) {
        fail("certificate dimensions do not match the action matrix");
        return res;
    }
    if (!is_prime(cert.p)) {
        fail("p is not prime");
        return res;
    }
    const long p = cert.p;
    Character delta{cert.delta};
    if (!is_smooth_parameter(action, delta)) {
        fail("delta is not a smooth parameter");
        return res;
    }
    auto verts = enumerate_vertices(build_P(action, delta));
    if (verts.empty()) {
        fail("empty polyhedron");
        return res;
    }
    if (static_cast<long>(verts.size()) != cert.s_delta) fail("s_delta mismatch");
    Int nv = n_stats(verts).n_delta;
    if (nv != cert.n_delta) fail("N(delta) mismatch");
    if (bound_M(action, nv) != cert.bound_m) fail("bound_M mismatch");
    if ((cert.bound_m < p) != cert.p_exceeds_bound) fail("bound comparison flag mismatch");
    for (long x : cert.lambda)
        if (x < 0 || x >= p) fail("lambda not reduced mod p");
    if (cert.lambda.size() != static_cast<std::size_t>(cert.d)) {
        fail("lambda length mismatch");
        return res;
    }
    std::vector<long> ddelta = delta_residue(delta, p);
    const long s = static_cast<long>(verts.size());

    // Expected step table, re-derived from scratch.
    struct Expected {
        long index;
        bool gf;
        std::vector<long> target;
        long a_power;
    };
    std::vector<Expected> expected;
    if (cert.strategy == "direct") {
        for (long a = 1; a <= s; ++a) {
            expected.push_back({a, true, cert.lambda, a});
            expected.push_back({a, false, add_mod(cert.lambda, ddelta, p, a), a});
        }
    } else if (cert.strategy == "chain") {
        for (long b = 0; b < s; ++b) {
            std::vector<long> shifted = add_mod(cert.lambda, ddelta, p, b);
            expected.push_back({b, true, shifted, 1});
            expected.push_back({b, false, add_mod(shifted, ddelta, p, 1), 1});
        }
    } else {
        fail("unknown strategy " + cert.strategy);
        return res;
    }
    if (cert.steps.size() != expected.size()) fail("step count mismatch");
    for (std::size_t i = 0; i < expected.size() && i < cert.steps.size(); ++i) {
        const auto& e = expected[i];
        const auto& st = cert.steps[i];
        if (st.index != e.index || st.direction != (e.gf ? "gf" : "fg") || st.target != e.target)
            fail("step " + std::to_string(i) + " does not match the re-derived schedule");
    }
    // Emptiness witnesses re-checked with the exhaustive scan only.
    for (const auto& e : expected) {
        auto systems = vertex_systems(verts, e.a_power, action.n, e.gf);
        bool hit = false;
        brute_foreach(systems, p, guard, action.n, [&](const std::vector<long>& xi) {
            if (hit) return;
            if (mu_dual(action, xi, p).coords == e.target) hit = true;
        });
        if (hit)
            fail("obstructing common root exists at step index " + std::to_string(e.index) +
                 " direction " + (e.gf ? std::string("gf") : std::string("fg")));
    }
    if (res.ok) res.trail.push_back("OK: all steps re-verified against the brute-force scan");
    return res;
}

}  // namespace hyperloc
