#include "hyperloc/weyl.hpp"

#include <stdexcept>

namespace hyperloc {

WeylElement weyl_zero(int n) {
    WeylElement e;
    e.n = n;
    return e;
}

WeylElement weyl_constant(int n, const Int& c) {
    WeylElement e = weyl_zero(n);
    if (c != 0) e.terms[{std::vector<unsigned>(n, 0), std::vector<unsigned>(n, 0)}] = c;
    return e;
}

WeylElement weyl_monomial(const std::vector<unsigned>& xe, const std::vector<unsigned>& de) {
    if (xe.size() != de.size()) throw std::invalid_argument("weyl_monomial: size mismatch");
    WeylElement e = weyl_zero(static_cast<int>(xe.size()));
    e.terms[{xe, de}] = 1;
    return e;
}

WeylElement weyl_add(const WeylElement& a, const WeylElement& b) {
    if (a.n != b.n) throw std::invalid_argument("weyl_add: coefficient domain mismatch");
    WeylElement c = a;
    for (const auto& [key, coeff] : b.terms) {
        Int& slot = c.terms[key];
        slot += coeff;
        if (slot == 0) c.terms.erase(key);
    }
    return c;
}

WeylElement weyl_scale(const WeylElement& a, const Int& c) {
    WeylElement out = weyl_zero(a.n);
    if (c == 0) return out;
    for (const auto& [key, coeff] : a.terms) out.terms[key] = coeff * c;
    return out;
}

namespace {
Int binomial_int(unsigned n, unsigned k) {
    Int r;
    mpz_bin_uiui(r.get_mpz_t(), n, k);
    return r;
}

Int factorial_int(unsigned k) {
    Int r;
    mpz_fac_ui(r.get_mpz_t(), k);
    return r;
}

// d^w x^u = sum_k binom(w,k) binom(u,k) k! x^{u-k} d^{w-k}, per coordinate.
void swap_rec(int j, int n, const std::vector<unsigned>& w, const std::vector<unsigned>& u,
              std::vector<unsigned>& k, const Int& coeff,
              const std::vector<unsigned>& xl, const std::vector<unsigned>& dr,
              WeylElement& out) {
    if (j == n) {
        std::vector<unsigned> xe(n), de(n);
        for (int i = 0; i < n; ++i) {
            xe[i] = xl[i] + u[i] - k[i];
            de[i] = dr[i] + w[i] - k[i];
        }
        Int& slot = out.terms[{xe, de}];
        slot += coeff;
        if (slot == 0) out.terms.erase({xe, de});
        return;
    }
    unsigned kmax = std::min(w[j], u[j]);
    for (unsigned kj = 0; kj <= kmax; ++kj) {
        k[j] = kj;
        Int f = binomial_int(w[j], kj) * binomial_int(u[j], kj) * factorial_int(kj);
        swap_rec(j + 1, n, w, u, k, coeff * f, xl, dr, out);
    }
}
}  // namespace

WeylElement weyl_multiply(const WeylElement& a, const WeylElement& b) {
    if (a.n != b.n) throw std::invalid_argument("weyl_multiply: coefficient domain mismatch");
    const int n = a.n;
    WeylElement out = weyl_zero(n);
    std::vector<unsigned> k(n, 0);
    for (const auto& [ka, ca] : a.terms)
        for (const auto& [kb, cb] : b.terms)
            swap_rec(0, n, ka.second, kb.first, k, ca * cb, ka.first, kb.second, out);
    return out;
}

EulerFactorSystem normal_order_xd(long m) {
    if (m < 0) throw std::invalid_argument("normal_order_xd: m must be >= 0");
    EulerFactorSystem sys;
    sys.n = 1;
    sys.roots.resize(1);
    for (long k = 0; k < m; ++k) sys.roots[0].push_back(k);
    return sys;
}

EulerFactorSystem normal_order_dx(long m) {
    if (m < 0) throw std::invalid_argument("normal_order_dx: m must be >= 0");
    EulerFactorSystem sys;
    sys.n = 1;
    sys.roots.resize(1);
    for (long k = 1; k <= m; ++k) sys.roots[0].push_back(-k);
    return sys;
}

namespace {
long vertex_entry(const Vertex& v, std::size_t i) {
    if (!v.coords[i].fits_slong_p())
        throw std::overflow_error("vertex coordinate too large for factor system");
    return v.coords[i].get_si();
}
}  // namespace

EulerFactorSystem factor_system_fg(const Vertex& v, long a, int n) {
    if (a < 1) throw std::invalid_argument("factor_system_fg: a must be >= 1");
    EulerFactorSystem sys;
    sys.n = n;
    sys.roots.resize(n);
    for (int j = 0; j < n; ++j) {
        long xe = a * vertex_entry(v, j);
        long de = a * vertex_entry(v, n + j);
        for (long k = 0; k < xe; ++k) sys.roots[j].push_back(k);
        for (long k = 1; k <= de; ++k) sys.roots[j].push_back(-k);
    }
    return sys;
}

EulerFactorSystem factor_system_gf(const Vertex& v, long a, int n) {
    if (a < 1) throw std::invalid_argument("factor_system_gf: a must be >= 1");
    EulerFactorSystem sys;
    sys.n = n;
    sys.roots.resize(n);
    for (int j = 0; j < n; ++j) {
        long xe = a * vertex_entry(v, j);
        long de = a * vertex_entry(v, n + j);
        for (long k = 1; k <= xe; ++k) sys.roots[j].push_back(-k);
        for (long k = 0; k < de; ++k) sys.roots[j].push_back(k);
    }
    return sys;
}

bool is_prime(long p) {
    if (p < 2) return false;
    for (long q = 2; q * q <= p; ++q)
        if (p % q == 0) return false;
    return true;
}

long evaluate_factor_system(const EulerFactorSystem& sys, const std::vector<long>& xi, long p) {
    if (!is_prime(p)) throw std::invalid_argument("evaluate_factor_system: p must be prime");
    if (xi.size() != static_cast<std::size_t>(sys.n))
        throw std::invalid_argument("evaluate_factor_system: point length mismatch");
    long prod = 1 % p;
    for (int j = 0; j < sys.n; ++j)
        for (long r : sys.roots[j]) {
            long f = ((xi[j] - r) % p + p) % p;
            prod = (prod * f) % p;
            if (prod == 0) return 0;
        }
    return prod;
}

WeylElement euler_expand(const EulerFactorSystem& sys) {
    const int n = sys.n;
    WeylElement out = weyl_constant(n, 1);
    for (int j = 0; j < n; ++j)
        for (long r : sys.roots[j]) {
            std::vector<unsigned> e(n, 0);
            e[j] = 1;
            WeylElement factor = weyl_add(weyl_monomial(e, e), weyl_constant(n, Int(-r)));
            out = weyl_multiply(out, factor);
        }
    return out;
}

WeylElement weyl_f_monomial(const Vertex& v, long a, int n) {
    std::vector<unsigned> xe(n), de(n);
    for (int j = 0; j < n; ++j) {
        xe[j] = static_cast<unsigned>(a * vertex_entry(v, j));
        de[j] = static_cast<unsigned>(a * vertex_entry(v, n + j));
    }
    return weyl_monomial(xe, de);
}

WeylElement weyl_g_monomial(const Vertex& v, long a, int n) {
    std::vector<unsigned> xe(n), de(n), zero(n, 0);
    for (int j = 0; j < n; ++j) {
        de[j] = static_cast<unsigned>(a * vertex_entry(v, j));
        xe[j] = static_cast<unsigned>(a * vertex_entry(v, n + j));
    }
    // g~ = prod d_j^{a v_j} * prod x_j^{a v_{n+j}}; reorder through the oracle.
    return weyl_multiply(weyl_monomial(zero, de), weyl_monomial(xe, zero));
}

}  // namespace hyperloc
