// Exact Weyl-algebra arithmetic: a normal-ordered element type with a
// brute-force multiplication oracle, and the factored Euler-operator forms
// of the vertex-monomial products used by the certification engine.
#ifndef HYPERLOC_WEYL_HPP
#define HYPERLOC_WEYL_HPP

#include <map>
#include <utility>
#include <vector>

#include "hyperloc/polytope.hpp"

namespace hyperloc {

// Product of linear factors (E_j - r) with E_j = x_j d_j: per coordinate j,
// the multiset of integer roots r.
struct EulerFactorSystem {
    int n = 0;
    std::vector<std::vector<long>> roots;  // roots[j], j = 0..n-1

    std::size_t total_factor_count() const {
        std::size_t c = 0;
        for (const auto& r : roots) c += r.size();
        return c;
    }
};

// Element of the Weyl algebra over Z in normal order: a map from exponent
// pairs (x-exponents, d-exponents) to coefficients, zero coefficients absent.
struct WeylElement {
    using Exponents = std::vector<unsigned>;
    using Key = std::pair<Exponents, Exponents>;
    int n = 0;
    std::map<Key, Int> terms;

    bool operator==(const WeylElement& other) const {
        return n == other.n && terms == other.terms;
    }
};

WeylElement weyl_zero(int n);
WeylElement weyl_constant(int n, const Int& c);
// The monomial x^{xe} d^{de}.
WeylElement weyl_monomial(const std::vector<unsigned>& xe, const std::vector<unsigned>& de);

WeylElement weyl_add(const WeylElement& a, const WeylElement& b);
WeylElement weyl_scale(const WeylElement& a, const Int& c);

// Exact normal-ordered product (the reordering identity with factorial
// coefficients, per coordinate).
WeylElement weyl_multiply(const WeylElement& a, const WeylElement& b);

// x^m d^m = prod_{k=0}^{m-1} (E - k): single-coordinate root multiset.
EulerFactorSystem normal_order_xd(long m);
// d^m x^m = prod_{k=1}^{m} (E + k).
EulerFactorSystem normal_order_dx(long m);

// Normal-ordered form of f~^a_v g~^a_v, per coordinate j:
// roots {0..a*v_j - 1} united with {-1..-a*v_{n+j}}.
EulerFactorSystem factor_system_fg(const Vertex& v, long a, int n);
// Normal-ordered form of g~^a_v f~^a_v, the mirror root sets.
EulerFactorSystem factor_system_gf(const Vertex& v, long a, int n);

// prod_j prod_{r in roots[j]} (xi_j - r) mod p.
long evaluate_factor_system(const EulerFactorSystem& sys, const std::vector<long>& xi, long p);

// Expansion of the factor system into a WeylElement via weyl_multiply;
// the oracle side of the identity checks.
WeylElement euler_expand(const EulerFactorSystem& sys);

// The monomials f~^a_v and g~^a_v as WeylElements.
WeylElement weyl_f_monomial(const Vertex& v, long a, int n);
WeylElement weyl_g_monomial(const Vertex& v, long a, int n);

bool is_prime(long p);

}  // namespace hyperloc

#endif
