// GIT semistability oracle over the cotangent space, the vanishing-locus
// cross-check for the vertex monomials, and the graded data of the shifted
// Koszul complex with a symbolic d^2 = 0 check.
#ifndef HYPERLOC_STABILITY_HPP
#define HYPERLOC_STABILITY_HPP

#include <map>
#include <set>
#include <string>
#include <vector>

#include "hyperloc/morita.hpp"

namespace hyperloc {

// Coordinates of T*A^n where a point is nonzero, 1-based in {1..2n}.
struct SupportPattern {
    std::set<int> support;
};

// One homological degree of the shifted Koszul complex.
struct KoszulTerm {
    long degree = 0;  // k in {0..s}
    Int rank;         // binom(s, k)
    Int twist;        // m + (s - k)
};

// Entry of a Koszul differential: +/- one generator monomial.
struct KoszulEntry {
    std::size_t row = 0, col = 0;
    int sign = 0;       // +1 or -1
    std::size_t gen = 0;  // index into the vertex list
};

struct KoszulData {
    long s = 0;  // generator count s_delta
    long m = 0;  // shift
    std::vector<Int> weights;  // all 1 here
    std::vector<KoszulTerm> terms;  // degrees s down to 0
    // differentials[k-1]: degree k -> degree k-1, for k = 1..s.
    std::vector<std::vector<KoszulEntry>> differentials;
};

// Is some delta^m-semi-invariant monomial (m > 0) supported inside S?
// Decided by exact rational cone membership.
bool support_semistable(const TorusAction& action, const Character& delta,
                        const SupportPattern& s);

// All points of F_q^{2n} whose support pattern is unstable. Guarded by
// q^{2n} <= guard. Only zero/nonzero structure of F_q matters here, so q
// may be any prime power >= 2.
std::set<std::vector<long>> unstable_table(const TorusAction& action, const Character& delta,
                                           long q, unsigned long long guard = kDefaultGuard);

// True iff the common vanishing locus of the vertex monomials over F_q^{2n}
// equals the unstable table pointwise.
bool check_unstable_generators(const TorusAction& action, const Character& delta, long q,
                               unsigned long long guard = kDefaultGuard);

// Same check with the vertex list supplied explicitly (mutation testing).
bool check_unstable_generators_with(const TorusAction& action, const Character& delta, long q,
                                    const std::vector<Vertex>& vertices,
                                    unsigned long long guard = kDefaultGuard);

KoszulData koszul_data(const std::vector<Vertex>& vertices, long m);

// d o d = 0 as matrices of commutative polynomials in the generator symbols.
bool koszul_d_squared_zero(const KoszulData& k);

}  // namespace hyperloc

#endif
