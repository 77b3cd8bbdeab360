// Certification engine: common-root solving over F_p, bad-weight sets,
// the surjection-relation test, direct and chained localization
// certificates, and the explicit prime bounds.
#ifndef HYPERLOC_MORITA_HPP
#define HYPERLOC_MORITA_HPP

#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "hyperloc/weyl.hpp"

namespace hyperloc {

struct GuardExceeded : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Weight residue in F_p^d, coordinates reduced to {0..p-1}.
struct FpWeight {
    long p = 0;
    std::vector<long> coords;

    bool operator==(const FpWeight& o) const { return p == o.p && coords == o.coords; }
    bool operator<(const FpWeight& o) const { return coords < o.coords; }
};

FpWeight reduce_weight(const IntVec& v, long p);
FpWeight reduce_weight(const std::vector<long>& v, long p);
// Signed lift into [-p/2, p/2), the paper-side notation.
std::vector<long> signed_lift(const FpWeight& w);

struct RootWitness {
    long a = 0;
    std::string direction;  // "gf" or "fg"
    std::vector<long> xi;   // the common root producing the bad weight
};

struct BadSet {
    long p = 0;
    long a_max = 0;
    std::map<std::vector<long>, std::vector<RootWitness>> elements;
};

struct CertStep {
    long index = 0;         // a for direct, b for chain
    std::string direction;  // "gf" or "fg"
    std::vector<long> target;  // the weight that must avoid the root image
    unsigned long long boxes_checked = 0;
};

struct Refusal {
    long index = 0;
    std::string direction;
    std::vector<long> xi;
};

struct Certificate {
    IntMat a_matrix;
    int n = 0, d = 0;
    IntVec delta;
    long p = 0;
    std::vector<long> lambda;  // residues
    std::string strategy;      // "direct" or "chain"
    long s_delta = 0;
    Int n_delta;  // N(delta)
    Int bound_m;  // bound_M at N(delta)
    bool p_exceeds_bound = false;
    std::vector<CertStep> steps;
};

struct CertifyOutcome {
    std::optional<Certificate> certificate;
    std::optional<Refusal> refusal;

    bool certified() const { return certificate.has_value(); }
};

struct SingleStepResult {
    bool leq = false;  // Lambda <= Lambda*delta certified
    bool geq = false;  // Lambda*delta <= Lambda certified
    std::optional<std::vector<long>> leq_witness;  // obstructing root when !leq
    std::optional<std::vector<long>> geq_witness;
};

struct VerifyResult {
    bool ok = false;
    std::vector<std::string> trail;
};

struct ScanRow {
    long p = 0;
    bool guard_exceeded = false;
    unsigned long long certified_count = 0;
    bool p_exceeds_bound = false;
    std::optional<Certificate> sample;  // lex-smallest certified lambda
};

constexpr unsigned long long kDefaultGuard = 10'000'000ULL;

// A^T * xi mod p: the functional theta -> mu*(theta)(xi).
FpWeight mu_dual(const TorusAction& action, const std::vector<long>& xi, long p);

// Factor systems of all vertices at power a, one direction.
std::vector<EulerFactorSystem> vertex_systems(const std::vector<Vertex>& vertices, long a,
                                              int n, bool gf);

// Exhaustive F_p^n scan. Throws GuardExceeded when p^n exceeds the guard.
std::vector<std::vector<long>> common_roots_brute(const std::vector<EulerFactorSystem>& systems,
                                                  long p,
                                                  unsigned long long guard = kDefaultGuard);

// Same scan with the ambient dimension given explicitly; required when the
// system list is empty (every point is then a common root).
std::vector<std::vector<long>> common_roots_brute_dim(
    const std::vector<EulerFactorSystem>& systems, int n, long p,
    unsigned long long guard = kDefaultGuard);

// Structured pinning enumeration; same point set as common_roots_brute.
std::vector<std::vector<long>> common_roots_solve(const std::vector<EulerFactorSystem>& systems,
                                                  long p);

std::vector<std::vector<long>> common_roots_solve_dim(
    const std::vector<EulerFactorSystem>& systems, int n, long p);

// Union, over a = 1..a_max, of the root-image obstructions with provenance.
BadSet bad_set(const TorusAction& action, const Character& delta, long p, long a_max);

SingleStepResult single_step_relation(const TorusAction& action, const Character& delta,
                                      long p, const FpWeight& lambda);

CertifyOutcome certify_direct(const TorusAction& action, const Character& delta, long p,
                              const FpWeight& lambda);

CertifyOutcome certify_chain(const TorusAction& action, const Character& delta, long p,
                             const FpWeight& lambda);

// binom(n, d-1) * (2N)^(n-d+1), exact.
Int bound_prop(const TorusAction& action, const Int& n_value);

// 2 * binom(n,d) * binom(n,d-1) * (2*binom(n,d-1)*N + 1)^(n-d+1), exact.
Int bound_M(const TorusAction& action, const Int& n_value);

// All certified lambda residues under the given strategy, sorted. Requires
// p^d within the guard.
std::vector<std::vector<long>> certified_lambdas(const TorusAction& action,
                                                 const Character& delta, long p,
                                                 const std::string& strategy,
                                                 unsigned long long guard = kDefaultGuard);

std::vector<ScanRow> scan_primes(const TorusAction& action, const Character& delta,
                                 long p_lo, long p_hi, const std::string& strategy,
                                 unsigned long long guard = kDefaultGuard);

// Independent re-check of a certificate through the brute-force path only.
VerifyResult verify_certificate(const Certificate& cert,
                                unsigned long long guard = kDefaultGuard);

}  // namespace hyperloc

#endif
