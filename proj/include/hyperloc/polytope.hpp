// The fiber polyhedron P_delta, its integral vertices (the Koszul generator
// monomials), and the N statistics driving the prime bounds.
#ifndef HYPERLOC_POLYTOPE_HPP
#define HYPERLOC_POLYTOPE_HPP

#include <vector>

#include "hyperloc/lattice.hpp"

namespace hyperloc {

// P_delta = { chi in R^{2n}, chi >= 0 : sum_i (chi_i - chi_{n+i}) a_i = delta },
// stored as its d x 2n equality system [A^T | -A^T] chi = delta.
struct FiberPolyhedron {
    TorusAction action;
    Character delta;
    IntMat eq;  // d x 2n
};

struct Vertex {
    IntVec coords;  // length 2n, nonnegative, integral
};

struct VertexMonomial {
    IntVec x_exponents;  // length n
    IntVec d_exponents;  // length n
};

struct NStats {
    std::vector<Int> per_vertex;  // N_i
    Int n_delta;                  // max_i N_i
};

struct MinNResult {
    Character delta_star;
    Int n_value;
    long radius;  // the truncation radius actually used
};

FiberPolyhedron build_P(const TorusAction& action, const Character& delta);

// Complete duplicate-free vertex list via enumeration of linearly
// independent column subsets of size <= d, sorted lexicographically.
// Empty P_delta yields an empty list.
std::vector<Vertex> enumerate_vertices(const FiberPolyhedron& p);

VertexMonomial vertex_monomial(const Vertex& v, int n);

NStats n_stats(const std::vector<Vertex>& vertices);

// Minimizes N(delta) over admissible delta in the max-norm box of the given
// radius; lexicographically smallest minimizer wins ties. Throws if the box
// contains no admissible delta.
MinNResult search_min_N(const TorusAction& action, long radius);

}  // namespace hyperloc

#endif
