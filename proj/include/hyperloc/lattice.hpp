// Integer-lattice bookkeeping for a subtorus G of the coordinate torus
// acting on affine space: the embedding matrix, its cokernel map,
// unimodularity, character restriction, walls, and parameter genericity.
#ifndef HYPERLOC_LATTICE_HPP
#define HYPERLOC_LATTICE_HPP

#include <optional>
#include <set>
#include <vector>

#include "hyperloc/intmat.hpp"

namespace hyperloc {

// The subtorus G of rank d inside the coordinate torus of rank n.
// Columns of `a` are a basis of the cocharacter lattice of G inside Z^n;
// `pi` is the induced quotient map Z^n -> Z^(n-d), derived on construction.
struct TorusAction {
    int n = 0;
    int d = 0;
    IntMat a;   // n x d
    IntMat pi;  // (n-d) x n, pi * a = 0, surjective
};

// Element of the character lattice of G, length d.
struct Character {
    IntVec coords;
};

// Element of the character lattice of the big torus acting on T*A^n, length 2n.
struct TildeCharacter {
    IntVec coords;
};

// Cocharacter of G together with its image inside Z^n.
struct Cocharacter {
    IntVec coords;    // length d
    IntVec embedded;  // a * coords, length n
};

struct CocharacterIntersection {
    int rank = 0;
    std::optional<Cocharacter> generator;  // primitive, present iff rank == 1
};

// A rank-one wall in character space, recorded with the index set producing it.
struct Wall {
    std::set<int> index_set;  // 1-based coordinate indices
    Cocharacter normal;
};

TorusAction build_action(const IntMat& a);

bool is_unimodular(const TorusAction& action);

Character restrict_tilde_character(const TorusAction& action, const TildeCharacter& chi);

// Sublattice of cocharacters c with (a*c)_i = 0 for every i in the index set.
CocharacterIntersection cocharacter_intersection(const TorusAction& action,
                                                 const std::set<int>& index_set);

// All rank-one walls, scanning every subset of {1..n}. Deduplicated by normal.
std::vector<Wall> wall_arrangement(const TorusAction& action);

// Same wall set produced under the complementary index convention, with
// complementary index labels; surfaced for verbose diagnostics.
std::vector<Wall> wall_arrangement_complementary(const TorusAction& action);

bool is_smooth_parameter(const TorusAction& action, const Character& delta);

bool is_admissible_parameter(const TorusAction& action, const Character& delta);

inline Int dot(const IntVec& x, const IntVec& y) {
    Int s = 0;
    for (std::size_t i = 0; i < x.size(); ++i) s += x[i] * y[i];
    return s;
}

}  // namespace hyperloc

#endif
