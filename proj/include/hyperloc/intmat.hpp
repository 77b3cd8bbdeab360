// Exact integer/rational matrix kernel: Hermite and Smith normal forms,
// kernels, rank, minors, and rational linear solving on top of GMP.
#ifndef HYPERLOC_INTMAT_HPP
#define HYPERLOC_INTMAT_HPP

#include <gmpxx.h>
#include <optional>
#include <vector>

namespace hyperloc {

using Int = mpz_class;
using Rat = mpq_class;
using IntVec = std::vector<Int>;
using IntMat = std::vector<IntVec>;  // row-major
using RatVec = std::vector<Rat>;
using RatMat = std::vector<RatVec>;

inline std::size_t row_count(const IntMat& m) { return m.size(); }
inline std::size_t col_count(const IntMat& m) { return m.empty() ? 0 : m[0].size(); }

IntMat transpose(const IntMat& m);
IntMat mat_mul(const IntMat& a, const IntMat& b);
IntVec mat_vec(const IntMat& a, const IntVec& x);
IntMat identity_mat(std::size_t k);

struct HermiteResult {
    IntMat h;  // row-style HNF of the input, zero rows at the bottom
    IntMat u;  // unimodular, u * input = h
    std::size_t rank = 0;
};

// Row-style Hermite normal form with transformation matrix.
HermiteResult hermite_normal_form(const IntMat& m);

// Basis for the left kernel lattice {x : x * m = 0}; rows are a Z-basis.
IntMat left_kernel(const IntMat& m);

// Basis for the right kernel lattice {x : m * x = 0}; rows are a Z-basis.
IntMat right_kernel(const IntMat& m);

std::size_t int_rank(const IntMat& m);

// Invariant factors of the Smith normal form, nonzero entries only.
std::vector<Int> smith_invariants(IntMat m);

// True iff v lies in the lattice generated by the rows of m.
bool in_row_lattice(const IntMat& m, const IntVec& v);

// Determinant of a square integer matrix (Bareiss, fraction free).
Int determinant(IntMat m);

// All maximal (rank x rank) minors of a full-row-rank matrix.
std::vector<Int> maximal_minors(const IntMat& m);

// Solves m * x = b over Q. Returns nothing if the system is inconsistent;
// requires the columns of m to be linearly independent (unique solution).
std::optional<RatVec> solve_unique_rational(const IntMat& m, const IntVec& b);

// Rank over Q of a set of integer columns, by rational elimination.
std::size_t column_rank(const IntMat& m, const std::vector<std::size_t>& cols);

}  // namespace hyperloc

#endif
