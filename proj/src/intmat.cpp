#include "hyperloc/intmat.hpp"

#include <cassert>
#include <stdexcept>

namespace hyperloc {

IntMat transpose(const IntMat& m) {
    IntMat t(col_count(m), IntVec(row_count(m)));
    for (std::size_t i = 0; i < row_count(m); ++i)
        for (std::size_t j = 0; j < col_count(m); ++j) t[j][i] = m[i][j];
    return t;
}

IntMat mat_mul(const IntMat& a, const IntMat& b) {
    assert(col_count(a) == row_count(b));
    IntMat c(row_count(a), IntVec(col_count(b), 0));
    for (std::size_t i = 0; i < row_count(a); ++i)
        for (std::size_t k = 0; k < col_count(a); ++k) {
            if (a[i][k] == 0) continue;
            for (std::size_t j = 0; j < col_count(b); ++j) c[i][j] += a[i][k] * b[k][j];
        }
    return c;
}

IntVec mat_vec(const IntMat& a, const IntVec& x) {
    assert(col_count(a) == x.size());
    IntVec y(row_count(a), 0);
    for (std::size_t i = 0; i < row_count(a); ++i)
        for (std::size_t j = 0; j < x.size(); ++j) y[i] += a[i][j] * x[j];
    return y;
}

IntMat identity_mat(std::size_t k) {
    IntMat m(k, IntVec(k, 0));
    for (std::size_t i = 0; i < k; ++i) m[i][i] = 1;
    return m;
}

HermiteResult hermite_normal_form(const IntMat& input) {
    const std::size_t nr = row_count(input), nc = col_count(input);
    HermiteResult res;
    res.h = input;
    res.u = identity_mat(nr);
    std::size_t pivot_row = 0;
    for (std::size_t col = 0; col < nc && pivot_row < nr; ++col) {
        // Euclidean elimination within the column below pivot_row.
        while (true) {
            std::size_t best = nr;
            for (std::size_t r = pivot_row; r < nr; ++r)
                if (res.h[r][col] != 0 &&
                    (best == nr || cmp(abs(res.h[r][col]), abs(res.h[best][col])) < 0))
                    best = r;
            if (best == nr) break;  // column is zero below pivot_row
            std::swap(res.h[pivot_row], res.h[best]);
            std::swap(res.u[pivot_row], res.u[best]);
            bool clean = true;
            for (std::size_t r = pivot_row + 1; r < nr; ++r) {
                if (res.h[r][col] == 0) continue;
                Int q = res.h[r][col] / res.h[pivot_row][col];  // truncated is fine here
                if (q != 0) {
                    for (std::size_t j = 0; j < nc; ++j) res.h[r][j] -= q * res.h[pivot_row][j];
                    for (std::size_t j = 0; j < nr; ++j) res.u[r][j] -= q * res.u[pivot_row][j];
                }
                if (res.h[r][col] != 0) clean = false;
            }
            if (clean) break;
        }
        if (res.h[pivot_row][col] == 0) continue;
        if (res.h[pivot_row][col] < 0) {
            for (std::size_t j = 0; j < nc; ++j) res.h[pivot_row][j] = -res.h[pivot_row][j];
            for (std::size_t j = 0; j < nr; ++j) res.u[pivot_row][j] = -res.u[pivot_row][j];
        }
        // Reduce the entries above the pivot into [0, pivot).
        for (std::size_t r = 0; r < pivot_row; ++r) {
            Int q;
            mpz_fdiv_q(q.get_mpz_t(), res.h[r][col].get_mpz_t(),
                       res.h[pivot_row][col].get_mpz_t());
            if (q != 0) {
                for (std::size_t j = 0; j < nc; ++j) res.h[r][j] -= q * res.h[pivot_row][j];
                for (std::size_t j = 0; j < nr; ++j) res.u[r][j] -= q * res.u[pivot_row][j];
            }
        }
        ++pivot_row;
    }
    res.rank = pivot_row;
    return res;
}

IntMat left_kernel(const IntMat& m) {
    HermiteResult hr = hermite_normal_form(m);
    IntMat ker;
    for (std::size_t r = hr.rank; r < row_count(m); ++r) ker.push_back(hr.u[r]);
    return ker;
}

IntMat right_kernel(const IntMat& m) { return left_kernel(transpose(m)); }

std::size_t int_rank(const IntMat& m) {
    if (m.empty() || m[0].empty()) return 0;
    return hermite_normal_form(m).rank;
}

std::vector<Int> smith_invariants(IntMat m) {
    std::vector<Int> inv;
    std::size_t nr = row_count(m), nc = col_count(m);
    std::size_t t = 0;
    while (t < nr && t < nc) {
        // Find a nonzero pivot in the trailing block.
        std::size_t pi = nr, pj = nc;
        for (std::size_t i = t; i < nr && pi == nr; ++i)
            for (std::size_t j = t; j < nc; ++j)
                if (m[i][j] != 0) { pi = i; pj = j; break; }
        if (pi == nr) break;
        std::swap(m[t], m[pi]);
        for (std::size_t i = 0; i < nr; ++i) std::swap(m[i][t], m[i][pj]);
        bool again = true;
        while (again) {
            again = false;
            for (std::size_t i = t + 1; i < nr; ++i) {
                while (m[i][t] != 0) {
                    Int q = m[t][t] == 0 ? Int(0) : Int(m[i][t] / m[t][t]);
                    for (std::size_t j = t; j < nc; ++j) m[i][j] -= q * m[t][j];
                    if (m[i][t] != 0) { std::swap(m[i], m[t]); }
                }
            }
            for (std::size_t j = t + 1; j < nc; ++j) {
                while (m[t][j] != 0) {
                    Int q = m[t][t] == 0 ? Int(0) : Int(m[t][j] / m[t][t]);
                    for (std::size_t i = t; i < nr; ++i) m[i][j] -= q * m[i][t];
                    if (m[t][j] != 0) {
                        for (std::size_t i = t; i < nr; ++i) std::swap(m[i][j], m[i][t]);
                        again = true;
                    }
                }
            }
        }
        // Divisibility fix-up: pivot must divide the rest of the block.
        for (std::size_t i = t + 1; i < nr && m[t][t] != 0; ++i)
            for (std::size_t j = t + 1; j < nc; ++j)
                if (m[i][j] % m[t][t] != 0) {
                    for (std::size_t k = t; k < nc; ++k) m[t][k] += m[i][k];
                    return smith_invariants(m);  // rare at desk scale, restart is fine
                }
        if (m[t][t] < 0) m[t][t] = -m[t][t];
        inv.push_back(m[t][t]);
        ++t;
    }
    while (!inv.empty() && inv.back() == 0) inv.pop_back();
    return inv;
}

bool in_row_lattice(const IntMat& m, const IntVec& v) {
    HermiteResult hr = hermite_normal_form(m);
    IntVec w = v;
    const std::size_t nc = v.size();
    for (std::size_t r = 0; r < hr.rank; ++r) {
        std::size_t col = 0;
        while (col < nc && hr.h[r][col] == 0) ++col;
        if (col == nc) continue;
        if (w[col] % hr.h[r][col] != 0) return false;
        Int q = w[col] / hr.h[r][col];
        for (std::size_t j = 0; j < nc; ++j) w[j] -= q * hr.h[r][j];
    }
    for (const Int& x : w)
        if (x != 0) return false;
    return true;
}

Int determinant(IntMat m) {
    const std::size_t n = row_count(m);
    if (n == 0) return 1;
    assert(col_count(m) == n);
    Int sign = 1, prev = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (m[k][k] == 0) {
            std::size_t r = k + 1;
            while (r < n && m[r][k] == 0) ++r;
            if (r == n) return 0;
            std::swap(m[k], m[r]);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i)
            for (std::size_t j = k + 1; j < n; ++j) {
                Int num = m[i][j] * m[k][k] - m[i][k] * m[k][j];
                mpz_divexact(m[i][j].get_mpz_t(), num.get_mpz_t(), prev.get_mpz_t());
            }
        prev = m[k][k];
    }
    return sign * m[n - 1][n - 1];
}

namespace {
void minor_rec(const IntMat& m, std::size_t r, std::size_t start,
               std::vector<std::size_t>& picked, std::vector<Int>& out) {
    if (picked.size() == r) {
        IntMat sq(r, IntVec(r));
        for (std::size_t i = 0; i < r; ++i)
            for (std::size_t j = 0; j < r; ++j) sq[i][j] = m[i][picked[j]];
        out.push_back(determinant(sq));
        return;
    }
    for (std::size_t c = start; c + (r - picked.size()) <= col_count(m); ++c) {
        picked.push_back(c);
        minor_rec(m, r, c + 1, picked, out);
        picked.pop_back();
    }
}
}  // namespace

std::vector<Int> maximal_minors(const IntMat& m) {
    std::vector<Int> out;
    std::vector<std::size_t> picked;
    minor_rec(m, row_count(m), 0, picked, out);
    return out;
}

std::optional<RatVec> solve_unique_rational(const IntMat& m, const IntVec& b) {
    const std::size_t nr = row_count(m), nc = col_count(m);
    RatMat aug(nr, RatVec(nc + 1));
    for (std::size_t i = 0; i < nr; ++i) {
        for (std::size_t j = 0; j < nc; ++j) aug[i][j] = Rat(m[i][j]);
        aug[i][nc] = Rat(b[i]);
    }
    std::size_t row = 0;
    std::vector<std::size_t> pivot_of_col(nc, nr);
    for (std::size_t col = 0; col < nc && row < nr; ++col) {
        std::size_t p = row;
        while (p < nr && aug[p][col] == 0) ++p;
        if (p == nr) continue;
        std::swap(aug[row], aug[p]);
        Rat inv = aug[row][col];
        for (std::size_t j = col; j <= nc; ++j) aug[row][j] /= inv;
        for (std::size_t i = 0; i < nr; ++i) {
            if (i == row || aug[i][col] == 0) continue;
            Rat f = aug[i][col];
            for (std::size_t j = col; j <= nc; ++j) aug[i][j] -= f * aug[row][j];
        }
        pivot_of_col[col] = row;
        ++row;
    }
    for (std::size_t i = row; i < nr; ++i)
        if (aug[i][nc] != 0) return std::nullopt;  // inconsistent
    if (row < nc) return std::nullopt;             // not unique; caller wants independent columns
    RatVec x(nc);
    for (std::size_t col = 0; col < nc; ++col) x[col] = aug[pivot_of_col[col]][nc];
    return x;
}

std::size_t column_rank(const IntMat& m, const std::vector<std::size_t>& cols) {
    const std::size_t nr = row_count(m);
    RatMat sub(nr, RatVec(cols.size()));
    for (std::size_t i = 0; i < nr; ++i)
        for (std::size_t j = 0; j < cols.size(); ++j) sub[i][j] = Rat(m[i][cols[j]]);
    std::size_t rank = 0;
    for (std::size_t col = 0; col < cols.size() && rank < nr; ++col) {
        std::size_t p = rank;
        while (p < nr && sub[p][col] == 0) ++p;
        if (p == nr) continue;
        std::swap(sub[rank], sub[p]);
        for (std::size_t i = rank + 1; i < nr; ++i) {
            if (sub[i][col] == 0) continue;
            Rat f = sub[i][col] / sub[rank][col];
            for (std::size_t j = col; j < cols.size(); ++j) sub[i][j] -= f * sub[rank][j];
        }
        ++rank;
    }
    return rank;
}

}  // namespace hyperloc
