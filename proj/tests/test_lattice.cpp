#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "hyperloc/lattice.hpp"

using namespace hyperloc;

namespace {

IntMat diag_a() { return {{1}, {1}}; }
IntMat n3_a() { return {{1, 0}, {0, 1}, {1, 1}}; }

bool same_line(const IntVec& u, const IntVec& v) {
    // u = +/- v
    bool plus = true, minus = true;
    for (std::size_t i = 0; i < u.size(); ++i) {
        plus = plus && u[i] == v[i];
        minus = minus && u[i] == -v[i];
    }
    return plus || minus;
}

}  // namespace

TEST_CASE("build_action derives the cokernel map") {
    TorusAction diag = build_action(diag_a());
    CHECK(diag.n == 2);
    CHECK(diag.d == 1);
    REQUIRE(diag.pi.size() == 1);
    CHECK(same_line(diag.pi[0], {Int(1), Int(-1)}));

    TorusAction n3 = build_action(n3_a());
    REQUIRE(n3.pi.size() == 1);
    CHECK(same_line(n3.pi[0], {Int(1), Int(1), Int(-1)}));

    TorusAction sub = build_action({{1}, {0}});
    REQUIRE(sub.pi.size() == 1);
    CHECK(same_line(sub.pi[0], {Int(0), Int(1)}));
}

TEST_CASE("build_action rejects bad input with distinct diagnostics") {
    CHECK_THROWS_AS(build_action({}), std::invalid_argument);
    CHECK_THROWS_AS(build_action({{1, 0}, {0}}), std::invalid_argument);  // ragged
    CHECK_THROWS_AS(build_action({{1}}), std::invalid_argument);          // d = n
    CHECK_THROWS_AS(build_action({{1, 2}, {2, 4}, {0, 0}}), std::invalid_argument);  // rank 1
}

TEST_CASE("pi * A = 0 exactly for every constructed action") {
    for (const IntMat& a :
         {diag_a(), n3_a(), IntMat{{1}, {0}}, IntMat{{2}, {3}}, IntMat{{1, 0}, {0, 1}, {2, 3}, {1, 1}}}) {
        TorusAction act = build_action(a);
        IntMat prod = mat_mul(act.pi, act.a);
        for (const auto& row : prod)
            for (const Int& e : row) CHECK(e == 0);
    }
}

TEST_CASE("is_unimodular") {
    CHECK(is_unimodular(build_action(diag_a())));
    CHECK(is_unimodular(build_action(n3_a())));
    // pi = +/-(2, -1): the second column alone is not part of a Z-basis.
    CHECK_FALSE(is_unimodular(build_action({{1}, {2}})));
}

TEST_CASE("is_unimodular is invariant under column permutations of A") {
    IntMat swapped = {{0, 1}, {1, 0}, {1, 1}};
    CHECK(is_unimodular(build_action(n3_a())) == is_unimodular(build_action(swapped)));
    IntMat rows_permuted = {{1, 1}, {1, 0}, {0, 1}};
    CHECK(is_unimodular(build_action(rows_permuted)));
}

TEST_CASE("restrict_tilde_character") {
    TorusAction diag = build_action(diag_a());
    Character c = restrict_tilde_character(diag, TildeCharacter{{1, 0, 0, 0}});
    CHECK(c.coords == IntVec{1});

    TorusAction n3 = build_action(n3_a());
    Character c3 = restrict_tilde_character(n3, TildeCharacter{{0, 0, 1, 0, 0, 0}});
    CHECK(c3.coords == IntVec{Int(1), Int(1)});

    // conjugate pairs cancel
    for (int i = 0; i < 3; ++i) {
        IntVec chi(6, 0);
        chi[i] = 1;
        chi[3 + i] = 1;
        CHECK(restrict_tilde_character(n3, TildeCharacter{chi}).coords == IntVec{Int(0), Int(0)});
    }
}

TEST_CASE("restrict_tilde_character is Z-linear") {
    TorusAction n3 = build_action(n3_a());
    TildeCharacter u{{1, -2, 0, 3, 0, 1}}, v{{0, 5, 1, -1, 2, 0}};
    IntVec sum(6);
    for (int i = 0; i < 6; ++i) sum[i] = u.coords[i] + 3 * v.coords[i];
    Character lhs = restrict_tilde_character(n3, TildeCharacter{sum});
    Character ru = restrict_tilde_character(n3, u);
    Character rv = restrict_tilde_character(n3, v);
    for (int k = 0; k < 2; ++k) CHECK(lhs.coords[k] == ru.coords[k] + 3 * rv.coords[k]);
}

TEST_CASE("cocharacter_intersection") {
    TorusAction diag = build_action(diag_a());
    auto r = cocharacter_intersection(diag, {1});
    CHECK(r.rank == 0);
    CHECK_FALSE(r.generator.has_value());

    TorusAction n3 = build_action(n3_a());
    auto r3 = cocharacter_intersection(n3, {3});
    CHECK(r3.rank == 1);
    REQUIRE(r3.generator.has_value());
    CHECK(same_line(r3.generator->coords, {Int(1), Int(-1)}));

    auto rempty = cocharacter_intersection(n3, {});
    CHECK(rempty.rank == 2);
}

TEST_CASE("is_smooth_parameter") {
    TorusAction diag = build_action(diag_a());
    CHECK(is_smooth_parameter(diag, Character{{1}}));
    CHECK_FALSE(is_smooth_parameter(diag, Character{{0}}));

    TorusAction n3 = build_action(n3_a());
    // walls are delta_1 = 0, delta_2 = 0, delta_1 = delta_2
    CHECK_FALSE(is_smooth_parameter(n3, Character{{Int(1), Int(1)}}));
    CHECK_FALSE(is_smooth_parameter(n3, Character{{Int(1), Int(0)}}));
    CHECK(is_smooth_parameter(n3, Character{{Int(1), Int(2)}}));
    CHECK(is_smooth_parameter(n3, Character{{Int(2), Int(-1)}}));
}

TEST_CASE("is_admissible_parameter") {
    TorusAction diag = build_action(diag_a());
    CHECK(is_admissible_parameter(diag, Character{{1}}));
    CHECK_FALSE(is_admissible_parameter(diag, Character{{0}}));

    TorusAction n3 = build_action(n3_a());
    CHECK_FALSE(is_admissible_parameter(n3, Character{{Int(1), Int(1)}}));  // = a_3
    CHECK_FALSE(is_admissible_parameter(n3, Character{{Int(0), Int(0)}}));
    CHECK(is_admissible_parameter(n3, Character{{Int(2), Int(-1)}}));
}

TEST_CASE("admissible implies smooth on a delta box") {
    TorusAction n3 = build_action(n3_a());
    for (long x = -3; x <= 3; ++x)
        for (long y = -3; y <= 3; ++y) {
            Character delta{{Int(x), Int(y)}};
            if (is_admissible_parameter(n3, delta)) CHECK(is_smooth_parameter(n3, delta));
        }
}

TEST_CASE("smoothness is invariant under scaling delta") {
    TorusAction n3 = build_action(n3_a());
    for (long x = -2; x <= 2; ++x)
        for (long y = -2; y <= 2; ++y) {
            Character delta{{Int(x), Int(y)}};
            bool base = is_smooth_parameter(n3, delta);
            for (long k : {2L, 3L, -1L}) {
                Character scaled{{Int(k * x), Int(k * y)}};
                CHECK(is_smooth_parameter(n3, scaled) == base);
            }
        }
}

TEST_CASE("wall arrangements under both index conventions are surfaced") {
    TorusAction n3 = build_action(n3_a());
    auto walls = wall_arrangement(n3);
    CHECK(walls.size() == 3);
    auto comp = wall_arrangement_complementary(n3);
    CHECK(comp.size() == walls.size());
}
