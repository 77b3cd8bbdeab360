#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "hyperloc/weyl.hpp"

using namespace hyperloc;

namespace {

TorusAction diag() { return build_action({{1}, {1}}); }
TorusAction n3() { return build_action({{1, 0}, {0, 1}, {1, 1}}); }

WeylElement x_power(int n, int j, unsigned m) {
    std::vector<unsigned> xe(n, 0), de(n, 0);
    xe[j] = m;
    return weyl_monomial(xe, de);
}

WeylElement d_power(int n, int j, unsigned m) {
    std::vector<unsigned> xe(n, 0), de(n, 0);
    de[j] = m;
    return weyl_monomial(xe, de);
}

}  // namespace

TEST_CASE("defining relations") {
    // d1 * x1 = x1 d1 + 1
    WeylElement lhs = weyl_multiply(d_power(1, 0, 1), x_power(1, 0, 1));
    WeylElement rhs = weyl_add(weyl_monomial({1}, {1}), weyl_constant(1, 1));
    CHECK(lhs == rhs);
    // x1 * d1 is already normal
    CHECK(weyl_multiply(x_power(1, 0, 1), d_power(1, 0, 1)) == weyl_monomial({1}, {1}));
    // d1^2 * x1^2 = x1^2 d1^2 + 4 x1 d1 + 2
    WeylElement big = weyl_multiply(d_power(1, 0, 2), x_power(1, 0, 2));
    WeylElement expect = weyl_add(
        weyl_add(weyl_monomial({2}, {2}), weyl_scale(weyl_monomial({1}, {1}), 4)),
        weyl_constant(1, 2));
    CHECK(big == expect);
}

TEST_CASE("commutation across coordinates") {
    // [d_j, x_k] = 0 for j != k
    WeylElement a = weyl_multiply(d_power(2, 0, 1), x_power(2, 1, 1));
    WeylElement b = weyl_multiply(x_power(2, 1, 1), d_power(2, 0, 1));
    CHECK(a == b);
}

TEST_CASE("associativity on random-ish small elements") {
    std::vector<WeylElement> pool = {
        weyl_monomial({2, 0}, {1, 0}), weyl_monomial({0, 1}, {0, 2}),
        weyl_add(weyl_monomial({1, 1}, {0, 0}), weyl_constant(2, -3)),
        weyl_monomial({0, 0}, {2, 1})};
    for (const auto& a : pool)
        for (const auto& b : pool)
            for (const auto& c : pool)
                CHECK(weyl_multiply(weyl_multiply(a, b), c) ==
                      weyl_multiply(a, weyl_multiply(b, c)));
}

TEST_CASE("normal_order_xd") {
    CHECK(normal_order_xd(0).roots[0].empty());
    CHECK(normal_order_xd(1).roots[0] == std::vector<long>{0});
    CHECK(normal_order_xd(3).roots[0] == std::vector<long>{0, 1, 2});
    // expansion cross-check: x^3 d^3 = E(E-1)(E-2)
    CHECK(euler_expand(normal_order_xd(3)) ==
          weyl_multiply(x_power(1, 0, 3), d_power(1, 0, 3)));
}

TEST_CASE("normal_order_dx") {
    CHECK(normal_order_dx(0).roots[0].empty());
    CHECK(normal_order_dx(1).roots[0] == std::vector<long>{-1});
    CHECK(normal_order_dx(2).roots[0] == std::vector<long>{-1, -2});
    CHECK(euler_expand(normal_order_dx(2)) ==
          weyl_multiply(d_power(1, 0, 2), x_power(1, 0, 2)));
}

TEST_CASE("factor_system_fg / gf on explicit vertices") {
    Vertex x1{{1, 0, 0, 0}};
    EulerFactorSystem fg = factor_system_fg(x1, 1, 2);
    CHECK(fg.roots[0] == std::vector<long>{0});
    CHECK(fg.roots[1].empty());

    Vertex dd1{{0, 0, 1, 0}};
    EulerFactorSystem fg2 = factor_system_fg(dd1, 2, 2);
    CHECK(fg2.roots[0] == std::vector<long>{-1, -2});
    CHECK(fg2.roots[1].empty());

    EulerFactorSystem gf = factor_system_gf(x1, 1, 2);
    CHECK(gf.roots[0] == std::vector<long>{-1});
    CHECK(gf.roots[1].empty());

    Vertex x2{{0, 1, 0, 0}};
    EulerFactorSystem gf2 = factor_system_gf(x2, 1, 2);
    CHECK(gf2.roots[0].empty());
    CHECK(gf2.roots[1] == std::vector<long>{-1});

    Vertex zero{{0, 0, 0, 0}};
    CHECK(factor_system_fg(zero, 3, 2).total_factor_count() == 0);
    CHECK(factor_system_gf(zero, 3, 2).total_factor_count() == 0);
}

TEST_CASE("factor counts match exponents") {
    for (const TorusAction& act : {diag(), n3()}) {
        Character delta;
        delta.coords.assign(act.d, 1);
        if (act.d == 2) delta.coords = {Int(2), Int(-1)};
        auto verts = enumerate_vertices(build_P(act, delta));
        for (const Vertex& v : verts)
            for (long a = 1; a <= 3; ++a) {
                Int total = 0;
                for (const Int& c : v.coords) total += c;
                std::size_t want = static_cast<std::size_t>(a * total.get_si());
                CHECK(factor_system_fg(v, a, act.n).total_factor_count() == want);
                CHECK(factor_system_gf(v, a, act.n).total_factor_count() == want);
            }
    }
}

TEST_CASE("oracle equivalence: factored systems equal Weyl-product expansions") {
    for (const TorusAction& act : {diag(), n3()}) {
        std::vector<Character> deltas;
        if (act.d == 1)
            deltas = {Character{{Int(1)}}, Character{{Int(2)}}};
        else
            deltas = {Character{{Int(2), Int(-1)}}, Character{{Int(1), Int(2)}}};
        for (const Character& delta : deltas)
            for (const Vertex& v : enumerate_vertices(build_P(act, delta)))
                for (long a = 1; a <= 3; ++a) {
                    WeylElement f = weyl_f_monomial(v, a, act.n);
                    WeylElement g = weyl_g_monomial(v, a, act.n);
                    CHECK(euler_expand(factor_system_fg(v, a, act.n)) == weyl_multiply(f, g));
                    CHECK(euler_expand(factor_system_gf(v, a, act.n)) == weyl_multiply(g, f));
                }
    }
}

TEST_CASE("evaluate_factor_system") {
    EulerFactorSystem sys;
    sys.n = 2;
    sys.roots = {{-1}, {}};
    CHECK(evaluate_factor_system(sys, {6, 3}, 7) == 0);  // 6 = -1 mod 7

    EulerFactorSystem empty;
    empty.n = 2;
    empty.roots = {{}, {}};
    CHECK(evaluate_factor_system(empty, {4, 5}, 7) == 1);

    EulerFactorSystem two;
    two.n = 1;
    two.roots = {{0, 1}};
    CHECK(evaluate_factor_system(two, {2}, 7) == 2);  // 2 * 1

    CHECK_THROWS(evaluate_factor_system(two, {2}, 6));  // composite p
}

TEST_CASE("is_prime") {
    CHECK(is_prime(2));
    CHECK(is_prime(1009));
    CHECK_FALSE(is_prime(1));
    CHECK_FALSE(is_prime(882));
}
