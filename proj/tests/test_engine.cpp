#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <planch/engine.hpp>

using namespace planch;

namespace {

Coeff qc(int e) { return Coeff{CycRational(1), 2 * e}; }

RatFunc ratq(const LaurentPoly& n, const LaurentPoly& d) { return RatFunc(n, d); }

LaurentPoly one() { return LaurentPoly(1); }
LaurentPoly qp(int e) { return LaurentPoly::q_pow(e); }

// (z_i - z_j)^2 / ((z_i - q z_j)(z_i - q^{-1} z_j)) for unit blocks
void mul_unit_pair(Integrand& f, int i, int j) {
    int k = f.var_count();
    f.mul_factor(mono_unit(k, i), mono_unit(k, j), Coeff::one(), 2);
    f.mul_factor(mono_unit(k, i), mono_unit(k, j), qc(1), -1);
    f.mul_factor(mono_unit(k, i), mono_unit(k, j), qc(-1), -1);
}

Integrand coupled_pair() {
    Integrand f(2);
    mul_unit_pair(f, 0, 1);
    return f;
}

}  // namespace

TEST_CASE("constants and bare monomials") {
    Integrand f(1);
    CHECK(integrate_torus(f) == RatFunc(1));
    f.mul_var_pow(0, 3);
    CHECK(integrate_torus(f) == RatFunc());
    EngineOptions noshort;
    noshort.use_vanishing_shortcut = false;
    CHECK(integrate_torus(f, noshort) == RatFunc());

    Integrand g(2);
    g.mul_var_pow(0, 1);
    g.mul_var_pow(1, -1);
    CHECK(integrate_torus(g) == RatFunc());
    CHECK(integrate_torus(g, noshort) == RatFunc());
}

TEST_CASE("single variable poles") {
    // oint z/(z - q^{-1}) dz/z = 1 (only the inside pole contributes)
    Integrand f(1);
    f.mul_var_pow(0, 1);
    f.mul_factor(mono_unit(1, 0), mono_zero(1), qc(-1), -1);
    CHECK(integrate_torus(f) == RatFunc(1));

    // oint 1/(z - q^{-1}) dz/z = 0: residues at 0 and q^{-1} cancel
    Integrand g(1);
    g.mul_factor(mono_unit(1, 0), mono_zero(1), qc(-1), -1);
    CHECK(integrate_torus(g) == RatFunc());

    // outside pole alone: oint 1/(z - q) dz/z = Res_0 = -q^{-1}
    Integrand h(1);
    h.mul_factor(mono_unit(1, 0), mono_zero(1), qc(1), -1);
    CHECK(integrate_torus(h) == RatFunc(-qp(-1)));

    // double pole inside: oint dz/(z (z - q^{-1})^2) = 0
    Integrand d(1);
    d.mul_factor(mono_unit(1, 0), mono_zero(1), qc(-1), -2);
    CHECK(integrate_torus(d) == RatFunc());
}

TEST_CASE("pole on the contour") {
    Integrand f(1);
    f.mul_factor(mono_unit(1, 0), mono_zero(1), Coeff::one(), -1);
    CHECK_THROWS_AS(integrate_torus(f), ContourPoleError);

    Integrand g(1);
    g.mul_factor(mono_unit(1, 0), mono_zero(1), Coeff{CycRational::zeta_pow(5), 0}, -1);
    CHECK_THROWS_AS(integrate_torus(g), ContourPoleError);

    // modulus below 1 without a v-power: coefficient 1/2 is an inside pole
    Integrand h(1);
    h.mul_var_pow(0, 1);
    h.mul_factor(mono_unit(1, 0), mono_zero(1), Coeff{CycRational(Rational(1, 2)), 0}, -1);
    CHECK(integrate_torus(h) == RatFunc(1));
}

TEST_CASE("two coupled variables") {
    // (z1 - z2)^2 / ((z1 - q z2)(z1 - q^{-1} z2)): integral is 2/(1+q)
    RatFunc expect = ratq(LaurentPoly(2), one() + qp(1));
    CHECK(integrate_torus(coupled_pair()) == expect);

    EngineOptions rev;
    rev.elimination_order = {1, 0};
    CHECK(integrate_torus(coupled_pair(), rev) == expect);

    EngineOptions pref;
    pref.prefer_nonnegative = true;
    CHECK(integrate_torus(coupled_pair(), pref) == expect);

    EngineOptions noshort;
    noshort.use_vanishing_shortcut = false;
    CHECK(integrate_torus(coupled_pair(), noshort) == expect);
}

TEST_CASE("tree enumeration matches the integral") {
    auto branches = enumerate_tree(coupled_pair());
    RatFunc total;
    for (const auto& b : branches) total += b.value;
    CHECK(total == integrate_torus(coupled_pair()));

    // two surviving branches: all-zero decorations, and the chain z1 -> z2
    REQUIRE(branches.size() == 2);
    bool sawChain = false, sawZeros = false;
    for (const auto& b : branches) {
        auto clumps = branch_clumps(b);
        if (clumps.size() == 1 && clumps[0] == std::vector<int>{0, 1}) {
            sawChain = true;
            CHECK(b.value == ratq(one() - qp(1), one() + qp(1)));
            CHECK_FALSE(b.path[0].zero);
            CHECK(b.path[0].coeff == qc(-1));
        }
        if (clumps.size() == 2) {
            sawZeros = true;
            CHECK(b.value == RatFunc(1));
            CHECK(b.path[0].zero);
            CHECK(b.path[1].zero);
        }
    }
    CHECK(sawChain);
    CHECK(sawZeros);
}

TEST_CASE("three variables, unit blocks") {
    // value for three unit blocks: 6/((1+q)(1+q+q^2))
    Integrand f(3);
    mul_unit_pair(f, 0, 1);
    mul_unit_pair(f, 0, 2);
    mul_unit_pair(f, 1, 2);
    RatFunc expect = ratq(LaurentPoly(6), (one() + qp(1)) * (one() + qp(1) + qp(2)));
    CHECK(integrate_torus(f) == expect);

    auto branches = enumerate_tree(f);
    RatFunc total;
    for (const auto& b : branches) total += b.value;
    CHECK(total == expect);

    EngineOptions rev;
    rev.elimination_order = {2, 0, 1};
    CHECK(integrate_torus(f, rev) == expect);
}

TEST_CASE("decoration rendering") {
    Decoration d{1, false, qc(-1), {1, 0, 0}, 1};
    CHECK(d.str() == "z2 -> [q^-1] z1");
    Decoration z{0, true, Coeff::one(), {}, 2};
    CHECK(z.str() == "z1 -> 0 (order 2)");
}
