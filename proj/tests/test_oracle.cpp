#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <planch/catalog.hpp>
#include <planch/gln.hpp>
#include <planch/oracle.hpp>

#include <cmath>
#include <complex>

using namespace planch;

namespace {

using C = std::complex<double>;

RatFunc geom_q(int top) {
    LaurentPoly p;
    for (int i = 0; i < top; ++i) p += LaurentPoly::q_pow(i);
    return RatFunc(p);
}

// constant / prod(multiplicity!), folded into the density so its quadrature
// approximates the formal degree directly
Integrand normalized_density(const LeviSpec& levi) {
    GlnDensity d = build_gln_density(levi);
    Rational scale(1);
    for (int m : levi.multiplicities())
        for (int i = 2; i <= m; ++i) scale /= i;
    Integrand g = d.density;
    g.mul_scalar(d.constant * RatFunc(scale));
    return g;
}

}  // namespace

TEST_CASE("pointwise evaluation matches hand values") {
    Integrand one(1);
    CHECK(eval_integrand_numeric(one, 4.0, {C(0, 1)}) == C(1, 0));

    Integrand zinv(1);
    zinv.mul_var_pow(0, -1);
    C at_i = eval_integrand_numeric(zinv, 4.0, {C(0, 1)});
    CHECK(std::abs(at_i - C(0, -1)) < 1e-15);

    // two-block density at z = (1, -1), q = 4:
    // (1+1)^2 / ((1+4)(1+1/4)) = 4 / 6.25 = 0.64
    Integrand gl2 = build_gln_density(LeviSpec({1, 1})).density;
    C val = eval_integrand_numeric(gl2, 4.0, {C(1, 0), C(-1, 0)});
    CHECK(std::abs(val - C(0.64, 0)) < 1e-14);

    CHECK_THROWS_AS(eval_integrand_numeric(one, 4.0, {C(2, 0)}), OracleError);
    CHECK_THROWS_AS(eval_integrand_numeric(one, 1.0, {C(1, 0)}), OracleError);
    CHECK_THROWS_AS(eval_integrand_numeric(one, 4.0, {C(1, 0), C(1, 0)}), OracleError);

    Integrand polar(1);
    polar.mul_factor({1}, {0}, Coeff{CycRational::zeta_pow(1), 0}, -1);
    C away = eval_integrand_numeric(polar, 4.0, {C(-1, 0)});
    CHECK(std::abs(away) > 0.1);
    std::vector<C> on{std::polar(1.0, 2 * std::acos(-1.0) / kCycOrder)};
    CHECK_THROWS_AS(eval_integrand_numeric(polar, 4.0, on), OracleError);
}

TEST_CASE("quadrature reproduces the known one- and two-variable values") {
    Integrand gl2 = build_gln_density(LeviSpec({1, 1})).density;
    C v2 = quadrature(gl2, {2.0, 1024});
    CHECK(std::abs(v2.real() - 2.0 / 3.0) < 1e-12);
    CHECK(std::abs(v2.imag()) < 1e-10);

    Integrand cell = build_gln_density(LeviSpec({2, 2})).density;
    C v3 = quadrature(cell, {3.0, 1024});
    CHECK(std::abs(v3.real() - 0.2) < 1e-12);
    CHECK(std::abs(v3.imag()) < 1e-10);

    // scalar-only integrand: the average is the scalar itself
    Integrand flat(1);
    flat.mul_scalar(RatFunc(LaurentPoly::q_pow(1)));
    Integrand pinned = flat.substitute(0, Coeff::one(), mono_zero(1));
    CHECK(quadrature(pinned, {2.0, 64}) == C(2, 0));
}

TEST_CASE("quadrature is deterministic and stable across grid refinement") {
    Integrand gl2 = build_gln_density(LeviSpec({1, 1})).density;
    C a = quadrature(gl2, {2.0, 256});
    C b = quadrature(gl2, {2.0, 256});
    CHECK(a == b);
    C fine = quadrature(gl2, {2.0, 2048});
    double exact = 2.0 / 3.0;
    CHECK(std::abs(fine.real() - exact) <= std::abs(a.real() - exact) + 1e-15);
}

TEST_CASE("quadrature rejects bad specs and on-torus poles") {
    Integrand gl2 = build_gln_density(LeviSpec({1, 1})).density;
    CHECK_THROWS_AS(quadrature(gl2, {2.0, 100}), OracleError);
    CHECK_THROWS_AS(quadrature(gl2, {2.0, 32}), OracleError);
    CHECK_THROWS_AS(quadrature(gl2, {1.0, 256}), OracleError);
    CHECK_THROWS_AS(quadrature(gl2, {2.0, 256, 3}), OracleError);
    CHECK_NOTHROW(quadrature(gl2, {2.0, 256, 2}));

    Integrand cauchy(2);
    cauchy.mul_factor({1, 0}, {0, 1}, Coeff::one(), -1);
    CHECK_THROWS_AS(quadrature(cauchy, {2.0, 256}), OracleError);

    Integrand big(3);
    CHECK_THROWS_AS(quadrature(big, {2.0, 1024}), OracleError);
}

TEST_CASE("slice reduction pins one variable of a rotation-invariant integrand") {
    Integrand gl3 = build_gln_density(LeviSpec({1, 1, 1})).density;
    auto sliced = slice_reduce(gl3);
    REQUIRE(sliced.has_value());
    CHECK(sliced->active_count() == 2);

    C full = quadrature(gl3, {2.0, 64});
    C red = quadrature(*sliced, {2.0, 64});
    CHECK(std::abs(full - red) < 1e-12);

    Integrand single(1);
    single.mul_var_pow(0, -1);
    CHECK(!slice_reduce(single).has_value());

    Integrand shifted = build_gln_density(LeviSpec({1, 1})).density;
    shifted.mul_var_pow(0, 1);
    CHECK(!slice_reduce(shifted).has_value());
}

TEST_CASE("comparison report checks values over several q") {
    Integrand gl2 = build_gln_density(LeviSpec({1, 1})).density;
    RatFunc exact = RatFunc(2) / geom_q(2);

    CompareReport good = compare(exact, gl2, {2.0, 3.0, 5.0}, 1e-9, 512);
    CHECK(good.pass);
    CHECK(good.max_relerr < 1e-12);
    REQUIRE(good.rows.size() == 3);
    REQUIRE(good.refinements.size() == 3);
    for (const auto& r : good.refinements) {
        CHECK(r.coarse_n == 256);
        CHECK(r.fine_n == 512);
        CHECK(r.fine_err <= r.coarse_err + 1e-15);
    }
    CHECK(good.text.find("pass") != std::string::npos);

    RatFunc wrong = RatFunc(1) / geom_q(2);
    CompareReport bad = compare(wrong, gl2, {2.0}, 1e-9, 256);
    CHECK(!bad.pass);
    CHECK(bad.max_relerr > 0.5);
    CHECK(bad.text.find("FAIL") != std::string::npos);

    Integrand zero(1);
    zero.mul_scalar(RatFunc());
    CompareReport trivial = compare(RatFunc(), zero, {2.0}, 1e-12, 64);
    CHECK(trivial.pass);
    CHECK(trivial.max_relerr == 0.0);
}

TEST_CASE("three-block formal degree confirmed numerically at q = 2") {
    LeviSpec levi({1, 1, 1});
    Integrand g = normalized_density(levi);
    auto sliced = slice_reduce(g);
    REQUIRE(sliced.has_value());
    CompareReport rep = compare(fd1_closed(levi), *sliced, {2.0}, 1e-9, 512);
    CHECK(rep.pass);
    CHECK(std::abs(rep.rows[0].exact_value.real() - 1.0 / 21.0) < 1e-15);

    // the bare integral itself: 6 / ((1+q)(1+q+q^2)), i.e. 2/7 at q = 2
    auto bare = slice_reduce(build_gln_density(levi).density);
    REQUIRE(bare.has_value());
    CHECK(std::abs(quadrature(*bare, {2.0, 512}).real() - 2.0 / 7.0) < 1e-9);
}

TEST_CASE("catalog densities agree with their exact component integrals") {
    TracePoly unit{{0, Rational(1)}};

    Integrand mh = density_entry("Mh").integrand;
    CompareReport rep_mh = compare(sp4_component_integral("Mh", unit), mh, {2.0, 3.0}, 1e-10, 512);
    CHECK(rep_mh.pass);

    Integrand ms = density_entry("Ms").integrand;
    ms.mul_var_pow(0, 1);  // trace exponent e = 1
    CompareReport rep_ms =
        compare(sp4_component_integral("Ms", TracePoly{{1, Rational(1)}}), ms, {2.0, 3.0}, 1e-10, 512);
    CHECK(rep_ms.pass);

    const DensityEntry& m1 = density_entry("M1");
    Integrand g1 = m1.integrand;
    g1.mul_scalar(m1.prefactor);
    CompareReport rep_m1 = compare(g2_component_integral("M1", unit), g1, {2.0, 3.0}, 1e-8, 512);
    CHECK(rep_m1.pass);

    const DensityEntry& m2 = density_entry("M2");
    Integrand g2 = m2.integrand;
    g2.mul_scalar(m2.prefactor);
    g2.mul_var_pow(0, 2);  // trace exponent e = 2
    CompareReport rep_m2 =
        compare(g2_component_integral("M2", TracePoly{{2, Rational(1)}}), g2, {2.0, 3.0}, 1e-8, 512);
    CHECK(rep_m2.pass);
}
