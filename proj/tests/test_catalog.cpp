#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <planch/catalog.hpp>
#include <planch/serialize.hpp>

#include <fstream>

using namespace planch;

namespace {

LaurentPoly one() { return LaurentPoly(1); }
LaurentPoly vp(int e) { return LaurentPoly::v_pow(e); }
LaurentPoly qp(int e) { return LaurentPoly::q_pow(e); }
RatFunc fr(const LaurentPoly& n, const LaurentPoly& d) { return RatFunc(n, d); }

RatFunc mh_target(int e) {
    return fr(qp(-2 * e - 2) * (qp(-2) - qp(1)), one() + qp(1) + qp(2) + qp(3));
}

RatFunc sp4_value(const std::string& label, int e) {
    return sp4_component_integral(label, TracePoly{{e, Rational(1)}});
}
RatFunc g2_value(const std::string& label, int e) {
    return g2_component_integral(label, TracePoly{{e, Rational(1)}});
}

}  // namespace

TEST_CASE("Mh component values match the displayed case split") {
    for (int e = 0; e <= 3; ++e) {
        CAPTURE(e);
        CHECK(sp4_value("Mh", e) == mh_target(e));
    }
    // below e = 0 a z = 0 residue enters; the difference is a pure Laurent term
    CHECK(sp4_value("Mh", -1) - mh_target(-1) == RatFunc(vp(-4)));
    CHECK(sp4_value("Mh", -2) - mh_target(-2) ==
          RatFunc(one() + vp(-8) - vp(-2) - vp(-6)));
    for (int e = -4; e <= -1; ++e) {
        CAPTURE(e);
        CHECK((sp4_value("Mh", e) - mh_target(e)).is_polynomial());
    }
}

TEST_CASE("component integrals are linear in the trace") {
    TracePoly t{{2, Rational(5)}, {0, Rational(-3)}};
    CHECK(sp4_component_integral("Mh", t) ==
          RatFunc(5) * sp4_value("Mh", 2) - RatFunc(3) * sp4_value("Mh", 0));
    CHECK(sp4_component_integral("Ms", TracePoly{{1, Rational(0)}}).is_zero());
}

TEST_CASE("Ms component values split into the two pole contributions") {
    // value(e) = Laurent + A v^{-3e} + B (-1)^e v^{-e}, where A and B are the
    // residues at z = q^{-3/2} and z = -q^{-1/2}
    RatFunc A = fr(vp(-3) * (one() - vp(6)), (one() + vp(2)) * (one() + vp(4)));
    RatFunc B = fr(vp(1) * (vp(2) - one()), (one() + vp(2)) * (one() + vp(4)));
    for (int e = -3; e <= 3; ++e) {
        CAPTURE(e);
        RatFunc val = sp4_value("Ms", e);
        int sign = (e % 2) ? -1 : 1;
        RatFunc rem = val - A * RatFunc(vp(-3 * e)) - RatFunc(sign) * B * RatFunc(vp(-e));
        CHECK(rem.is_polynomial());
        CHECK_FALSE(val.is_zero());
    }
}

TEST_CASE("Sp4 denominators divide a power of the C2 Poincare polynomial") {
    LaurentPoly P = poincare(WeylFamily::C2);
    for (const char* label : {"Mh", "Ms"}) {
        for (int e = -3; e <= 3; ++e) {
            CAPTURE(label);
            CAPTURE(e);
            RatFunc val = sp4_value(label, e);
            CHECK(divides_power_of(val.den(), P, 4).has_value());
        }
    }
}

TEST_CASE("G2 component values match the frozen anchors") {
    LaurentPoly two(2);
    CHECK(g2_value("M1", 0) ==
          fr(vp(11) * (vp(2) - one()), (vp(2) + one()).pow(2) * (vp(4) - vp(2) + one())));
    CHECK(g2_value("M1", 1) ==
          fr(vp(8) * (vp(2) - one()).pow(2),
             two * (vp(2) + one()) * (vp(4) + vp(2) + one()) * (vp(4) - vp(2) + one())));
    CHECK(g2_value("M1", 2) ==
          fr(-(vp(5) * (vp(2) - one()).pow(2) * (vp(8) + vp(6) + vp(4) + vp(2) + one())),
             two * (vp(2) + one()).pow(2) * (vp(4) + vp(2) + one()) * (vp(4) - vp(2) + one())));
    CHECK(g2_value("M1", 3) == fr(vp(2) * (vp(2) - one()).pow(2), two * (vp(2) + one())));
    CHECK(g2_value("M2", 0) ==
          fr((vp(2) - one()) * (vp(6) + vp(2) + one()),
             (vp(2) + one()).pow(2) * (vp(4) + vp(2) + one()) * (vp(4) - vp(2) + one())));
    CHECK(g2_value("M2", 1) ==
          fr((vp(2) - one()).pow(2) * (vp(4) + one()),
             two * vp(5) * (vp(2) + one()) * (vp(4) + vp(2) + one()) * (vp(4) - vp(2) + one())));
    CHECK(g2_value("M2", 2) ==
          fr(-((vp(2) - one()).pow(2) *
               (vp(14) + vp(10) + vp(8) + vp(6) + vp(4) + vp(2) + one())),
             two * vp(10) * (vp(2) + one()).pow(2) * (vp(4) + vp(2) + one()) *
                 (vp(4) - vp(2) + one())));
    CHECK(g2_value("M2", 3) ==
          fr(-((vp(2) - one()).pow(2) * (vp(4) + one()) * (vp(6) - vp(2) - one())),
             two * vp(15) * (vp(2) + one()) * (vp(4) + vp(2) + one())));
}

TEST_CASE("G2 component values are zeta-free, symmetric and P-bounded") {
    LaurentPoly P = poincare(WeylFamily::G2);
    for (const char* label : {"M1", "M2"}) {
        for (int e = 0; e <= 3; ++e) {
            CAPTURE(label);
            CAPTURE(e);
            RatFunc val = g2_value(label, e);
            CHECK(val.num().rational_coeffs());
            CHECK(val.den().rational_coeffs());
            CHECK(roots_are_roots_of_unity(val.den()));
            CHECK(divides_power_of(val.den(), P, 3).has_value());
            CHECK(g2_value(label, -e) == val);
        }
    }
    CHECK(g2_component_integral("M1", TracePoly{{1, Rational(1) - Rational(1)}}).is_zero());
}

TEST_CASE("density entries expose group, prefactor and notes") {
    CHECK(density_labels() == std::vector<std::string>{"Mh", "Ms", "M1", "M2"});
    const DensityEntry& mh = density_entry("Mh");
    CHECK(mh.group == CatalogGroup::Sp4);
    CHECK(mh.prefactor == fr(qp(1) - one(), LaurentPoly(2) * (one() + qp(1))));
    CHECK(density_entry("M1").prefactor ==
          fr(qp(1) - one(), LaurentPoly(2) * qp(5) * (one() + qp(1))));
    CHECK(group_name(density_entry("M2").group) == "G2");
    CHECK_THROWS_AS(density_entry("Mx"), CatalogError);
    CHECK_THROWS_AS(sp4_component_integral("M1", {}), CatalogError);
    CHECK_THROWS_AS(g2_component_integral("Mh", {}), CatalogError);
}

TEST_CASE("formal degree catalog matches the recorded closed forms") {
    CHECK(formal_degree("SO5.tau2") ==
          fr(qp(1), LaurentPoly(2) * (one() + qp(2))) / fr((one() + qp(1)).pow(2), one()) *
              fr((qp(1) - one()).pow(2), one()));
    CHECK(formal_degree("SO5.tau2") == formal_degree("Borel.C2.a"));
    CHECK(formal_degree("G2.tau4") ==
          fr(qp(1) * (qp(1) - one()).pow(2) * (qp(1) + one()), LaurentPoly(3) * (qp(6) - one())));
    CHECK(formal_degree("St.A1") == fr(one() - qp(1), one() + qp(1)));
    // the full B-type closed forms carry vanishing factors for every rank
    CHECK(formal_degree("Borel.B3").is_zero());
    CHECK(formal_degree("Borel.B4").is_zero());
    // Steinberg values against the symmetric-group Poincare polynomials
    for (int n = 2; n <= 5; ++n) {
        LaurentPoly num(1);
        for (int e = 1; e < n; ++e) num *= one() - qp(e);
        CAPTURE(n);
        CHECK(formal_degree("St.A" + std::to_string(n - 1)) ==
              fr(num, poincare(WeylFamily::A, n)));
    }
    CHECK_THROWS_AS(formal_degree("St.E8"), CatalogError);
}

TEST_CASE("every formal degree entry passes the pole check") {
    for (const std::string& label : formal_degree_labels()) {
        CAPTURE(label);
        PoleCheck c = check_formal_degree_poles(label);
        CHECK(c.ok);
        CHECK(c.roots_of_unity);
        // the denominator divides one power of the designated Poincare polynomial
        const FormalDegreeEntry& e = formal_degree_entry(label);
        REQUIRE(!e.weyl_degrees.empty());
        CHECK(c.poincare_power == 1);
    }
}

TEST_CASE("the pole check reports the witnessing factorization") {
    PoleCheck c = check_formal_degree_poles("SO5.tau2");
    // den = 2 (q^2+1)(q+1)^2 -> Phi_2^2 Phi_4 after canonicalization
    CHECK(c.cyclotomic_factors ==
          std::vector<std::pair<int, int>>{{2, 2}, {4, 1}});
    CHECK(c.witness == "den = Phi_2(q)^2 Phi_4(q) * unit; divides (q^2-1)^2 (q^4-1); divides P^1");

    PoleCheck zero_den = check_denominator_poles(RatFunc(1), {2, 4});
    CHECK(zero_den.ok);
    CHECK(zero_den.witness == "denominator 1; divides P^1");
}

TEST_CASE("a denominator root off the unit circle fails the pole check") {
    RatFunc bad = fr(one(), qp(1) - LaurentPoly(2));  // pole at q = 2
    PoleCheck c = check_denominator_poles(bad, {2});
    CHECK_FALSE(c.ok);
    CHECK_FALSE(c.roots_of_unity);
    CHECK_FALSE(c.poincare_power.has_value());
}

TEST_CASE("serialization round-trips every value shape") {
    // rationals and cyclotomic coordinates
    CycRational z = CycRational::zeta_pow(5) * CycRational(Rational(-7, 3));
    CHECK(parse_cyc(serialize(z)) == z);
    // Laurent polynomials with negative exponents
    LaurentPoly p = vp(-3) * (one() + vp(1)).pow(2) - LaurentPoly(CycRational::zeta_pow(1));
    CHECK(parse_laurent(serialize(p)) == p);
    // canonical rational functions
    RatFunc f = g2_value("M2", 2);
    CHECK(parse_ratfunc(serialize(f)) == f);
    // integrands, including zeta coefficients and powered factors
    for (const std::string& label : density_labels()) {
        CAPTURE(label);
        const Integrand& g = density_entry(label).integrand;
        CHECK(parse_integrand(serialize(g)) == g);
    }
    CHECK_THROWS_AS(parse_ratfunc(Json{{"num", Json::array()}}), ParseError);
    CHECK_THROWS_AS(parse_cyc(Json::array({"1"})), ParseError);
}

TEST_CASE("the checked-in catalog file matches the constructors") {
    std::ifstream in(PLANCH_DATA_FILE);
    REQUIRE(in.good());
    Json filed = Json::parse(in);
    CHECK(filed == catalog_to_json());
    // and the serialized integrands in the file reconstruct exactly
    for (const Json& d : filed.at("densities")) {
        CAPTURE(d.at("levi").get<std::string>());
        CHECK(parse_integrand(d.at("integrand")) ==
              density_entry(d.at("levi").get<std::string>()).integrand);
        CHECK(parse_ratfunc(d.at("prefactor")) ==
              density_entry(d.at("levi").get<std::string>()).prefactor);
    }
    for (const Json& e : filed.at("formal_degrees"))
        CHECK(parse_ratfunc(e.at("value")) == formal_degree(e.at("label").get<std::string>()));
}
