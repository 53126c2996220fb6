#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <planch/gln.hpp>

#include <set>

using namespace planch;

namespace {

LaurentPoly one() { return LaurentPoly(1); }
LaurentPoly qp(int e) { return LaurentPoly::q_pow(e); }

LaurentPoly geom(int top) {
    LaurentPoly r;
    for (int i = 0; i <= top; ++i) r += qp(i);
    return r;
}

}  // namespace

TEST_CASE("levi spec") {
    CHECK_THROWS_AS(LeviSpec({2, 1}), std::invalid_argument);
    CHECK_THROWS_AS(LeviSpec({0, 1}), std::invalid_argument);
    CHECK_THROWS_AS(LeviSpec({}), std::invalid_argument);
    LeviSpec levi({1, 1, 2, 2, 2});
    CHECK(levi.n() == 8);
    CHECK(levi.multiplicities() == std::vector<int>{2, 3});
    CHECK(levi.low_exp(0, 2) == 1);
    CHECK(levi.high_exp(0, 2) == 3);
}

TEST_CASE("partition enumeration") {
    CHECK(partitions_of(4).size() == 5);
    CHECK(partitions_of(5).size() == 7);
    CHECK(partitions_of(6).size() == 11);
    for (const auto& p : partitions_of(6)) CHECK_NOTHROW(LeviSpec{p});
}

TEST_CASE("density and constant for two unit blocks") {
    auto [c, f] = build_gln_density(LeviSpec({1, 1}));
    CHECK(c == RatFunc(1));
    REQUIRE(f.factors().size() == 3);  // (z1 - z2)^2 and the two coupled poles
    int numPow = 0, denCount = 0;
    for (const auto& fac : f.factors()) {
        if (fac.power > 0) numPow += fac.power;
        if (fac.power < 0) ++denCount;
    }
    CHECK(numPow == 2);
    CHECK(denCount == 2);
}

TEST_CASE("constant agrees with its raw product shape") {
    for (int n = 1; n <= 5; ++n)
        for (const auto& p : partitions_of(n)) {
            LeviSpec levi(p);
            CHECK(build_gln_density(levi).constant == gln_constant_product_form(levi));
        }
}

TEST_CASE("unit-block values") {
    CHECK(fd1(LeviSpec({1, 1})) == RatFunc(one(), one() + qp(1)));
    CHECK(fd1(LeviSpec({1, 1, 1})) == RatFunc(one(), poincare(WeylFamily::A, 3)));
}

TEST_CASE("cell (2,2)") {
    RatFunc val = fd1(LeviSpec({2, 2}));
    // q^2 (q-1)^2 / (4 (q+1)^2 (q^2+1))
    RatFunc expect(qp(2) * (qp(1) - one()).pow(2),
                   (one() + qp(1)).pow(2) * (one() + qp(2)) * LaurentPoly(4));
    CHECK(val == expect);
    auto rep = singularity_report(val, {2, 3, 4, 6});
    CHECK(rep.singular == std::vector<int>{2, 4});
    CHECK(rep.regular == std::vector<int>{3, 6});
}

TEST_CASE("closed form equals engine for small partitions") {
    for (int n = 1; n <= 4; ++n)
        for (const auto& p : partitions_of(n)) {
            LeviSpec levi(p);
            auto [c, density] = build_gln_density(levi);
            RatFunc viaEngine = integrate_torus(density);
            CAPTURE(n);
            CHECK(closed_form_value(levi, ClumpForm::Cancelled) == viaEngine);
            CHECK(closed_form_value(levi, ClumpForm::Raw) == viaEngine);
        }
}

TEST_CASE("closed form for two unit blocks matches the displayed sum") {
    // 1 + (1 - q)/(1 + q) = 2/(1 + q)
    CHECK(closed_form_value(LeviSpec({1, 1})) == RatFunc(LaurentPoly(2), one() + qp(1)));
}

TEST_CASE("four block tree rooted at the all-zero start") {
    auto [c, density] = build_gln_density(LeviSpec({1, 1, 1, 1}));
    auto branches = enumerate_tree(density);
    RatFunc total;
    std::set<std::vector<int>> chains;  // nontrivial clumps of branches opening z1 -> 0
    for (const auto& b : branches) {
        total += b.value;
        if (!(b.path[0].zero && b.path[0].var == 0)) continue;
        for (const auto& cl : branch_clumps(b))
            if (cl.size() >= 2) chains.insert(cl);
    }
    CHECK(total == integrate_torus(density));
    std::set<std::vector<int>> expect{{2, 3}, {1, 2, 3}, {1, 2}, {1, 3}, {1, 3, 2}};
    CHECK(chains == expect);
}

TEST_CASE("poincare polynomials") {
    CHECK(poincare(WeylFamily::A, 2) == geom(1));
    CHECK(poincare(WeylFamily::A, 4) == geom(1) * geom(2) * geom(3));
    CHECK(poincare(WeylFamily::C2) == geom(1) * geom(3));
    CHECK(poincare(WeylFamily::C2) == (one() + qp(1)).pow(2) * (one() + qp(2)));
    CHECK(poincare(WeylFamily::G2) == geom(1) * geom(5));
    CHECK(poincare_by_degrees({2, 6}) == poincare(WeylFamily::G2));
}

TEST_CASE("denominator divisibility for small partitions") {
    for (int n = 2; n <= 4; ++n) {
        LaurentPoly P = poincare(WeylFamily::A, n);
        for (const auto& p : partitions_of(n)) {
            RatFunc val = fd1_closed(LeviSpec(p));
            auto k = divides_power_of(val.den(), P, n);
            CAPTURE(n);
            CHECK(k.has_value());
        }
    }
}

TEST_CASE("numerator degree stays within the recorded bound") {
    // measured maxima of the numerator's positive v-degree over all partitions
    // of n; they match (n - 1)(n + 2) exactly for n = 1..6
    for (int n = 1; n <= 6; ++n) {
        int seen = 0;
        for (const auto& p : partitions_of(n)) {
            RatFunc val = fd1_closed(LeviSpec(p));
            if (!val.is_zero()) seen = std::max(seen, std::max(0, val.num().high()));
        }
        CAPTURE(n);
        CHECK(seen == (n - 1) * (n + 2));
    }
}
