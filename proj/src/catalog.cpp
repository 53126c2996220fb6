#include <planch/catalog.hpp>

#include <planch/engine.hpp>

#include <map>
#include <sstream>

namespace planch {

std::string group_name(CatalogGroup g) { return g == CatalogGroup::Sp4 ? "Sp4" : "G2"; }

namespace {

LaurentPoly one() { return LaurentPoly(1); }
LaurentPoly qp(int n) { return LaurentPoly::q_pow(n); }
RatFunc rf(const LaurentPoly& p) { return RatFunc(p); }
RatFunc qr(int n) { return rf(qp(n)); }             // q^n
RatFunc qm1(int n) { return rf(qp(n) - one()); }    // q^n - 1
RatFunc qp1(int n) { return rf(qp(n) + one()); }    // q^n + 1
Coeff cv(int sign, int e) { return Coeff{CycRational(sign), e}; }

RatFunc geom(int d) {  // 1 + q + ... + q^{d-1}
    LaurentPoly p;
    for (int i = 0; i < d; ++i) p += qp(i);
    return rf(p);
}

// q^-2 z (z - q)(z - q^-1) / ((z - q^-2)(z - q^2)); the constant makes the
// value at trace z^e, e >= 0, exactly q^(-2e-2)(q^-2 - q)/(1+q+q^2+q^3), and
// the leading z folds the plain-dz convention into dz/z.
Integrand mh_integrand() {
    Integrand f(1);
    f.mul_scalar(qr(-2));
    f.mul_var_pow(0, 1);
    f.mul_factor({1}, {0}, cv(1, 2), 1);
    f.mul_factor({1}, {0}, cv(1, -2), 1);
    f.mul_factor({1}, {0}, cv(1, -4), -1);
    f.mul_factor({1}, {0}, cv(1, 4), -1);
    return f;
}

// z (z^2 - 1)^2 / ((z + q^-1/2)(z - q^-3/2)(z - q^3/2)(z + q^1/2)); inside
// poles sit at z = 0 (trace-dependent), q^-3/2 and -q^-1/2.
Integrand ms_integrand() {
    Integrand f(1);
    f.mul_var_pow(0, 1);
    f.mul_factor({2}, {0}, cv(1, 0), 2);
    f.mul_factor({1}, {0}, cv(-1, -1), -1);
    f.mul_factor({1}, {0}, cv(1, -3), -1);
    f.mul_factor({1}, {0}, cv(1, 3), -1);
    f.mul_factor({1}, {0}, cv(-1, 1), -1);
    return f;
}

// v^21 (z^3 + q^1/2)(z^3 + q^-1/2)(z + 1)^2 (z - 1)^2 over the ten linear
// factors below; the four poles with zeta_3 coefficients come in conjugate
// pairs, so residue sums are zeta-free.
Integrand g2_m1_integrand() {
    CycRational z3 = CycRational::zeta_pow(kCycOrder / 3);
    CycRational z3sq = z3 * z3;
    Integrand f(1);
    f.mul_scalar(rf(LaurentPoly::v_pow(21)));
    f.mul_factor({3}, {0}, cv(-1, 1), 1);
    f.mul_factor({3}, {0}, cv(-1, -1), 1);
    f.mul_factor({1}, {0}, cv(-1, 0), 2);
    f.mul_factor({1}, {0}, cv(1, 0), 2);
    f.mul_factor({1}, {0}, cv(-1, -3), -1);
    f.mul_factor({1}, {0}, cv(-1, 3), -1);
    f.mul_factor({1}, {0}, Coeff{-z3, 1}, -1);
    f.mul_factor({1}, {0}, Coeff{-z3, -1}, -1);
    f.mul_factor({1}, {0}, Coeff{-z3sq, 1}, -1);
    f.mul_factor({1}, {0}, Coeff{-z3sq, -1}, -1);
    f.mul_factor({1}, {0}, cv(-1, -1), -1);
    f.mul_factor({1}, {0}, cv(1, -1), -1);
    f.mul_factor({1}, {0}, cv(-1, 1), -1);
    f.mul_factor({1}, {0}, cv(1, 1), -1);
    return f;
}

// q^5 (z^2 - 1)^2 (z + q^3/2)(z + q^-3/2) over six linear factors, closed
// under z -> 1/z up to units; trace-z^e values are symmetric in e <-> -e.
Integrand g2_m2_integrand() {
    Integrand f(1);
    f.mul_scalar(qr(5));
    f.mul_factor({2}, {0}, cv(1, 0), 2);
    f.mul_factor({1}, {0}, cv(-1, 3), 1);
    f.mul_factor({1}, {0}, cv(-1, -3), 1);
    f.mul_factor({1}, {0}, cv(1, -1), -1);
    f.mul_factor({1}, {0}, cv(-1, -1), -1);
    f.mul_factor({1}, {0}, cv(-1, -5), -1);
    f.mul_factor({1}, {0}, cv(1, 1), -1);
    f.mul_factor({1}, {0}, cv(-1, 1), -1);
    f.mul_factor({1}, {0}, cv(-1, 5), -1);
    return f;
}

const std::vector<DensityEntry>& density_table() {
    static const std::vector<DensityEntry> table = [] {
        RatFunc half_w = qm1(1) / (RatFunc(2) * qp1(1));  // (q-1)/(2(q+1))
        std::vector<DensityEntry> t;
        t.push_back({CatalogGroup::Sp4, "Mh", half_w, mh_integrand(),
                     "GL1 x Sp2 component; leading z folds plain dz into dz/z"});
        t.push_back({CatalogGroup::Sp4, "Ms", half_w / RatFunc(2), ms_integrand(),
                     "GL2 (Siegel) component; leading z folds plain dz into dz/z"});
        if (kCycOrder % 3 == 0) {
            RatFunc g2_pref = qm1(1) / (RatFunc(2) * qr(5) * qp1(1));
            t.push_back({CatalogGroup::G2, "M1", g2_pref, g2_m1_integrand(),
                         "long-root GL2 component; zeta_3 poles in conjugate pairs"});
            t.push_back({CatalogGroup::G2, "M2", g2_pref, g2_m2_integrand(),
                         "short-root GL2 component; values symmetric in e <-> -e"});
        }
        return t;
    }();
    return table;
}

RatFunc component_value(const DensityEntry& d, const TracePoly& trace) {
    RatFunc total;
    for (const auto& [e, c] : trace) {
        if (c == 0) continue;
        Integrand f = d.integrand;
        f.mul_var_pow(0, e);
        total += RatFunc(c) * integrate_torus(f);
    }
    return total;
}

// The closed forms below vanish identically: the first line contains
// (1 - q^{3-l}) for l = 3 and the second product contains (1 - q^{2-l+i})
// at i = l - 2 for l >= 4.
RatFunc borel_b(int ell) {
    RatFunc r = qr(ell) * qp1(ell) * rf(one() - qp(2 - ell)) * rf(one() - qp(3 - ell)) /
                (qp1(1) * geom(2 * ell));
    for (int i = 1; i <= ell - 1; ++i) r *= qr(2 * i - 1) / geom(2 * i);
    for (int i = 2; i <= ell - 1; ++i)
        r *= qr(2 * i - 2) * rf(one() - qp(1 - ell)) * rf(one() - qp(2 - ell + i)) /
             rf(one() - qp(2 * i - 2));
    return r;
}

RatFunc borel_c_a(int ell) {
    RatFunc r(1);
    for (int i = 0; i <= ell - 1; ++i)
        r *= rf(one() - qp(-1)) * rf(one() - qp(-ell - i + 1)) /
             (rf(one() - qp(-i - 1)) * rf(one() + qp(-i - 1)) * rf(one() + qp(-i + 1)));
    return r;
}

// The (1 + q^{-i+1}) factor is doubled in this branch.
RatFunc borel_c_b(int ell) {
    RatFunc r(1);
    for (int i = 0; i <= ell - 1; ++i)
        r *= rf(one() - qp(-1)) * rf(one() + qp(-ell - i + 3)) /
             (rf(one() - qp(-i - 1)) * rf(one() + qp(-i + 1)) * rf(one() + qp(-i + 1)));
    return r;
}

// prod (1 - q^{e_i}) / P_W with W determined by its exponents e_i.
RatFunc steinberg(const std::vector<int>& exponents) {
    std::vector<int> degrees;
    for (int e : exponents) degrees.push_back(e + 1);
    RatFunc r = RatFunc(1) / rf(poincare_by_degrees(degrees));
    for (int e : exponents) r *= rf(one() - qp(e));
    return r;
}

const std::vector<FormalDegreeEntry>& formal_degree_table() {
    static const std::vector<FormalDegreeEntry> table = [] {
        const char* kVanishes = "closed form carries a vanishing factor; the value is identically 0";
        std::vector<FormalDegreeEntry> t;
        t.push_back({"Borel.B3", borel_b(3), {2, 4, 6}, kVanishes});
        t.push_back({"Borel.B4", borel_b(4), {2, 4, 6, 8}, kVanishes});
        t.push_back({"Borel.C2.a", borel_c_a(2), {2, 4}, "coincides with SO5.tau2"});
        t.push_back({"Borel.C3.a", borel_c_a(3), {2, 4, 6}, ""});
        t.push_back({"Borel.C4.a", borel_c_a(4), {2, 4, 6, 8}, ""});
        t.push_back({"Borel.C4.b", borel_c_b(4), {2, 4, 6, 8}, "branch occurring only for rank >= 4"});
        t.push_back({"St.A1", steinberg({1}), {2}, "Steinberg"});
        t.push_back({"St.A2", steinberg({1, 2}), {2, 3}, "Steinberg"});
        t.push_back({"St.A3", steinberg({1, 2, 3}), {2, 3, 4}, "Steinberg"});
        t.push_back({"St.A4", steinberg({1, 2, 3, 4}), {2, 3, 4, 5}, "Steinberg"});
        t.push_back({"St.C2", steinberg({1, 3}), {2, 4}, "Steinberg"});
        t.push_back({"St.C3", steinberg({1, 3, 5}), {2, 4, 6}, "Steinberg; same Weyl group as B3"});
        t.push_back({"St.C4", steinberg({1, 3, 5, 7}), {2, 4, 6, 8}, "Steinberg; same Weyl group as B4"});
        t.push_back({"St.G2", steinberg({1, 5}), {2, 6}, "Steinberg"});
        t.push_back({"St.F4", steinberg({1, 5, 7, 11}), {2, 6, 8, 12}, "Steinberg"});
        t.push_back({"G2.tau1", qm1(5) * qm1(1).pow(2) / (qm1(6) * qp1(1)), {2, 6}, ""});
        t.push_back({"G2.tau2",
                     qr(1) * qp1(3) * qm1(1).pow(2) / (RatFunc(6) * geom(6) * qp1(1).pow(2)),
                     {2, 6}, ""});
        t.push_back({"G2.tau3", qr(1) * qm1(1).pow(2) * geom(3) / (RatFunc(2) * geom(6) * qp1(1)),
                     {2, 6}, ""});
        t.push_back({"G2.tau4", qr(1) * qm1(1).pow(2) * qp1(1) / (RatFunc(3) * qm1(6)), {2, 6}, ""});
        t.push_back({"SO5.tau2", qr(1) * qm1(1).pow(2) / (RatFunc(2) * qp1(2) * qp1(1).pow(2)),
                     {2, 4}, "both signs share this value"});
        t.push_back({"SO7.tau2", qr(1) * qm1(1).pow(3) / (RatFunc(4) * qp1(2) * qp1(1).pow(3)),
                     {2, 4, 6}, ""});
        t.push_back({"SO7.tau3",
                     qr(1) * qm1(1).pow(2) * qm1(3) / (RatFunc(4) * qp1(3) * qp1(2) * qp1(1)),
                     {2, 4, 6}, ""});
        t.push_back({"SO9.tau1",
                     qm1(4) * qm1(3) * qm1(7) * qm1(2).pow(2) * qm1(1).pow(2) /
                         (RatFunc(2) * qm1(8) * qm1(6) * qm1(4).pow(2) * qp1(1).pow(3)),
                     {2, 4, 6, 8}, "both signs share this value"});
        t.push_back({"SO9.tau3",
                     qr(1) * qm1(5) * qm1(1).pow(3) / (RatFunc(4) * qp1(4) * qp1(3) * qp1(1).pow(3)),
                     {2, 4, 6, 8}, "both signs share this value"});
        t.push_back({"SO9.tau5",
                     qr(2) * qm1(3).pow(2) * qm1(1).pow(2) /
                         (RatFunc(2) * qp1(4) * qp1(2) * qp1(1).pow(4)),
                     {2, 4, 6, 8}, "both signs share this value"});
        t.push_back({"F4.tau",
                     qr(1) * qm1(10) * qm1(7) * qm1(3) * qm1(1).pow(3) * geom(3) /
                         (RatFunc(2) * qm1(12) * qm1(8) * geom(6) * qp1(1).pow(2)),
                     {2, 6, 8, 12}, ""});
        return t;
    }();
    return table;
}

}  // namespace

const DensityEntry& density_entry(const std::string& levi_label) {
    for (const DensityEntry& d : density_table())
        if (d.levi_label == levi_label) return d;
    throw CatalogError("unknown density label: " + levi_label);
}

std::vector<std::string> density_labels() {
    std::vector<std::string> out;
    for (const DensityEntry& d : density_table()) out.push_back(d.levi_label);
    return out;
}

RatFunc sp4_component_integral(const std::string& levi_label, const TracePoly& trace) {
    const DensityEntry& d = density_entry(levi_label);
    if (d.group != CatalogGroup::Sp4) throw CatalogError(levi_label + " is not an Sp4 component");
    return component_value(d, trace);
}

RatFunc g2_component_integral(const std::string& levi_label, const TracePoly& trace) {
    const DensityEntry& d = density_entry(levi_label);
    if (d.group != CatalogGroup::G2) throw CatalogError(levi_label + " is not a G2 component");
    RatFunc val = d.prefactor * component_value(d, trace);
    if (!val.num().rational_coeffs() || !val.den().rational_coeffs())
        throw CatalogError("residual zeta coefficients in " + levi_label + " value");
    return val;
}

const FormalDegreeEntry& formal_degree_entry(const std::string& label) {
    for (const FormalDegreeEntry& e : formal_degree_table())
        if (e.label == label) return e;
    throw CatalogError("unknown formal degree label: " + label);
}

RatFunc formal_degree(const std::string& label) { return formal_degree_entry(label).value; }

std::vector<std::string> formal_degree_labels() {
    std::vector<std::string> out;
    for (const FormalDegreeEntry& e : formal_degree_table()) out.push_back(e.label);
    return out;
}

namespace {

LaurentPoly cyclotomic_in_v(int n) {
    LaurentPoly p;
    const std::vector<Rational>& c = cyclotomic_coeffs(n);
    for (size_t i = 0; i < c.size(); ++i)
        if (c[i] != 0) p += LaurentPoly::term(CycRational(c[i]), static_cast<int>(i));
    return p;
}

}  // namespace

PoleCheck check_denominator_poles(const RatFunc& value, const std::vector<int>& weyl_degrees) {
    PoleCheck r;
    const LaurentPoly& den = value.den();
    r.roots_of_unity = roots_are_roots_of_unity(den);

    // Cyclotomic factorization of the denominator, in q when it is a
    // polynomial in q and in v otherwise. Phi_n divides q^n - 1 either way,
    // so the factorization doubles as the (q^n - 1)-product witness.
    bool in_q = den.even_exponents();
    LaurentPoly rest = den;
    LaurentPoly witness_product(1);
    int deg = in_q ? (den.high() - den.low()) / 2 : den.high() - den.low();
    // phi(n) >= sqrt(n/2), so a divisor Phi_n needs n <= 2 deg^2
    for (int n = 1; n <= 2 * deg * deg && !rest.is_monomial(); ++n) {
        int mult = 0;
        while (true) {
            auto d = try_divide(rest, in_q ? cyclotomic_in_q(n) : cyclotomic_in_v(n));
            if (!d) break;
            rest = *d;
            ++mult;
        }
        if (mult) {
            r.cyclotomic_factors.push_back({n, mult});
            witness_product *= (qp(n) - one()).pow(mult);
        }
    }
    bool complete = rest.is_monomial();
    bool product_covers = complete && try_divide(witness_product, den).has_value();

    if (!weyl_degrees.empty())
        r.poincare_power = divides_power_of(den, poincare_by_degrees(weyl_degrees), 8);

    r.ok = r.roots_of_unity && (weyl_degrees.empty() || product_covers);

    std::ostringstream w;
    if (den.is_one()) {
        w << "denominator 1";
    } else if (complete) {
        w << "den =";
        for (const auto& [n, m] : r.cyclotomic_factors) {
            w << " Phi_" << n << (in_q ? "(q)" : "(v)");
            if (m > 1) w << "^" << m;
        }
        w << " * unit; divides";
        for (const auto& [n, m] : r.cyclotomic_factors) {
            w << " (q^" << n << "-1)";
            if (m > 1) w << "^" << m;
        }
    } else {
        w << "denominator has a root that is not a root of unity";
    }
    if (r.poincare_power)
        w << "; divides P^" << *r.poincare_power;
    else if (!weyl_degrees.empty() && !den.is_one())
        w << "; no Poincare power up to 8";
    r.witness = w.str();
    return r;
}

PoleCheck check_formal_degree_poles(const std::string& label) {
    const FormalDegreeEntry& e = formal_degree_entry(label);
    return check_denominator_poles(e.value, e.weyl_degrees);
}

}  // namespace planch
