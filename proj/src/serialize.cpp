#include <planch/serialize.hpp>

#include <planch/catalog.hpp>

namespace planch {

Json serialize(const Rational& r) { return to_string(r); }

Json serialize(const CycRational& c) {
    Json a = Json::array();
    for (const Rational& r : c.coords()) a.push_back(serialize(r));
    return a;
}

Json serialize(const LaurentPoly& p) {
    Json a = Json::array();
    for (const auto& [e, c] : p.terms()) a.push_back(Json::array({e, serialize(c)}));
    return a;
}

Json serialize(const RatFunc& f) {
    return Json{{"num", serialize(f.num())}, {"den", serialize(f.den())}};
}

Json serialize(const Integrand& f) {
    for (int v = 0; v < f.var_count(); ++v)
        if (!f.active(v)) throw ParseError("cannot serialize integrand with eliminated variables");
    Json factors = Json::array();
    for (const LinearFactor& lf : f.factors()) {
        factors.push_back(Json{{"left", lf.left},
                               {"right", lf.right},
                               {"coeff", Json{{"a", serialize(lf.coeff.a)}, {"e", lf.coeff.e}}},
                               {"power", lf.power}});
    }
    return Json{{"vars", f.var_count()},
                {"scalar", serialize(f.scalar())},
                {"prefactor", f.prefactor()},
                {"factors", factors}};
}

Rational parse_rational(const Json& j) {
    if (!j.is_string()) throw ParseError("rational: expected string");
    return rational_from_string(j.get<std::string>());
}

CycRational parse_cyc(const Json& j) {
    if (!j.is_array() || j.size() != static_cast<size_t>(cyc_degree()))
        throw ParseError("coordinate list of wrong length");
    std::vector<Rational> c;
    c.reserve(j.size());
    for (const Json& r : j) c.push_back(parse_rational(r));
    return CycRational::from_coords(std::move(c));
}

LaurentPoly parse_laurent(const Json& j) {
    if (!j.is_array()) throw ParseError("laurent: expected array of [exponent, coords]");
    LaurentPoly p;
    for (const Json& t : j) {
        if (!t.is_array() || t.size() != 2) throw ParseError("laurent term: expected pair");
        p += LaurentPoly::term(parse_cyc(t[1]), t[0].get<int>());
    }
    return p;
}

RatFunc parse_ratfunc(const Json& j) {
    if (!j.is_object() || !j.contains("num") || !j.contains("den"))
        throw ParseError("ratfunc: expected {num, den}");
    LaurentPoly den = parse_laurent(j["den"]);
    if (den.is_zero()) throw ParseError("ratfunc: zero denominator");
    return RatFunc(parse_laurent(j["num"]), den);
}

static Monomial parse_monomial(const Json& j, int k) {
    if (!j.is_array() || j.size() != static_cast<size_t>(k))
        throw ParseError("monomial of wrong length");
    Monomial m;
    m.reserve(j.size());
    for (const Json& e : j) m.push_back(e.get<int>());
    return m;
}

Integrand parse_integrand(const Json& j) {
    if (!j.is_object()) throw ParseError("integrand: expected object");
    int k = j.at("vars").get<int>();
    if (k < 0) throw ParseError("integrand: negative variable count");
    Integrand f(k);
    f.mul_scalar(parse_ratfunc(j.at("scalar")));
    f.mul_monomial(parse_monomial(j.at("prefactor"), k));
    for (const Json& lf : j.at("factors")) {
        Coeff c{parse_cyc(lf.at("coeff").at("a")), lf.at("coeff").at("e").get<int>()};
        f.mul_factor(parse_monomial(lf.at("left"), k), parse_monomial(lf.at("right"), k), c,
                     lf.at("power").get<int>());
    }
    return f;
}

Json catalog_to_json() {
    Json densities = Json::array();
    for (const std::string& label : density_labels()) {
        const DensityEntry& d = density_entry(label);
        densities.push_back(Json{{"group", group_name(d.group)},
                                 {"levi", d.levi_label},
                                 {"prefactor", serialize(d.prefactor)},
                                 {"integrand", serialize(d.integrand)},
                                 {"notes", d.notes}});
    }
    Json degrees = Json::array();
    for (const std::string& label : formal_degree_labels()) {
        const FormalDegreeEntry& e = formal_degree_entry(label);
        degrees.push_back(Json{{"label", e.label},
                               {"value", serialize(e.value)},
                               {"weyl_degrees", e.weyl_degrees},
                               {"notes", e.notes}});
    }
    return Json{{"densities", densities}, {"formal_degrees", degrees}};
}

}  // namespace planch
