#pragma once

#include <planch/integrand.hpp>

#include <json.hpp>

namespace planch {

using Json = nlohmann::ordered_json;

struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// JSON shapes (see README for the schema):
//   Rational     "p" or "p/q"
//   CycRational  [rational, ...], power-basis coordinates, length cyc_degree()
//   LaurentPoly  [[v-exponent, CycRational], ...], ascending exponents
//   RatFunc      {"num": LaurentPoly, "den": LaurentPoly}
//   Integrand    {"vars": k, "scalar": RatFunc, "prefactor": [int, ...],
//                 "factors": [{"left": [...], "right": [...],
//                              "coeff": {"a": CycRational, "e": int},
//                              "power": int}, ...]}
// parse(serialize(x)) == x holds exactly; all forms stay canonical.
Json serialize(const Rational& r);
Json serialize(const CycRational& c);
Json serialize(const LaurentPoly& p);
Json serialize(const RatFunc& f);
// Requires every variable active (freshly built integrands).
Json serialize(const Integrand& f);

Rational parse_rational(const Json& j);
CycRational parse_cyc(const Json& j);
LaurentPoly parse_laurent(const Json& j);
RatFunc parse_ratfunc(const Json& j);
Integrand parse_integrand(const Json& j);

// The full density + formal-degree catalog as one JSON document; the
// checked-in data file is exactly this object.
Json catalog_to_json();

}  // namespace planch
