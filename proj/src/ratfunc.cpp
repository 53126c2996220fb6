#include <planch/ratfunc.hpp>

#include <sstream>
#include <stdexcept>

namespace planch {

RatFunc::RatFunc(LaurentPoly num, LaurentPoly den) : num_(std::move(num)), den_(std::move(den)) {
    if (den_.is_zero()) throw std::domain_error("zero denominator");
    canonicalize();
}

void RatFunc::canonicalize() {
    if (num_.is_zero()) {
        den_ = LaurentPoly(1);
        return;
    }
    LaurentPoly g = laurent_gcd(num_, den_);
    if (!g.is_one()) {
        num_ = *try_divide(num_, g);
        den_ = *try_divide(den_, g);
    }
    // den: least exponent 0, least coefficient 1; the monomial unit moves to num
    int shift = den_.low();
    CycRational lead = den_.terms().begin()->second;
    den_ = den_.shifted(-shift).scaled(lead.inverse());
    num_ = num_.shifted(-shift).scaled(lead.inverse());
}

RatFunc RatFunc::operator-() const {
    RatFunc r = *this;
    r.num_ = -r.num_;
    return r;
}

RatFunc RatFunc::operator+(const RatFunc& o) const {
    return RatFunc(num_ * o.den_ + o.num_ * den_, den_ * o.den_);
}

RatFunc RatFunc::operator*(const RatFunc& o) const {
    return RatFunc(num_ * o.num_, den_ * o.den_);
}

RatFunc RatFunc::operator/(const RatFunc& o) const {
    if (o.is_zero()) throw std::domain_error("division by zero");
    return RatFunc(num_ * o.den_, den_ * o.num_);
}

RatFunc RatFunc::inverse() const {
    if (is_zero()) throw std::domain_error("inverse of zero");
    return RatFunc(den_, num_);
}

RatFunc RatFunc::pow(int e) const {
    if (e < 0) return inverse().pow(-e);
    RatFunc r(1), base = *this;
    for (; e > 0; e >>= 1) {
        if (e & 1) r *= base;
        base *= base;
    }
    return r;
}

bool RatFunc::q_representable() const {
    return num_.even_exponents() && num_.rational_coeffs() && den_.even_exponents() &&
           den_.rational_coeffs();
}

Rational RatFunc::evaluate_q(const Rational& q) const {
    Rational d = den_.evaluate_q(q);
    if (d == 0) throw std::domain_error("evaluation at a pole");
    return num_.evaluate_q(q) / d;
}

CycRational RatFunc::evaluate_v(const CycRational& v) const {
    CycRational d = den_.evaluate(v);
    if (d.is_zero()) throw std::domain_error("evaluation at a pole");
    return num_.evaluate(v) / d;
}

std::string laurent_str_q(const LaurentPoly& p) {
    if (p.is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [e2, c] : p.terms()) {
        int e = e2 / 2;
        Rational v = c.rational_part();
        bool neg = v < 0;
        if (neg) v = -v;
        if (first)
            os << (neg ? "-" : "");
        else
            os << (neg ? " - " : " + ");
        if (e == 0) {
            os << to_string(v);
        } else {
            if (v != 1) os << to_string(v) << " ";
            os << "q";
            if (e != 1) os << "^" << e;
        }
        first = false;
    }
    return os.str();
}

std::string RatFunc::str() const {
    bool inQ = q_representable();
    auto render = [&](const LaurentPoly& p) { return inQ ? laurent_str_q(p) : p.str(); };
    if (den_.is_one()) {
        std::string n = render(num_);
        return n;
    }
    std::string n = render(num_), d = render(den_);
    std::string nw = num_.terms().size() > 1 ? "(" + n + ")" : n;
    std::string dw = den_.terms().size() > 1 ? "(" + d + ")" : d;
    return nw + " / " + dw;
}

}  // namespace planch
