#pragma once

#include <planch/laurent.hpp>

namespace planch {

// Ratio of Laurent polynomials in canonical form: the denominator is an
// ordinary polynomial with constant term 1 and shares no factor with the
// numerator, so equal values have equal representations.
class RatFunc {
  public:
    RatFunc() : den_(1) {}
    RatFunc(int n) : num_(n), den_(1) {}
    RatFunc(const Rational& r) : num_(r), den_(1) {}
    RatFunc(const CycRational& c) : num_(c), den_(1) {}
    RatFunc(const LaurentPoly& p) : num_(p), den_(1) {}
    RatFunc(LaurentPoly num, LaurentPoly den);  // throws on zero denominator

    const LaurentPoly& num() const { return num_; }
    const LaurentPoly& den() const { return den_; }
    bool is_zero() const { return num_.is_zero(); }
    bool is_polynomial() const { return den_.is_one(); }

    RatFunc operator-() const;
    RatFunc operator+(const RatFunc& o) const;
    RatFunc operator-(const RatFunc& o) const { return *this + (-o); }
    RatFunc operator*(const RatFunc& o) const;
    RatFunc operator/(const RatFunc& o) const;
    RatFunc& operator+=(const RatFunc& o) { return *this = *this + o; }
    RatFunc& operator-=(const RatFunc& o) { return *this = *this - o; }
    RatFunc& operator*=(const RatFunc& o) { return *this = *this * o; }
    RatFunc& operator/=(const RatFunc& o) { return *this = *this / o; }
    RatFunc inverse() const;
    RatFunc pow(int e) const;  // any sign

    bool operator==(const RatFunc& o) const { return num_ == o.num_ && den_ == o.den_; }
    bool operator!=(const RatFunc& o) const { return !(*this == o); }

    // True when the value lies in Q(q, 1/q): even v-exponents, rational coefficients.
    bool q_representable() const;
    Rational evaluate_q(const Rational& q) const;  // throws if not q-representable
    CycRational evaluate_v(const CycRational& v) const;

    std::string str() const;  // rendered in q when representable, else in v

  private:
    void canonicalize();
    LaurentPoly num_, den_;
};

// Text rendering of one Laurent polynomial in q; requires q_representable parts.
std::string laurent_str_q(const LaurentPoly& p);

}  // namespace planch
