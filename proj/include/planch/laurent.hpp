#pragma once

#include <planch/cyclotomic.hpp>

#include <map>
#include <optional>
#include <string>

namespace planch {

// Laurent polynomial in the half-power variable v, v^2 = q, with coefficients
// in Q(zeta_m). The term map never holds zero coefficients, so structural
// equality is exact equality.
class LaurentPoly {
  public:
    LaurentPoly() = default;
    LaurentPoly(int n) : LaurentPoly(CycRational(n)) {}
    LaurentPoly(const Rational& r) : LaurentPoly(CycRational(r)) {}
    LaurentPoly(const CycRational& c) {
        if (!c.is_zero()) t_[0] = c;
    }

    static LaurentPoly term(const CycRational& c, int e);
    static LaurentPoly v_pow(int e) { return term(CycRational(1), e); }
    static LaurentPoly q_pow(int e) { return v_pow(2 * e); }

    const std::map<int, CycRational>& terms() const { return t_; }
    bool is_zero() const { return t_.empty(); }
    bool is_one() const;
    bool is_monomial() const { return t_.size() == 1; }
    int low() const;   // least exponent; throws on zero
    int high() const;  // greatest exponent; throws on zero
    CycRational coeff(int e) const;

    // True when every coefficient lies in Q.
    bool rational_coeffs() const;
    // True when only even powers of v occur, i.e. the value lives in Q(zeta)[q, 1/q].
    bool even_exponents() const;

    LaurentPoly operator-() const;
    LaurentPoly& operator+=(const LaurentPoly& o);
    LaurentPoly& operator-=(const LaurentPoly& o);
    LaurentPoly operator*(const LaurentPoly& o) const;
    friend LaurentPoly operator+(LaurentPoly a, const LaurentPoly& b) { return a += b; }
    friend LaurentPoly operator-(LaurentPoly a, const LaurentPoly& b) { return a -= b; }
    LaurentPoly& operator*=(const LaurentPoly& o) { return *this = *this * o; }
    LaurentPoly pow(int e) const;  // e >= 0
    LaurentPoly shifted(int k) const;
    LaurentPoly scaled(const CycRational& c) const;

    bool operator==(const LaurentPoly& o) const { return t_ == o.t_; }
    bool operator!=(const LaurentPoly& o) const { return !(*this == o); }

    CycRational evaluate(const CycRational& v) const;  // needs low() >= 0 unless v != 0
    // Evaluation at a rational q; requires even exponents and rational coefficients.
    Rational evaluate_q(const Rational& q) const;

    std::string str() const;  // in v, lowest exponent first

  private:
    std::map<int, CycRational> t_;
};

// Quotient when b divides a exactly (Laurent sense: monomial factors are units).
std::optional<LaurentPoly> try_divide(const LaurentPoly& a, const LaurentPoly& b);

// Monic gcd of the ordinary-polynomial parts (both arguments shifted so their
// least exponent is 0). gcd(0, b) is the normalized b.
LaurentPoly laurent_gcd(const LaurentPoly& a, const LaurentPoly& b);

// Phi_n as a polynomial in q (even powers of v).
LaurentPoly cyclotomic_in_q(int n);

// Least k in [1, kmax] with den | P^k, if any.
std::optional<int> divides_power_of(const LaurentPoly& den, const LaurentPoly& P, int kmax);

// Whether every root of den (as polynomial in v, up to monomial factors) is a
// root of unity. Divides out Phi_n(v) for all n with phi(n) <= deg and checks
// that only a constant remains.
bool roots_are_roots_of_unity(const LaurentPoly& den);

}  // namespace planch
