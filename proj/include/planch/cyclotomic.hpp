#pragma once

#include <planch/rational.hpp>

#include <string>
#include <vector>

namespace planch {

#ifndef PLANCH_CYC_ORDER
#define PLANCH_CYC_ORDER 12
#endif

// Order m of the coefficient field Q(zeta_m). Fixed at build time; the default
// 12 makes i = zeta^3, zeta_3 = zeta^4 and zeta_6 = zeta^2 available.
inline constexpr int kCycOrder = PLANCH_CYC_ORDER;

// deg Phi_m = phi(m), the dimension of Q(zeta_m) over Q.
int cyc_degree();

// Monic Phi_m, coefficient vector of size cyc_degree()+1, constant term first.
const std::vector<Rational>& cyc_modulus();

// Coefficients of the n-th cyclotomic polynomial, constant term first.
std::vector<Rational> cyclotomic_coeffs(int n);

// Element of Q(zeta_m), stored in the power basis 1, zeta, ..., zeta^{d-1}.
// Coordinates are the canonical form: equality is coordinate-wise.
class CycRational {
  public:
    CycRational() : c_(cyc_degree()) {}
    CycRational(long n) : CycRational(Rational(n)) {}
    CycRational(int n) : CycRational(Rational(n)) {}
    explicit CycRational(Rational r) : c_(cyc_degree()) { c_[0] = std::move(r); }

    static CycRational zeta_pow(long k);
    static CycRational from_coords(std::vector<Rational> c);  // size must be cyc_degree()

    const std::vector<Rational>& coords() const { return c_; }
    bool is_zero() const;
    bool is_rational() const;  // all coordinates above the first vanish
    const Rational& rational_part() const { return c_[0]; }

    CycRational operator-() const;
    CycRational& operator+=(const CycRational& o);
    CycRational& operator-=(const CycRational& o);
    CycRational& operator*=(const CycRational& o);
    friend CycRational operator+(CycRational a, const CycRational& b) { return a += b; }
    friend CycRational operator-(CycRational a, const CycRational& b) { return a -= b; }
    friend CycRational operator*(CycRational a, const CycRational& b) { return a *= b; }

    CycRational inverse() const;  // throws std::domain_error on zero
    CycRational operator/(const CycRational& o) const { return *this * o.inverse(); }

    // Galois conjugation zeta -> zeta^{-1} (complex conjugation on the unit circle).
    CycRational conj() const;

    bool operator==(const CycRational& o) const { return c_ == o.c_; }
    bool operator!=(const CycRational& o) const { return !(*this == o); }

    // "0", "1", "-2/3", "zeta^2", "1/2 + 1/2 zeta^3", ...
    std::string str() const;

  private:
    std::vector<Rational> c_;
};

}  // namespace planch
