#pragma once

#include <planch/ratfunc.hpp>

#include <stdexcept>
#include <vector>

namespace planch {

// Exponent vector over the full variable set; entries of inactive variables are 0.
using Monomial = std::vector<int>;

Monomial mono_zero(int k);
Monomial mono_unit(int k, int var);
bool mono_is_zero(const Monomial& m);
Monomial mono_add(const Monomial& a, const Monomial& b);
Monomial mono_sub(const Monomial& a, const Monomial& b);
Monomial mono_scale(int s, const Monomial& a);
// lexicographic by entries, first difference decides
int mono_cmp(const Monomial& a, const Monomial& b);
std::string mono_str(const Monomial& m);  // "z1 z3^-2", "1" for the empty monomial

// A nonzero a * v^e with a in Q(zeta_m); coefficient of one side of a linear factor.
struct Coeff {
    CycRational a = CycRational(1);
    int e = 0;

    static Coeff one() { return {}; }
    bool is_one() const { return e == 0 && a == CycRational(1); }
    Coeff times(const Coeff& o) const { return {a * o.a, e + o.e}; }
    Coeff inv() const { return {a.inverse(), -e}; }
    Coeff neg() const { return {-a, e}; }
    Coeff pow(int p) const;
    bool operator==(const Coeff& o) const { return a == o.a && e == o.e; }
    LaurentPoly poly() const { return LaurentPoly::term(a, e); }
    RatFunc rat() const { return RatFunc(poly()); }
    std::string str() const;
};

// (z^left - coeff z^right)^power, oriented so left > right lexicographically.
// left == right never occurs (such factors are scalars and get absorbed).
struct LinearFactor {
    Monomial left, right;
    Coeff coeff;
    int power = 1;
};

struct ContourPoleError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct PoleSubstitutionError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct EngineError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// scalar * z^prefactor * prod_f (z^left_f - c_f z^right_f)^power_f over active
// variables of the unit torus. The measure convention (dz/z per variable) is
// applied by the evaluator, not stored here.
class Integrand {
  public:
    explicit Integrand(int k);

    int var_count() const { return k_; }
    bool active(int var) const { return active_[var]; }
    const std::vector<char>& active_set() const { return active_; }
    int active_count() const;
    const RatFunc& scalar() const { return scalar_; }
    const Monomial& prefactor() const { return prefactor_; }
    const std::vector<LinearFactor>& factors() const { return factors_; }
    bool is_zero() const { return scalar_.is_zero(); }
    // fully integrated: value = scalar (prefactor and factors are all absorbed)
    bool is_scalar() const { return factors_.empty() && mono_is_zero(prefactor_); }

    void mul_scalar(const RatFunc& s);
    void mul_monomial(const Monomial& m);
    void mul_var_pow(int var, int e);
    // Multiplies by (z^l - c z^r)^p, canonicalizing orientation and merging
    // with an existing factor of the same key. l == r is absorbed into the
    // scalar; a vanishing factor with p > 0 zeroes the integrand, with p < 0
    // it throws PoleSubstitutionError.
    void mul_factor(Monomial l, Monomial r, Coeff c, int p);

    // z_var := c * z^target (target[var] == 0); deactivates var.
    Integrand substitute(int var, const Coeff& c, const Monomial& target) const;
    // z_var := 0; requires prefactor[var] >= 0 after measure folding.
    Integrand substitute_zero(int var) const;

    // Formal d/dz_var as a sum of integrands.
    std::vector<Integrand> derivative(int var) const;

    // Order of vanishing at z_var = 0 (negative = pole order), prefactor included.
    int valuation_at_zero(int var) const;

    // Residue at z_var = 0 as a sum of integrands over the remaining variables.
    // Requires valuation_at_zero(var) <= -1.
    std::vector<Integrand> residue_at_zero(int var) const;

    // Residue at the solvable pole of denominator factor i in variable var.
    // The factor must have var-degree difference +-1 between its sides.
    std::vector<Integrand> residue_at_factor(int var, size_t i) const;

    // Pole location of factor i solved for var: z_var = c z^t. Requires the
    // var-degree difference between the factor's sides to be +-1.
    std::pair<Coeff, Monomial> pole_location(int var, size_t i) const;

    bool operator==(const Integrand& o) const;
    std::string str() const;

  private:
    int k_;
    std::vector<char> active_;
    RatFunc scalar_;
    Monomial prefactor_;
    std::vector<LinearFactor> factors_;
};

}  // namespace planch
