#include <planch/laurent.hpp>

#include <sstream>
#include <stdexcept>

namespace planch {

namespace {

using Dense = std::vector<CycRational>;  // constant term first

void trim(Dense& p) {
    while (!p.empty() && p.back().is_zero()) p.pop_back();
}

// Shift a to least exponent 0 and return (dense form, original least exponent).
std::pair<Dense, int> dense_of(const LaurentPoly& p) {
    if (p.is_zero()) return {Dense{}, 0};
    int lo = p.low();
    Dense d(p.high() - lo + 1);
    for (const auto& [e, c] : p.terms()) d[e - lo] = c;
    return {d, lo};
}

LaurentPoly laurent_of(const Dense& d, int shift) {
    LaurentPoly r;
    for (size_t i = 0; i < d.size(); ++i)
        if (!d[i].is_zero()) r += LaurentPoly::term(d[i], int(i) + shift);
    return r;
}

// a = q*b + r over the coefficient field; b nonzero.
std::pair<Dense, Dense> divmod(Dense a, const Dense& b) {
    Dense q(a.size() >= b.size() ? a.size() - b.size() + 1 : 0);
    CycRational leadInv = b.back().inverse();
    while (a.size() >= b.size() && !a.empty()) {
        CycRational c = a.back() * leadInv;
        size_t shift = a.size() - b.size();
        q[shift] = c;
        for (size_t i = 0; i < b.size(); ++i) a[shift + i] -= c * b[i];
        trim(a);
    }
    return {q, a};
}

int totient(int n) {
    int r = n;
    for (int p = 2; p * p <= n; ++p) {
        if (n % p != 0) continue;
        while (n % p == 0) n /= p;
        r -= r / p;
    }
    if (n > 1) r -= r / n;
    return r;
}

}  // namespace

LaurentPoly LaurentPoly::term(const CycRational& c, int e) {
    LaurentPoly r;
    if (!c.is_zero()) r.t_[e] = c;
    return r;
}

bool LaurentPoly::is_one() const {
    return t_.size() == 1 && t_.begin()->first == 0 && t_.begin()->second == CycRational(1);
}

int LaurentPoly::low() const {
    if (t_.empty()) throw std::domain_error("exponent of zero polynomial");
    return t_.begin()->first;
}

int LaurentPoly::high() const {
    if (t_.empty()) throw std::domain_error("exponent of zero polynomial");
    return t_.rbegin()->first;
}

CycRational LaurentPoly::coeff(int e) const {
    auto it = t_.find(e);
    return it == t_.end() ? CycRational() : it->second;
}

bool LaurentPoly::rational_coeffs() const {
    for (const auto& [e, c] : t_)
        if (!c.is_rational()) return false;
    return true;
}

bool LaurentPoly::even_exponents() const {
    for (const auto& [e, c] : t_)
        if (e % 2 != 0) return false;
    return true;
}

LaurentPoly LaurentPoly::operator-() const {
    LaurentPoly r = *this;
    for (auto& [e, c] : r.t_) c = -c;
    return r;
}

LaurentPoly& LaurentPoly::operator+=(const LaurentPoly& o) {
    for (const auto& [e, c] : o.t_) {
        auto [it, inserted] = t_.try_emplace(e, c);
        if (!inserted) {
            it->second += c;
            if (it->second.is_zero()) t_.erase(it);
        }
    }
    return *this;
}

LaurentPoly& LaurentPoly::operator-=(const LaurentPoly& o) { return *this += -o; }

LaurentPoly LaurentPoly::operator*(const LaurentPoly& o) const {
    LaurentPoly r;
    for (const auto& [e1, c1] : t_)
        for (const auto& [e2, c2] : o.t_) {
            CycRational prod = c1 * c2;
            if (prod.is_zero()) continue;
            auto [it, inserted] = r.t_.try_emplace(e1 + e2, prod);
            if (!inserted) {
                it->second += prod;
                if (it->second.is_zero()) r.t_.erase(it);
            }
        }
    return r;
}

LaurentPoly LaurentPoly::pow(int e) const {
    if (e < 0) throw std::invalid_argument("negative power of polynomial");
    LaurentPoly r(1);
    LaurentPoly base = *this;
    for (; e > 0; e >>= 1) {
        if (e & 1) r *= base;
        base *= base;
    }
    return r;
}

LaurentPoly LaurentPoly::shifted(int k) const {
    LaurentPoly r;
    for (const auto& [e, c] : t_) r.t_[e + k] = c;
    return r;
}

LaurentPoly LaurentPoly::scaled(const CycRational& c) const {
    LaurentPoly r;
    if (c.is_zero()) return r;
    for (const auto& [e, co] : t_) r.t_[e] = co * c;
    return r;
}

CycRational LaurentPoly::evaluate(const CycRational& v) const {
    if (is_zero()) return CycRational();
    int lo = low();
    CycRational base(1);
    if (lo < 0) {
        if (v.is_zero()) throw std::domain_error("pole at v = 0");
        CycRational vi = v.inverse();
        for (int i = 0; i < -lo; ++i) base *= vi;
    } else {
        for (int i = 0; i < lo; ++i) base *= v;
    }
    // Horner from the highest term down to low(); acc ends as p(v) / v^lo.
    CycRational acc;
    bool started = false;
    int prev = 0;
    for (auto it = t_.rbegin(); it != t_.rend(); ++it) {
        if (started)
            for (int i = 0; i < prev - it->first; ++i) acc *= v;
        acc += it->second;
        prev = it->first;
        started = true;
    }
    for (int i = 0; i < prev - lo; ++i) acc *= v;
    return acc * base;
}

Rational LaurentPoly::evaluate_q(const Rational& q) const {
    if (!even_exponents() || !rational_coeffs())
        throw std::domain_error("not a rational function of q");
    Rational acc = 0;
    int prev = 0;
    bool first = true;
    for (auto it = t_.rbegin(); it != t_.rend(); ++it) {
        int e = it->first / 2;
        if (!first)
            for (int i = 0; i < prev - e; ++i) acc *= q;
        acc += it->second.rational_part();
        prev = e;
        first = false;
    }
    if (prev != 0) {
        if (prev > 0)
            for (int i = 0; i < prev; ++i) acc *= q;
        else {
            if (q == 0) throw std::domain_error("pole at q = 0");
            for (int i = 0; i < -prev; ++i) acc /= q;
        }
    }
    return acc;
}

std::string LaurentPoly::str() const {
    if (t_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [e, c] : t_) {
        std::string cs = c.str();
        bool neg = false;
        if (c.is_rational() && c.rational_part() < 0) {
            neg = true;
            cs = (-c).str();
        }
        if (first)
            os << (neg ? "-" : "");
        else
            os << (neg ? " - " : " + ");
        bool wrap = !c.is_rational() && cs.find(' ') != std::string::npos;
        std::string body = wrap ? "(" + cs + ")" : cs;
        if (e == 0) {
            os << body;
        } else {
            if (body != "1") os << body << " ";
            os << "v";
            if (e != 1) os << "^" << e;
        }
        first = false;
    }
    return os.str();
}

std::optional<LaurentPoly> try_divide(const LaurentPoly& a, const LaurentPoly& b) {
    if (b.is_zero()) throw std::domain_error("division by zero polynomial");
    if (a.is_zero()) return LaurentPoly();
    auto [da, la] = dense_of(a);
    auto [db, lb] = dense_of(b);
    auto [q, r] = divmod(std::move(da), db);
    if (!r.empty()) return std::nullopt;
    return laurent_of(q, la - lb);
}

LaurentPoly laurent_gcd(const LaurentPoly& a, const LaurentPoly& b) {
    auto [da, la] = dense_of(a);
    auto [db, lb] = dense_of(b);
    while (!db.empty()) {
        auto [q, r] = divmod(std::move(da), db);
        da = std::move(db);
        db = std::move(r);
    }
    if (da.empty()) return LaurentPoly();
    CycRational leadInv = da.back().inverse();
    for (auto& c : da) c *= leadInv;
    return laurent_of(da, 0);
}

LaurentPoly cyclotomic_in_q(int n) {
    LaurentPoly r;
    auto coeffs = cyclotomic_coeffs(n);
    for (size_t i = 0; i < coeffs.size(); ++i)
        if (coeffs[i] != 0) r += LaurentPoly::term(CycRational(coeffs[i]), 2 * int(i));
    return r;
}

std::optional<int> divides_power_of(const LaurentPoly& den, const LaurentPoly& P, int kmax) {
    LaurentPoly pw(1);
    for (int k = 1; k <= kmax; ++k) {
        pw *= P;
        if (try_divide(pw, den)) return k;
    }
    return std::nullopt;
}

bool roots_are_roots_of_unity(const LaurentPoly& den) {
    if (den.is_zero()) throw std::domain_error("zero denominator");
    auto [d, lo] = dense_of(den);
    int deg = int(d.size()) - 1;
    if (deg == 0) return true;
    // phi(n) >= sqrt(n/2), so phi(n) <= deg forces n <= 2 deg^2.
    int bound = 1;
    for (int n = 2; n <= 2 * deg * deg; ++n)
        if (totient(n) <= deg) bound = n;
    LaurentPoly rem = laurent_of(d, 0);
    for (int n = 1; n <= bound; ++n) {
        LaurentPoly phi;
        auto coeffs = cyclotomic_coeffs(n);
        for (size_t i = 0; i < coeffs.size(); ++i)
            if (coeffs[i] != 0) phi += LaurentPoly::term(CycRational(coeffs[i]), int(i));
        while (true) {
            auto q = try_divide(rem, phi);
            if (!q) break;
            rem = *q;
        }
        if (!rem.is_zero() && rem.high() - rem.low() == 0) return true;
    }
    return rem.high() - rem.low() == 0;
}

}  // namespace planch
