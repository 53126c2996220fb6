#include <planch/cyclotomic.hpp>

#include <mutex>
#include <sstream>
#include <stdexcept>

namespace planch {

namespace {

using Poly = std::vector<Rational>;  // dense, constant term first, no trailing zeros

void trim(Poly& p) {
    while (!p.empty() && p.back() == 0) p.pop_back();
}

Poly mul(const Poly& a, const Poly& b) {
    if (a.empty() || b.empty()) return {};
    Poly r(a.size() + b.size() - 1);
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
    trim(r);
    return r;
}

// Exact quotient; requires b | a with b monic or at least exact over Q.
Poly divExact(Poly a, const Poly& b) {
    Poly q(a.size() >= b.size() ? a.size() - b.size() + 1 : 0);
    while (a.size() >= b.size() && !a.empty()) {
        Rational c = a.back() / b.back();
        size_t shift = a.size() - b.size();
        q[shift] = c;
        for (size_t i = 0; i < b.size(); ++i) a[shift + i] -= c * b[i];
        trim(a);
    }
    if (!a.empty()) throw std::logic_error("inexact cyclotomic division");
    return q;
}

Poly cyclotomicPoly(int n) {
    // Phi_n = (x^n - 1) / prod_{d | n, d < n} Phi_d
    Poly num(n + 1);
    num[0] = -1;
    num[n] = 1;
    for (int d = 1; d < n; ++d) {
        if (n % d != 0) continue;
        num = divExact(std::move(num), cyclotomicPoly(d));
    }
    return num;
}

struct Tables {
    Poly modulus;                  // Phi_m
    int deg;                       // phi(m)
    std::vector<Poly> zetaPow;     // zeta^j mod Phi_m for j = 0..m-1, padded to deg
};

const Tables& tables() {
    static const Tables t = [] {
        Tables t;
        t.modulus = cyclotomicPoly(kCycOrder);
        t.deg = int(t.modulus.size()) - 1;
        t.zetaPow.resize(kCycOrder);
        Poly cur{Rational(1)};
        for (int j = 0; j < kCycOrder; ++j) {
            Poly padded = cur;
            padded.resize(t.deg);
            t.zetaPow[j] = std::move(padded);
            // multiply by x, reduce once if the degree reaches deg
            cur.insert(cur.begin(), Rational(0));
            if (int(cur.size()) == t.deg + 1) {
                Rational lead = cur.back();
                cur.pop_back();
                for (int i = 0; i < t.deg; ++i) cur[i] -= lead * t.modulus[i];
                trim(cur);
            }
        }
        return t;
    }();
    return t;
}

// Remainder of a modulo Phi_m, returned padded to length deg.
std::vector<Rational> reduce(Poly a) {
    const Tables& t = tables();
    while (int(a.size()) > t.deg) {
        Rational lead = a.back();
        a.pop_back();
        size_t shift = a.size() - t.deg;
        for (int i = 0; i < t.deg; ++i) a[shift + i] -= lead * t.modulus[i];
        trim(a);
    }
    a.resize(t.deg);
    return a;
}

}  // namespace

int cyc_degree() { return tables().deg; }

const std::vector<Rational>& cyc_modulus() { return tables().modulus; }

std::vector<Rational> cyclotomic_coeffs(int n) {
    if (n < 1) throw std::invalid_argument("cyclotomic index");
    return cyclotomicPoly(n);
}

CycRational CycRational::zeta_pow(long k) {
    long j = k % kCycOrder;
    if (j < 0) j += kCycOrder;
    CycRational r;
    r.c_ = tables().zetaPow[j];
    return r;
}

CycRational CycRational::from_coords(std::vector<Rational> c) {
    if (int(c.size()) != cyc_degree()) throw std::invalid_argument("coordinate count");
    CycRational r;
    r.c_ = std::move(c);
    return r;
}

bool CycRational::is_zero() const {
    for (const auto& x : c_)
        if (x != 0) return false;
    return true;
}

bool CycRational::is_rational() const {
    for (size_t i = 1; i < c_.size(); ++i)
        if (c_[i] != 0) return false;
    return true;
}

CycRational CycRational::operator-() const {
    CycRational r = *this;
    for (auto& x : r.c_) x = -x;
    return r;
}

CycRational& CycRational::operator+=(const CycRational& o) {
    for (size_t i = 0; i < c_.size(); ++i) c_[i] += o.c_[i];
    return *this;
}

CycRational& CycRational::operator-=(const CycRational& o) {
    for (size_t i = 0; i < c_.size(); ++i) c_[i] -= o.c_[i];
    return *this;
}

CycRational& CycRational::operator*=(const CycRational& o) {
    Poly prod(2 * c_.size() - 1);
    for (size_t i = 0; i < c_.size(); ++i) {
        if (c_[i] == 0) continue;
        for (size_t j = 0; j < o.c_.size(); ++j) prod[i + j] += c_[i] * o.c_[j];
    }
    trim(prod);
    c_ = reduce(std::move(prod));
    return *this;
}

CycRational CycRational::inverse() const {
    if (is_zero()) throw std::domain_error("inverse of zero");
    // extended Euclid in Q[x]: s*a + t*Phi = gcd = const (Phi_m irreducible)
    Poly a = c_;
    trim(a);
    Poly b = tables().modulus;
    Poly sa{Rational(1)}, sb{};
    while (!b.empty()) {
        // a = q*b + r
        Poly r = a, q;
        q.assign(r.size() >= b.size() ? r.size() - b.size() + 1 : 0, Rational(0));
        while (r.size() >= b.size() && !r.empty()) {
            Rational c = r.back() / b.back();
            size_t shift = r.size() - b.size();
            q[shift] = c;
            for (size_t i = 0; i < b.size(); ++i) r[shift + i] -= c * b[i];
            trim(r);
        }
        // (a, b) <- (b, r); (sa, sb) <- (sb, sa - q*sb)
        Poly qsb = mul(q, sb);
        Poly snew = sa;
        snew.resize(std::max(snew.size(), qsb.size()));
        for (size_t i = 0; i < qsb.size(); ++i) snew[i] -= qsb[i];
        trim(snew);
        a = std::move(b);
        b = std::move(r);
        sa = std::move(sb);
        sb = std::move(snew);
    }
    // a is a nonzero constant gcd; inverse = sa / a[0]
    Poly inv = sa;
    for (auto& x : inv) x /= a[0];
    CycRational out;
    out.c_ = reduce(std::move(inv));
    return out;
}

CycRational CycRational::conj() const {
    CycRational r;
    for (int i = 0; i < cyc_degree(); ++i) {
        if (c_[i] == 0) continue;
        CycRational term = zeta_pow(-i);
        for (auto& x : term.c_) x *= c_[i];
        r += term;
    }
    return r;
}

std::string CycRational::str() const {
    std::ostringstream os;
    bool first = true;
    for (int i = 0; i < cyc_degree(); ++i) {
        if (c_[i] == 0) continue;
        Rational v = c_[i];
        if (first) {
            if (v < 0) { os << "-"; v = -v; }
        } else {
            os << (v < 0 ? " - " : " + ");
            if (v < 0) v = -v;
        }
        bool unitCoeff = (v == 1 && i > 0);
        if (!unitCoeff) os << to_string(v);
        if (i > 0) {
            if (!unitCoeff) os << " ";
            os << "zeta";
            if (i > 1) os << "^" << i;
        }
        first = false;
    }
    if (first) return "0";
    return os.str();
}

}  // namespace planch
