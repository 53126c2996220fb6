#include <planch/integrand.hpp>

#include <algorithm>
#include <sstream>

namespace planch {

Monomial mono_zero(int k) { return Monomial(k, 0); }

Monomial mono_unit(int k, int var) {
    Monomial m(k, 0);
    m[var] = 1;
    return m;
}

bool mono_is_zero(const Monomial& m) {
    return std::all_of(m.begin(), m.end(), [](int e) { return e == 0; });
}

Monomial mono_add(const Monomial& a, const Monomial& b) {
    Monomial r = a;
    for (size_t i = 0; i < r.size(); ++i) r[i] += b[i];
    return r;
}

Monomial mono_sub(const Monomial& a, const Monomial& b) {
    Monomial r = a;
    for (size_t i = 0; i < r.size(); ++i) r[i] -= b[i];
    return r;
}

Monomial mono_scale(int s, const Monomial& a) {
    Monomial r = a;
    for (auto& e : r) e *= s;
    return r;
}

int mono_cmp(const Monomial& a, const Monomial& b) {
    for (size_t i = 0; i < a.size(); ++i) {
        if (a[i] != b[i]) return a[i] > b[i] ? 1 : -1;
    }
    return 0;
}

std::string mono_str(const Monomial& m) {
    std::ostringstream os;
    bool any = false;
    for (size_t i = 0; i < m.size(); ++i) {
        if (m[i] == 0) continue;
        if (any) os << " ";
        os << "z" << i + 1;
        if (m[i] != 1) os << "^" << m[i];
        any = true;
    }
    return any ? os.str() : "1";
}

Coeff Coeff::pow(int p) const {
    Coeff base = p < 0 ? inv() : *this;
    int n = p < 0 ? -p : p;
    Coeff r = one();
    for (int i = 0; i < n; ++i) r = r.times(base);
    return r;
}

std::string Coeff::str() const {
    std::string head;
    bool unitHead = false;
    if (a == CycRational(1)) {
        unitHead = true;
    } else if (a == CycRational(-1)) {
        head = "-";
        unitHead = true;
    } else if (a.is_rational()) {
        head = to_string(a.rational_part());
    } else {
        std::string s = a.str();
        head = s.find(' ') != std::string::npos ? "(" + s + ")" : s;
    }
    if (e == 0) return unitHead ? (head.empty() ? "1" : head + "1") : head;
    std::string vp;
    if (e % 2 == 0) {
        vp = "q";
        if (e != 2) vp += "^" + std::to_string(e / 2);
    } else {
        vp = "v";
        if (e != 1) vp += "^" + std::to_string(e);
    }
    if (unitHead) return head + vp;
    return head + " " + vp;
}

Integrand::Integrand(int k)
    : k_(k), active_(k, 1), scalar_(1), prefactor_(k, 0) {}

int Integrand::active_count() const {
    return int(std::count(active_.begin(), active_.end(), 1));
}

void Integrand::mul_scalar(const RatFunc& s) { scalar_ *= s; }

void Integrand::mul_monomial(const Monomial& m) {
    for (int i = 0; i < k_; ++i) {
        if (m[i] != 0 && !active_[i]) throw std::logic_error("monomial on inactive variable");
        prefactor_[i] += m[i];
    }
}

void Integrand::mul_var_pow(int var, int e) {
    if (!active_[var]) throw std::logic_error("monomial on inactive variable");
    prefactor_[var] += e;
}

void Integrand::mul_factor(Monomial l, Monomial r, Coeff c, int p) {
    if (p == 0 || is_zero()) return;
    for (int i = 0; i < k_; ++i)
        if ((l[i] != 0 || r[i] != 0) && !active_[i])
            throw std::logic_error("factor on inactive variable");
    if (l == r) {
        // z^l (1 - c): a scalar times a monomial
        LaurentPoly s = LaurentPoly(1) - c.poly();
        if (s.is_zero()) {
            if (p > 0) {
                scalar_ = RatFunc();
                return;
            }
            throw PoleSubstitutionError("substitution lies on a pole divisor");
        }
        scalar_ *= RatFunc(s).pow(p);
        prefactor_ = mono_add(prefactor_, mono_scale(p, l));
        return;
    }
    if (mono_cmp(l, r) < 0) {
        // (z^l - c z^r) = (-c) (z^r - c^{-1} z^l)
        scalar_ *= c.neg().pow(p).rat();
        std::swap(l, r);
        c = c.inv();
    }
    for (auto it = factors_.begin(); it != factors_.end(); ++it) {
        if (it->left == l && it->right == r && it->coeff == c) {
            it->power += p;
            if (it->power == 0) factors_.erase(it);
            return;
        }
    }
    factors_.push_back({std::move(l), std::move(r), std::move(c), p});
}

Integrand Integrand::substitute(int var, const Coeff& c, const Monomial& target) const {
    if (!active_[var]) throw std::logic_error("substitute on inactive variable");
    if (target[var] != 0) throw std::logic_error("self-referential substitution");
    for (int i = 0; i < k_; ++i)
        if (target[i] != 0 && !active_[i]) throw std::logic_error("substitution target inactive");
    Integrand out(k_);
    out.active_ = active_;
    out.active_[var] = 0;
    out.scalar_ = scalar_;
    int pe = prefactor_[var];
    out.prefactor_ = prefactor_;
    out.prefactor_[var] = 0;
    out.prefactor_ = mono_add(out.prefactor_, mono_scale(pe, target));
    out.scalar_ *= c.pow(pe).rat();
    for (const auto& f : factors_) {
        int al = f.left[var], ar = f.right[var];
        Monomial l = f.left, r = f.right;
        l[var] = 0;
        r[var] = 0;
        l = mono_add(l, mono_scale(al, target));
        r = mono_add(r, mono_scale(ar, target));
        // c^al z^l - fc c^ar z^r = c^al (z^l - fc c^{ar-al} z^r)
        out.scalar_ *= c.pow(al * f.power).rat();
        out.mul_factor(std::move(l), std::move(r), f.coeff.times(c.pow(ar - al)), f.power);
        if (out.is_zero()) return out;
    }
    return out;
}

int Integrand::valuation_at_zero(int var) const {
    if (!active_[var]) throw std::logic_error("valuation on inactive variable");
    int v = prefactor_[var];
    for (const auto& f : factors_) v += f.power * std::min(f.left[var], f.right[var]);
    return v;
}

Integrand Integrand::substitute_zero(int var) const {
    int val = valuation_at_zero(var);
    if (val < 0) throw std::logic_error("substituting zero at a pole");
    Integrand out(k_);
    out.active_ = active_;
    out.active_[var] = 0;
    if (val > 0 || is_zero()) {
        out.scalar_ = RatFunc();
        return out;
    }
    out.scalar_ = scalar_;
    Monomial pref = prefactor_;
    pref[var] = 0;
    out.prefactor_ = std::move(pref);
    for (const auto& f : factors_) {
        int m = std::min(f.left[var], f.right[var]);
        Monomial l = f.left, r = f.right;
        l[var] -= m;
        r[var] -= m;
        // the z_var^{p m} part is part of val == 0 bookkeeping and cancels overall
        if (l[var] == 0 && r[var] == 0) {
            l[var] = r[var] = 0;
            out.mul_factor(std::move(l), std::move(r), f.coeff, f.power);
        } else if (l[var] > 0) {
            // surviving side is -c z^r
            r[var] = 0;
            out.scalar_ *= f.coeff.neg().pow(f.power).rat();
            out.prefactor_ = mono_add(out.prefactor_, mono_scale(f.power, r));
        } else {
            l[var] = 0;
            out.prefactor_ = mono_add(out.prefactor_, mono_scale(f.power, l));
        }
        if (out.is_zero()) return out;
    }
    return out;
}

std::vector<Integrand> Integrand::derivative(int var) const {
    if (!active_[var]) throw std::logic_error("derivative on inactive variable");
    std::vector<Integrand> out;
    if (is_zero()) return out;
    Monomial evar = mono_unit(k_, var);
    if (prefactor_[var] != 0) {
        Integrand t = *this;
        t.scalar_ *= RatFunc(Rational(prefactor_[var]));
        t.prefactor_[var] -= 1;
        out.push_back(std::move(t));
    }
    for (size_t i = 0; i < factors_.size(); ++i) {
        const LinearFactor& f = factors_[i];
        int al = f.left[var], ar = f.right[var];
        if (al == 0 && ar == 0) continue;
        Integrand t = *this;
        if (f.power == 1)
            t.factors_.erase(t.factors_.begin() + i);
        else
            t.factors_[i].power -= 1;
        if (al != 0) {
            t.scalar_ *= RatFunc(Rational(f.power * al));
            if (ar != 0) {
                Coeff c2{f.coeff.a * CycRational(Rational(ar, al)), f.coeff.e};
                t.mul_factor(mono_sub(f.left, evar), mono_sub(f.right, evar), c2, 1);
            } else {
                t.prefactor_ = mono_add(t.prefactor_, mono_sub(f.left, evar));
            }
        } else {
            t.scalar_ *= RatFunc(Rational(-f.power * ar)) * f.coeff.rat();
            t.prefactor_ = mono_add(t.prefactor_, mono_sub(f.right, evar));
        }
        if (!t.is_zero()) out.push_back(std::move(t));
    }
    return out;
}

std::vector<Integrand> Integrand::residue_at_zero(int var) const {
    if (is_zero()) return {};
    int o = -valuation_at_zero(var);
    if (o < 1) throw std::logic_error("no pole at zero");
    // Series coefficient extraction: each factor contributes its leading
    // monomial part exactly and a tail series in powers of z_var.
    struct SeriesFactor {
        int d;        // gap between the sides' var-degrees
        int p;        // factor power
        Coeff ratio;  // the tail ratio (without sign), per step
        Monomial step; // monomial advance per step
    };
    Integrand base(k_);
    base.active_ = active_;
    base.active_[var] = 0;
    base.scalar_ = scalar_;
    Monomial acc = prefactor_;  // accumulates var-degree too; checked at the end
    std::vector<SeriesFactor> series;
    for (const auto& f : factors_) {
        int al = f.left[var], ar = f.right[var];
        if (al == ar) {
            Monomial l = f.left, r = f.right;
            l[var] -= al;
            r[var] -= ar;
            acc[var] += f.power * al;
            base.mul_factor(std::move(l), std::move(r), f.coeff, f.power);
            if (base.is_zero()) return {};
            continue;
        }
        if (al < ar) {
            // (z^L - c z^R)^p = z^{pL} sum_k C(p,k) (-c)^k z^{k(R-L)}
            acc = mono_add(acc, mono_scale(f.power, f.left));
            series.push_back({ar - al, f.power, f.coeff, mono_sub(f.right, f.left)});
        } else {
            // = (-c)^p z^{pR} sum_k C(p,k) (-c^{-1})^k z^{k(L-R)}
            base.scalar_ *= f.coeff.neg().pow(f.power).rat();
            acc = mono_add(acc, mono_scale(f.power, f.right));
            series.push_back({al - ar, f.power, f.coeff.inv(), mono_sub(f.left, f.right)});
        }
    }
    int budget = o - 1;
    struct Partial {
        int used;
        Coeff c;
        Monomial m;
    };
    std::vector<Partial> parts{{0, Coeff::one(), mono_zero(k_)}};
    for (const auto& sf : series) {
        std::vector<Partial> next;
        for (const auto& part : parts) {
            for (int k = 0; part.used + k * sf.d <= budget; ++k) {
                // generalized binomial C(p, k), valid for negative p
                Rational binom = 1;
                for (int j = 0; j < k; ++j) binom = binom * Rational(sf.p - j) / Rational(j + 1);
                if (binom == 0) break;
                if (k % 2) binom = -binom;
                Coeff term = part.c.times(sf.ratio.pow(k));
                term.a *= CycRational(binom);
                next.push_back({part.used + k * sf.d, term, mono_add(part.m, mono_scale(k, sf.step))});
            }
        }
        parts = std::move(next);
    }
    std::vector<Integrand> out;
    for (const auto& part : parts) {
        if (part.used != budget) continue;
        Integrand t = base;
        Monomial m = mono_add(acc, part.m);
        if (m[var] != -1) throw std::logic_error("series bookkeeping off");
        m[var] = 0;
        t.prefactor_ = mono_add(t.prefactor_, m);
        t.scalar_ *= part.c.rat();
        if (!t.is_zero()) out.push_back(std::move(t));
    }
    return out;
}

std::pair<Coeff, Monomial> Integrand::pole_location(int var, size_t i) const {
    const LinearFactor& f = factors_.at(i);
    int a = f.left[var] - f.right[var];
    if (a != 1 && a != -1)
        throw EngineError("pole not linear in the eliminated variable: " + str());
    Monomial evar = mono_unit(k_, var);
    if (a == 1) {
        Monomial t = mono_add(mono_sub(f.right, f.left), evar);
        return {f.coeff, std::move(t)};
    }
    Monomial t = mono_add(mono_sub(f.left, f.right), evar);
    return {f.coeff.inv(), std::move(t)};
}

std::vector<Integrand> Integrand::residue_at_factor(int var, size_t i) const {
    const LinearFactor f = factors_.at(i);
    if (f.power >= 0) throw std::logic_error("residue at a numerator factor");
    int o = -f.power;
    auto [wc, wt] = pole_location(var, i);
    int a = f.left[var] - f.right[var];
    Integrand core = *this;
    core.factors_.erase(core.factors_.begin() + i);
    Monomial evar = mono_unit(k_, var);
    if (a == 1) {
        // (z^L - c z^R)^{-o} = z_var^{-o beta} z^{-o L'} (z_var - w)^{-o}
        int beta = f.right[var];
        Monomial lp = mono_sub(f.left, mono_scale(f.left[var], evar));
        core.prefactor_ = mono_sub(core.prefactor_, mono_scale(o, lp));
        core.prefactor_[var] -= o * beta;
    } else {
        int alpha = f.left[var];
        Monomial rp = mono_sub(f.right, mono_scale(f.right[var], evar));
        core.prefactor_ = mono_sub(core.prefactor_, mono_scale(o, rp));
        core.prefactor_[var] -= o * alpha;
        core.scalar_ *= f.coeff.neg().pow(-o).rat();
    }
    std::vector<Integrand> cur{std::move(core)};
    for (int j = 1; j < o; ++j) {
        std::vector<Integrand> next;
        for (const auto& t : cur)
            for (auto& d : t.derivative(var)) next.push_back(std::move(d));
        cur = std::move(next);
    }
    RatFunc scale(Rational(1, factorial(o - 1)));
    std::vector<Integrand> out;
    for (const auto& t : cur) {
        Integrand s = t.substitute(var, wc, wt);
        if (s.is_zero()) continue;
        s.mul_scalar(scale);
        out.push_back(std::move(s));
    }
    return out;
}

bool Integrand::operator==(const Integrand& o) const {
    if (k_ != o.k_ || active_ != o.active_ || scalar_ != o.scalar_ || prefactor_ != o.prefactor_)
        return false;
    auto key = [](const LinearFactor& f) {
        return std::tuple(f.left, f.right, f.coeff.e, f.coeff.a.coords(), f.power);
    };
    auto fa = factors_, fb = o.factors_;
    std::sort(fa.begin(), fa.end(), [&](auto& x, auto& y) { return key(x) < key(y); });
    std::sort(fb.begin(), fb.end(), [&](auto& x, auto& y) { return key(x) < key(y); });
    if (fa.size() != fb.size()) return false;
    for (size_t i = 0; i < fa.size(); ++i)
        if (key(fa[i]) != key(fb[i]) || !(fa[i].coeff == fb[i].coeff)) return false;
    return true;
}

std::string Integrand::str() const {
    std::ostringstream os;
    os << "{" << scalar_.str() << "}";
    if (!mono_is_zero(prefactor_)) os << " * " << mono_str(prefactor_);
    for (const auto& f : factors_) {
        os << " * (" << mono_str(f.left) << " - [" << f.coeff.str() << "] " << mono_str(f.right)
           << ")";
        if (f.power != 1) os << "^" << f.power;
    }
    return os.str();
}

}  // namespace planch
