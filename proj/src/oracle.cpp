#include <planch/oracle.hpp>

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <map>
#include <numbers>
#include <sstream>

namespace planch {

namespace {

using CL = std::complex<long double>;

constexpr long double kTwoPi = 2.0L * std::numbers::pi_v<long double>;

long double to_ld(const Rational& r) { return r.convert_to<long double>(); }

CL pow_int(CL b, int e) {
    if (e < 0) return CL(1.0L) / pow_int(b, -e);
    CL r(1.0L);
    while (e) {
        if (e & 1) r *= b;
        b *= b;
        e >>= 1;
    }
    return r;
}

const std::vector<CL>& zeta_powers() {
    static const std::vector<CL> table = [] {
        std::vector<CL> p(cyc_degree());
        for (int j = 0; j < cyc_degree(); ++j) p[j] = std::polar(1.0L, kTwoPi * j / kCycOrder);
        return p;
    }();
    return table;
}

CL cyc_at(const CycRational& c) {
    const auto& zp = zeta_powers();
    CL s(0.0L);
    for (size_t j = 0; j < c.coords().size(); ++j)
        if (c.coords()[j] != 0) s += to_ld(c.coords()[j]) * zp[j];
    return s;
}

CL laurent_at(const LaurentPoly& p, CL v) {
    CL s(0.0L);
    for (const auto& [e, c] : p.terms()) s += cyc_at(c) * pow_int(v, e);
    return s;
}

CL ratfunc_at(const RatFunc& f, CL v) { return laurent_at(f.num(), v) / laurent_at(f.den(), v); }

// One side of a factor as (active-slot, exponent) pairs; slots index the
// increasing list of active variables, matching the point convention.
struct SidePlan {
    std::vector<std::pair<int, int>> exps;
};
struct FactorPlan {
    SidePlan left, right;
    CL c;
    int power;
};
struct Plan {
    std::vector<int> vars;
    CL scalar;
    SidePlan pref;
    std::vector<FactorPlan> factors;
};

Plan make_plan(const Integrand& f, double q0) {
    if (!(q0 > 1.0)) throw OracleError("q must be > 1");
    Plan p;
    for (int var = 0; var < f.var_count(); ++var)
        if (f.active(var)) p.vars.push_back(var);
    const CL v(std::sqrt(static_cast<long double>(q0)), 0.0L);
    p.scalar = ratfunc_at(f.scalar(), v);
    auto side = [&](const Monomial& m) {
        SidePlan s;
        for (size_t i = 0; i < p.vars.size(); ++i)
            if (m[p.vars[i]] != 0) s.exps.emplace_back(static_cast<int>(i), m[p.vars[i]]);
        return s;
    };
    p.pref = side(f.prefactor());
    for (const auto& fac : f.factors())
        p.factors.push_back({side(fac.left), side(fac.right),
                             cyc_at(fac.coeff.a) * pow_int(v, fac.coeff.e), fac.power});
    return p;
}

CL side_at(const SidePlan& s, const std::vector<CL>& z) {
    CL r(1.0L);
    for (auto [slot, e] : s.exps) r *= pow_int(z[slot], e);
    return r;
}

// Near-vanishing denominator test on squared magnitudes; the bound is a guard,
// not a precise threshold, so norm(lv) + norm(rv) stands in for (|lv| + |rv|)^2.
bool near_zero(const CL& d, const CL& lv, const CL& rv) {
    return std::norm(d) < 1e-26L * (std::norm(lv) + std::norm(rv) + 1e-60L);
}

CL plan_at(const Plan& p, const std::vector<CL>& z, bool& flagged) {
    CL val = p.scalar * side_at(p.pref, z);
    for (const auto& f : p.factors) {
        CL lv = side_at(f.left, z);
        CL rv = f.c * side_at(f.right, z);
        CL d = lv - rv;
        if (f.power < 0 && near_zero(d, lv, rv)) {
            flagged = true;
            return CL(0.0L);
        }
        val *= pow_int(d, f.power);
    }
    return val;
}

struct Kahan {
    long double s = 0.0L, c = 0.0L;
    void add(long double x) {
        long double y = x - c;
        long double t = s + y;
        c = (t - s) - y;
        s = t;
    }
};

bool laurent_real(const LaurentPoly& p) {
    return std::all_of(p.terms().begin(), p.terms().end(),
                       [](const auto& t) { return t.second.conj() == t.second; });
}

// Equal-angle grids (with or without the half-step offset) are closed under
// z -> conj(z), and conj(f(z)) equals the coefficient-conjugated integrand at
// conj(z). So when conjugating every coefficient fixes f, the exact grid sum
// is real and any computed imaginary part is accumulated round-off.
bool conjugation_stable(const Integrand& f) {
    if (!laurent_real(f.scalar().num()) || !laurent_real(f.scalar().den())) return false;
    const auto& facs = f.factors();
    std::vector<bool> used(facs.size(), false);
    for (const auto& fac : facs) {
        CycRational want = fac.coeff.a.conj();
        bool found = false;
        for (size_t i = 0; i < facs.size(); ++i) {
            if (used[i]) continue;
            const LinearFactor& g = facs[i];
            if (g.left == fac.left && g.right == fac.right && g.power == fac.power &&
                g.coeff.e == fac.coeff.e && g.coeff.a == want) {
                used[i] = true;
                found = true;
                break;
            }
        }
        if (!found) return false;
    }
    return true;
}

}  // namespace

std::complex<double> eval_integrand_numeric(const Integrand& f, double q0,
                                            const std::vector<std::complex<double>>& point) {
    Plan p = make_plan(f, q0);
    if (point.size() != p.vars.size())
        throw OracleError("point size does not match the active variable count");
    std::vector<CL> z(point.begin(), point.end());
    for (const auto& c : z)
        if (std::abs(std::abs(c) - 1.0L) > 1e-9L) throw OracleError("point is off the unit torus");
    bool flagged = false;
    CL val = plan_at(p, z, flagged);
    if (flagged) throw OracleError("a denominator factor vanishes at the point");
    return std::complex<double>(val);
}

std::complex<double> quadrature(const Integrand& f, const QuadratureSpec& spec) {
    const int n = spec.grid_n;
    if (n < 64 || (n & (n - 1)) != 0) throw OracleError("grid size must be a power of two >= 64");
    Plan p = make_plan(f, spec.q0);
    const int k = static_cast<int>(p.vars.size());
    if (spec.variables != 0 && spec.variables != k)
        throw OracleError("spec variable count does not match the integrand");
    if (k > 4) throw OracleError("at most 4 active variables supported");
    if (k == 0) return std::complex<double>(p.scalar);
    long long samples = 1;
    for (int i = 0; i < k; ++i) {
        samples *= n;
        if (samples > (1LL << 28)) throw OracleError("grid too large for the variable count");
    }
    // |c| = 1 puts the factor's vanishing locus on the torus itself; the
    // integral does not exist, independent of where the grid lands.
    for (const auto& fac : p.factors)
        if (fac.power < 0 && std::abs(std::abs(fac.c) - 1.0L) < 1e-12L)
            throw OracleError("denominator factor has poles on the unit torus");
    const bool real_sum = conjugation_stable(f);

    for (long double off : {0.0L, 0.5L}) {
        // per active slot and exponent, the n grid powers z_j^e
        std::vector<std::map<int, std::vector<CL>>> tables(k);
        auto need = [&](const SidePlan& s) {
            for (auto [slot, e] : s.exps) tables[slot][e];
        };
        need(p.pref);
        for (const auto& fp : p.factors) {
            need(fp.left);
            need(fp.right);
        }
        for (int slot = 0; slot < k; ++slot)
            for (auto& [e, tab] : tables[slot]) {
                tab.resize(n);
                for (int j = 0; j < n; ++j)
                    tab[j] = std::polar(1.0L, kTwoPi * ((j + off) * e) / n);
            }

        struct SideTabs {
            std::vector<std::pair<int, const std::vector<CL>*>> parts;
        };
        auto compile = [&](const SidePlan& s) {
            SideTabs t;
            for (auto [slot, e] : s.exps) t.parts.emplace_back(slot, &tables[slot][e]);
            return t;
        };
        struct FactTabs {
            SideTabs l, r;
            CL c;
            int power;
        };
        SideTabs pref = compile(p.pref);
        std::vector<FactTabs> facts;
        for (const auto& fp : p.factors)
            facts.push_back({compile(fp.left), compile(fp.right), fp.c, fp.power});
        auto side_val = [](const SideTabs& s, const std::vector<int>& idx) {
            CL r(1.0L);
            for (const auto& [slot, tab] : s.parts) r *= (*tab)[idx[slot]];
            return r;
        };

        Kahan re, im;
        std::vector<int> idx(k, 0);
        bool flagged = false;
        while (!flagged) {
            CL val = p.scalar * side_val(pref, idx);
            for (const auto& ft : facts) {
                CL lv = side_val(ft.l, idx);
                CL rv = ft.c * side_val(ft.r, idx);
                CL d = lv - rv;
                if (ft.power < 0 && near_zero(d, lv, rv)) {
                    flagged = true;
                    break;
                }
                val *= pow_int(d, ft.power);
            }
            if (flagged) break;
            re.add(val.real());
            im.add(val.imag());
            int dim = k - 1;
            while (dim >= 0 && ++idx[dim] == n) idx[dim--] = 0;
            if (dim < 0) {
                const auto total = static_cast<long double>(samples);
                const double real = static_cast<double>(re.s / total);
                return {real, real_sum ? 0.0 : static_cast<double>(im.s / total)};
            }
        }
        // fell through flagged: retry once on the half-step-shifted grid
    }
    throw OracleError("integrand is singular on the sampling grid");
}

std::optional<Integrand> slice_reduce(const Integrand& f) {
    if (f.active_count() < 2) return std::nullopt;
    long total = 0;
    for (int var = 0; var < f.var_count(); ++var) total += f.prefactor()[var];
    for (const auto& fac : f.factors()) {
        long l = 0, r = 0;
        for (int var = 0; var < f.var_count(); ++var) {
            l += fac.left[var];
            r += fac.right[var];
        }
        if (l != r) return std::nullopt;
        total += static_cast<long>(fac.power) * l;
    }
    if (total != 0) return std::nullopt;
    int last = f.var_count() - 1;
    while (!f.active(last)) --last;
    return f.substitute(last, Coeff::one(), mono_zero(f.var_count()));
}

CompareReport compare(const RatFunc& exact, const Integrand& f, const std::vector<double>& qs,
                      double tol, int grid_n) {
    CompareReport rep;
    rep.pass = true;
    std::ostringstream out;
    out << std::setprecision(12);
    const int coarse_n = std::max(grid_n / 2, 64);
    for (double q0 : qs) {
        const CL v(std::sqrt(static_cast<long double>(q0)), 0.0L);
        const std::complex<double> ex(ratfunc_at(exact, v));
        const std::complex<double> fine = quadrature(f, {q0, grid_n});
        const std::complex<double> coarse = quadrature(f, {q0, coarse_n});
        auto rel = [&](const std::complex<double>& approx) {
            return std::abs(ex - approx) / std::max(std::abs(ex), 1e-30);
        };
        const double ef = rel(fine);
        const double ec = rel(coarse);
        rep.rows.push_back({q0, ex, fine, ef});
        rep.refinements.push_back({q0, coarse_n, grid_n, ec, ef});
        rep.max_relerr = std::max(rep.max_relerr, ef);
        if (!(ef <= tol)) rep.pass = false;
        out << "q=" << q0 << " exact=" << ex.real() << " quad=" << fine.real() << " relerr=" << ef
            << " (n=" << coarse_n << ": relerr=" << ec << ")\n";
    }
    out << (rep.pass ? "pass" : "FAIL") << " max relerr " << rep.max_relerr << " tol " << tol
        << "\n";
    rep.text = out.str();
    return rep;
}

}  // namespace planch
