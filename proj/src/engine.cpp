#include <planch/engine.hpp>

#include <algorithm>
#include <map>
#include <sstream>

namespace planch {

namespace {

enum class PoleSide { Inside, Outside, OnContour };

PoleSide classify(const Coeff& c) {
    if (c.e < 0) return PoleSide::Inside;
    if (c.e > 0) return PoleSide::Outside;
    CycRational m = c.a * c.a.conj();  // |a|^2, real
    if (m == CycRational(1)) return PoleSide::OnContour;
    if (m.is_rational()) return m.rational_part() < 1 ? PoleSide::Inside : PoleSide::Outside;
    throw EngineError("cannot compare pole modulus with 1: " + c.str());
}

int mono_total(const Monomial& m) {
    int s = 0;
    for (int e : m) s += e;
    return s;
}

// Homogeneity degree under z -> lambda z when all factors are balanced;
// nullopt when some factor is not.
std::optional<int> homogeneity(const Integrand& f) {
    int d = mono_total(f.prefactor());
    for (const auto& fac : f.factors()) {
        int dl = mono_total(fac.left);
        if (dl != mono_total(fac.right)) return std::nullopt;
        d += fac.power * dl;
    }
    return d;
}

int pick_variable(const Integrand& f, const EngineOptions& opt) {
    if (!opt.elimination_order.empty()) {
        for (int v : opt.elimination_order)
            if (v >= 0 && v < f.var_count() && f.active(v)) return v;
        throw std::logic_error("elimination order exhausted");
    }
    int lowest = -1;
    for (int v = 0; v < f.var_count(); ++v) {
        if (!f.active(v)) continue;
        if (lowest < 0) lowest = v;
        if (opt.prefer_nonnegative && f.prefactor()[v] >= 0) return v;
    }
    return lowest;
}

void emit(TraceSink* t, const std::string& line) {
    if (t) t->event(line);
}

RatFunc eval(const Integrand& f, const EngineOptions& opt, int depth) {
    if (f.is_zero()) return RatFunc();
    if (f.active_count() == 0) {
        if (!f.is_scalar()) throw std::logic_error("leftover structure without variables");
        return f.scalar();
    }
    std::string pad(2 * size_t(depth), ' ');
    if (opt.use_vanishing_shortcut) {
        if (auto d = homogeneity(f); d && *d != 0) {
            emit(opt.trace, pad + "vanishes by homogeneity (degree " + std::to_string(*d) + ")");
            return RatFunc();
        }
    }
    int var = pick_variable(f, opt);
    Integrand g = f;
    g.mul_var_pow(var, -1);  // the dz/z measure
    RatFunc total;
    int v0 = g.valuation_at_zero(var);
    if (v0 < 0) {
        emit(opt.trace, pad + "eliminate z" + std::to_string(var + 1) + ": residue at zero, order " +
                            std::to_string(-v0));
        for (const auto& piece : g.residue_at_zero(var)) total += eval(piece, opt, depth + 1);
    }
    const auto& factors = g.factors();
    for (size_t i = 0; i < factors.size(); ++i) {
        const LinearFactor& fac = factors[i];
        if (fac.power >= 0) continue;
        int a = fac.left[var] - fac.right[var];
        if (a == 0) continue;  // no pole in this variable
        auto [wc, wt] = g.pole_location(var, i);
        PoleSide side = classify(wc);
        if (side == PoleSide::OnContour)
            throw ContourPoleError("pole on the unit torus: z" + std::to_string(var + 1) + " = " +
                                   wc.str() + " " + mono_str(wt));
        if (side == PoleSide::Outside) continue;
        emit(opt.trace, pad + "eliminate z" + std::to_string(var + 1) + ": residue at z" +
                            std::to_string(var + 1) + " = [" + wc.str() + "] " + mono_str(wt) +
                            ", order " + std::to_string(-fac.power));
        for (const auto& piece : g.residue_at_factor(var, i)) total += eval(piece, opt, depth + 1);
    }
    return total;
}

}  // namespace

std::string Decoration::str() const {
    std::ostringstream os;
    os << "z" << var + 1 << " -> ";
    if (zero)
        os << "0";
    else
        os << "[" << coeff.str() << "] " << mono_str(target);
    if (order != 1) os << " (order " << order << ")";
    return os.str();
}

bool Decoration::operator==(const Decoration& o) const {
    return var == o.var && zero == o.zero && order == o.order &&
           (zero || (coeff == o.coeff && target == o.target));
}

RatFunc integrate_torus(const Integrand& f, const EngineOptions& opt) {
    if (!opt.elimination_order.empty()) {
        std::vector<int> sorted = opt.elimination_order;
        std::sort(sorted.begin(), sorted.end());
        if (int(sorted.size()) != f.var_count())
            throw std::logic_error("elimination order length mismatch");
        for (int v = 0; v < f.var_count(); ++v)
            if (sorted[v] != v) throw std::logic_error("elimination order is not a permutation");
    }
    return eval(f, opt, 0);
}

namespace {

void tree_rec(const Integrand& f, int forced, std::vector<Decoration>& path,
              std::map<std::string, Branch>& out, TraceSink* trace) {
    if (f.is_zero()) return;
    if (f.active_count() == 0) {
        if (!f.is_scalar()) throw std::logic_error("leftover structure without variables");
        std::ostringstream key;
        for (const auto& d : path) key << d.str() << ";";
        auto [it, inserted] = out.try_emplace(key.str(), Branch{path, f.scalar()});
        if (!inserted) it->second.value += f.scalar();
        return;
    }
    int var = -1;
    if (forced >= 0 && f.active(forced)) var = forced;
    else
        for (int v = 0; v < f.var_count() && var < 0; ++v)
            if (f.active(v)) var = v;
    Integrand g = f;
    g.mul_var_pow(var, -1);
    int v0 = g.valuation_at_zero(var);
    if (v0 < 0) {
        Decoration d{var, true, Coeff::one(), Monomial(), -v0};
        path.push_back(d);
        emit(trace, "branch " + d.str());
        for (const auto& piece : g.residue_at_zero(var)) tree_rec(piece, -1, path, out, trace);
        path.pop_back();
    }
    const auto& factors = g.factors();
    for (size_t i = 0; i < factors.size(); ++i) {
        const LinearFactor& fac = factors[i];
        if (fac.power >= 0 || fac.left[var] == fac.right[var]) continue;
        auto [wc, wt] = g.pole_location(var, i);
        PoleSide side = classify(wc);
        if (side == PoleSide::OnContour)
            throw ContourPoleError("pole on the unit torus: " + wc.str());
        if (side == PoleSide::Outside) continue;
        int next = -1;
        int nz = 0;
        for (int v = 0; v < f.var_count(); ++v)
            if (wt[v] != 0) { ++nz; next = wt[v] == 1 ? v : -1; }
        if (nz != 1) next = -1;
        Decoration d{var, false, wc, wt, -fac.power};
        path.push_back(d);
        emit(trace, "branch " + d.str());
        for (const auto& piece : g.residue_at_factor(var, i)) tree_rec(piece, next, path, out, trace);
        path.pop_back();
    }
}

}  // namespace

std::vector<Branch> enumerate_tree(const Integrand& f, TraceSink* trace) {
    std::map<std::string, Branch> merged;
    std::vector<Decoration> path;
    tree_rec(f, -1, path, merged, trace);
    std::vector<Branch> out;
    out.reserve(merged.size());
    for (auto& [k, b] : merged)
        if (!b.value.is_zero()) out.push_back(std::move(b));
    return out;
}

std::vector<std::vector<int>> branch_clumps(const Branch& b) {
    std::vector<std::vector<int>> clumps;
    std::vector<int> chain;
    for (size_t i = 0; i < b.path.size(); ++i) {
        const Decoration& d = b.path[i];
        chain.push_back(d.var);
        bool close = true;
        if (!d.zero) {
            int next = -1, nz = 0;
            for (size_t v = 0; v < d.target.size(); ++v)
                if (d.target[v] != 0) { ++nz; next = d.target[v] == 1 ? int(v) : -1; }
            if (nz == 1 && next >= 0 && i + 1 < b.path.size() && b.path[i + 1].var == next)
                close = false;
        }
        if (close) {
            clumps.push_back(chain);
            chain.clear();
        }
    }
    if (!chain.empty()) clumps.push_back(chain);
    return clumps;
}

}  // namespace planch
