#include <planch/gln.hpp>

#include <algorithm>
#include <numeric>

namespace planch {

namespace {

LaurentPoly one_minus_q(int e) { return LaurentPoly(1) - LaurentPoly::q_pow(e); }
LaurentPoly one_minus_v(int e) { return LaurentPoly(1) - LaurentPoly::v_pow(e); }
LaurentPoly q_minus_one(int e) { return LaurentPoly::q_pow(e) - LaurentPoly(1); }

}  // namespace

LeviSpec::LeviSpec(std::vector<int> b) : blocks(std::move(b)) {
    if (blocks.empty()) throw std::invalid_argument("empty block list");
    for (int l : blocks)
        if (l < 1) throw std::invalid_argument("block sizes must be positive");
    if (!std::is_sorted(blocks.begin(), blocks.end()))
        throw std::invalid_argument("block sizes must be nondecreasing");
}

int LeviSpec::n() const { return std::accumulate(blocks.begin(), blocks.end(), 0); }

std::vector<int> LeviSpec::multiplicities() const {
    std::vector<int> m;
    for (size_t i = 0; i < blocks.size(); ++i) {
        if (i == 0 || blocks[i] != blocks[i - 1])
            m.push_back(1);
        else
            m.back() += 1;
    }
    return m;
}

std::vector<std::vector<int>> partitions_of(int n) {
    std::vector<std::vector<int>> out;
    std::vector<int> cur;
    auto rec = [&](auto&& self, int rest, int maxPart) -> void {
        if (rest == 0) {
            out.push_back(cur);
            return;
        }
        for (int p = std::min(rest, maxPart); p >= 1; --p) {
            cur.push_back(p);
            self(self, rest - p, p);
            cur.pop_back();
        }
    };
    rec(rec, n, n);
    for (auto& p : out) std::reverse(p.begin(), p.end());  // nondecreasing
    return out;
}

GlnDensity build_gln_density(const LeviSpec& levi) {
    int r = levi.block_count();
    Integrand f(r);
    for (int i = 0; i < r; ++i) {
        for (int j = i + 1; j < r; ++j) {
            int lo = levi.low_exp(i, j), hi = levi.high_exp(i, j);
            Monomial zi = mono_unit(r, i), zj = mono_unit(r, j);
            f.mul_factor(zi, zj, Coeff{CycRational(1), lo}, 1);
            f.mul_factor(zi, zj, Coeff{CycRational(1), -lo}, 1);
            f.mul_factor(zi, zj, Coeff{CycRational(1), hi}, -1);
            f.mul_factor(zi, zj, Coeff{CycRational(1), -hi}, -1);
        }
    }
    // v^{sum l_i^2 - n} prod_i (q - 1)^{l_i} / (l_i (q^{l_i} - 1))
    int sq = 0;
    for (int l : levi.blocks) sq += l * l;
    RatFunc c(LaurentPoly::v_pow(sq - levi.n()));
    for (int l : levi.blocks)
        c *= RatFunc(q_minus_one(1).pow(l), q_minus_one(l).scaled(CycRational(l)));
    return {c, std::move(f)};
}

RatFunc gln_constant_product_form(const LeviSpec& levi) {
    int r = levi.block_count();
    int n = levi.n();
    // pair product over half-integer offsets g: for each i < j, 2g runs from
    // |l_i - l_j| to l_i + l_j - 2 in steps of 2, contributing q^{2g+1}
    int e2 = 0;  // accumulated v-exponent (= 2 * q-exponent)
    for (int i = 0; i < r; ++i)
        for (int j = i + 1; j < r; ++j)
            for (int g2 = levi.low_exp(i, j); g2 <= levi.high_exp(i, j) - 2; g2 += 2)
                e2 += 2 * (g2 + 1);
    RatFunc c(LaurentPoly::v_pow(e2));
    for (int l : levi.blocks) {
        c *= RatFunc(LaurentPoly::q_pow(l * l - l));
        c *= RatFunc(q_minus_one(1).pow(l), q_minus_one(l).scaled(CycRational(l)));
    }
    c *= RatFunc(LaurentPoly::v_pow(n - n * n));  // q^{(n - n^2)/2}
    return c;
}

namespace {

// Chain value after cancellation: sizes l[0..t] along the chain.
RatFunc chain_value_cancelled(const std::vector<int>& l) {
    int t = int(l.size()) - 1;
    RatFunc val(one_minus_q(l[0]) * one_minus_q(l[1]), one_minus_q(l[0] + l[1]));
    for (int k = 1; k <= t - 1; ++k) {
        val *= RatFunc(one_minus_q(l[k + 1]), one_minus_q(l[k] + l[k + 1]));
        for (int r = 0; r < k; ++r) {
            int mid = 0;
            for (int j = r + 1; j <= k; ++j) mid += l[j];
            int Q = l[r] + 2 * mid + l[k + 1];  // v-exponent
            LaurentPoly R = one_minus_v(Q + l[r] - l[k + 1]);
            if (k == t - 1) R *= one_minus_v(Q + l[k + 1] - l[r]);
            val *= RatFunc(R, one_minus_v(Q + l[r] + l[k + 1]));
        }
    }
    return val;
}

// Chain value as a raw product of coupling ratios along the chain.
RatFunc chain_value_raw(const std::vector<int>& l) {
    int t = int(l.size()) - 1;
    auto lo = [&](int a, int b) { return std::abs(l[a] - l[b]); };
    auto hi = [&](int a, int b) { return l[a] + l[b]; };
    RatFunc val(1);
    for (int k = 0; k < t; ++k) {
        val *= RatFunc(one_minus_v(hi(k, k + 1) + lo(k, k + 1)) *
                           one_minus_v(hi(k, k + 1) - lo(k, k + 1)),
                       one_minus_v(2 * hi(k, k + 1)));
        for (int r = 0; r < k; ++r) {
            int Q = 0;
            for (int j = r; j <= k; ++j) Q += hi(j, j + 1);
            val *= RatFunc(one_minus_v(Q + lo(r, k + 1)) * one_minus_v(Q - lo(r, k + 1)),
                           one_minus_v(Q + hi(r, k + 1)) * one_minus_v(Q - hi(r, k + 1)));
        }
    }
    return val;
}

struct ClosedFormRec {
    const LeviSpec& levi;
    ClumpForm form;
    RatFunc total;

    RatFunc chain_value(const std::vector<int>& chain) {
        std::vector<int> l;
        l.reserve(chain.size());
        for (int i : chain) l.push_back(levi.blocks[i]);
        return form == ClumpForm::Cancelled ? chain_value_cancelled(l) : chain_value_raw(l);
    }

    void rec(unsigned remaining, int forced, const RatFunc& val, std::vector<int>& chain) {
        int i = forced;
        if (i < 0)
            for (int b = 0; b < levi.block_count(); ++b)
                if (remaining & (1u << b)) { i = b; break; }
        unsigned rest = remaining & ~(1u << i);
        chain.push_back(i);
        if (rest == 0) {
            total += chain.size() >= 2 ? val * chain_value(chain) : val;
            chain.pop_back();
            return;
        }
        // close the chain here (this variable maps to zero)
        RatFunc closed = chain.size() >= 2 ? val * chain_value(chain) : val;
        std::vector<int> fresh;
        rec(rest, -1, closed, fresh);
        // or continue the chain into any remaining variable
        for (int j = 0; j < levi.block_count(); ++j)
            if (rest & (1u << j)) rec(rest, j, val, chain);
        chain.pop_back();
    }
};

}  // namespace

RatFunc closed_form_value(const LeviSpec& levi, ClumpForm form) {
    ClosedFormRec cf{levi, form, RatFunc()};
    std::vector<int> chain;
    cf.rec((1u << levi.block_count()) - 1, -1, RatFunc(1), chain);
    return cf.total;
}

namespace {

RatFunc fd1_prefix(const LeviSpec& levi) {
    Integer perm = 1;
    for (int m : levi.multiplicities()) perm *= factorial(m);
    return RatFunc(Rational(Integer(1), perm));  // rank is 1
}

}  // namespace

RatFunc fd1(const LeviSpec& levi, const EngineOptions& opt) {
    auto [c, density] = build_gln_density(levi);
    return fd1_prefix(levi) * c * integrate_torus(density, opt);
}

RatFunc fd1_closed(const LeviSpec& levi, ClumpForm form) {
    auto [c, density] = build_gln_density(levi);
    (void)density;
    return fd1_prefix(levi) * c * closed_form_value(levi, form);
}

LaurentPoly poincare(WeylFamily family, int rank_param) {
    switch (family) {
        case WeylFamily::A: {
            if (rank_param < 1) throw std::invalid_argument("need the n of S_n");
            LaurentPoly p(1);
            for (int i = 1; i < rank_param; ++i) {
                LaurentPoly s;
                for (int j = 0; j <= i; ++j) s += LaurentPoly::q_pow(j);
                p *= s;
            }
            return p;
        }
        case WeylFamily::C2:
            return poincare_by_degrees({2, 4});
        case WeylFamily::G2:
            return poincare_by_degrees({2, 6});
    }
    throw std::invalid_argument("unknown family");
}

LaurentPoly poincare_by_degrees(const std::vector<int>& degrees) {
    LaurentPoly p(1);
    for (int d : degrees) {
        LaurentPoly s;
        for (int j = 0; j < d; ++j) s += LaurentPoly::q_pow(j);
        p *= s;
    }
    return p;
}

SingularityReport singularity_report(const RatFunc& value, const std::vector<int>& orders) {
    if (!value.den().even_exponents() || !value.den().rational_coeffs())
        throw std::domain_error("denominator is not a polynomial in q");
    SingularityReport rep;
    for (int n : orders) {
        if (try_divide(value.den(), cyclotomic_in_q(n)))
            rep.singular.push_back(n);
        else
            rep.regular.push_back(n);
    }
    return rep;
}

}  // namespace planch
