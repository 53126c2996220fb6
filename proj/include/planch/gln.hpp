#pragma once

#include <planch/engine.hpp>

namespace planch {

// Block sizes l_0 <= ... <= l_N of a composition of n into parts; one torus
// variable per block.
struct LeviSpec {
    std::vector<int> blocks;

    explicit LeviSpec(std::vector<int> b);
    int n() const;                    // sum of blocks
    int block_count() const { return int(blocks.size()); }
    std::vector<int> multiplicities() const;  // of each distinct part, in order
    // v-exponents of the two coupling scales for a block pair
    int low_exp(int i, int j) const { return std::abs(blocks[i] - blocks[j]); }
    int high_exp(int i, int j) const { return blocks[i] + blocks[j]; }
};

struct GlnDensity {
    RatFunc constant;
    Integrand density;
};

// All partitions of n as nondecreasing part lists.
std::vector<std::vector<int>> partitions_of(int n);

// Density prod_{i<j} (z_i - a z_j)(z_i - a^{-1} z_j) / ((z_i - b z_j)(z_i - b^{-1} z_j))
// with a = v^{|l_i - l_j|}, b = v^{l_i + l_j}, and its normalization constant.
GlnDensity build_gln_density(const LeviSpec& levi);

// The normalization constant in its raw product shape (pair-and-offset
// exponent products, not simplified); equal to GlnDensity::constant.
RatFunc gln_constant_product_form(const LeviSpec& levi);

// Sum over bookkeeping trees and branches of the product of chain values,
// evaluated from the closed chain formulas rather than residues.
enum class ClumpForm { Cancelled, Raw };
RatFunc closed_form_value(const LeviSpec& levi, ClumpForm form = ClumpForm::Cancelled);

// rank/(prod m_j!) * constant * value; value from the engine or closed form.
RatFunc fd1(const LeviSpec& levi, const EngineOptions& opt = {});
RatFunc fd1_closed(const LeviSpec& levi, ClumpForm form = ClumpForm::Cancelled);

enum class WeylFamily { A, C2, G2 };
// Poincare polynomial in q; rank_param is the n of the symmetric group S_n
// for family A and ignored otherwise.
LaurentPoly poincare(WeylFamily family, int rank_param = 0);
// prod (q^d - 1)/(q - 1) over the fundamental degrees.
LaurentPoly poincare_by_degrees(const std::vector<int>& degrees);

struct SingularityReport {
    std::vector<int> singular;  // orders n with Phi_n(q) dividing the denominator
    std::vector<int> regular;
};
// Which primitive n-th roots of unity (q-points) are poles of the value.
// Requires a q-representable denominator.
SingularityReport singularity_report(const RatFunc& value, const std::vector<int>& orders);

}  // namespace planch
