#pragma once

#include <planch/gln.hpp>

#include <optional>

namespace planch {

struct CatalogError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

enum class CatalogGroup { Sp4, G2 };
std::string group_name(CatalogGroup g);

// A hard-coded rank-1 Plancherel component: a one-variable contour integrand
// taken against dz/(2 pi i z). Entries whose source convention was a plain-dz
// integral carry the extra z power inside the integrand; the outer printed
// constant is kept separately in `prefactor`.
struct DensityEntry {
    CatalogGroup group;
    std::string levi_label;  // "Mh", "Ms", "M1", "M2"
    RatFunc prefactor;
    Integrand integrand;
    std::string notes;
};

const DensityEntry& density_entry(const std::string& levi_label);
std::vector<std::string> density_labels();

// Finite Laurent polynomial in the torus coordinate z: exponent -> coefficient.
using TracePoly = std::map<int, Rational>;

// Exact value of the bare contour integral of density * trace, without the
// entry's outer prefactor.
RatFunc sp4_component_integral(const std::string& levi_label, const TracePoly& trace);
// Exact value including the outer prefactor; the result must be zeta-free
// (conjugate pole contributions cancel), else CatalogError.
RatFunc g2_component_integral(const std::string& levi_label, const TracePoly& trace);

struct FormalDegreeEntry {
    std::string label;
    RatFunc value;
    // Fundamental degrees of the finite Weyl group; empty when none is designated.
    std::vector<int> weyl_degrees;
    std::string notes;
};

const FormalDegreeEntry& formal_degree_entry(const std::string& label);
RatFunc formal_degree(const std::string& label);
std::vector<std::string> formal_degree_labels();

// Pole-structure verdict for a denominator: every root must be a root of
// unity, witnessed by its cyclotomic factorization (hence the denominator
// divides the product of (q^n - 1) over the factors found); when Weyl degrees
// are designated, the least k with den | P^k is recorded as well.
struct PoleCheck {
    bool ok = false;
    bool roots_of_unity = false;
    std::vector<std::pair<int, int>> cyclotomic_factors;  // (n, multiplicity), in q
    std::optional<int> poincare_power;
    std::string witness;
};

PoleCheck check_denominator_poles(const RatFunc& value, const std::vector<int>& weyl_degrees);
PoleCheck check_formal_degree_poles(const std::string& label);

}  // namespace planch
