#pragma once

#include <planch/integrand.hpp>

#include <complex>
#include <optional>

namespace planch {

struct OracleError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Equal-angle tensor grid on the unit torus at a concrete q. The integrands
// are smooth and periodic there, so the trapezoid rule converges spectrally.
struct QuadratureSpec {
    double q0 = 2.0;  // > 1
    int grid_n = 1024;  // points per circle, a power of two >= 64
    // expected active-variable count; 0 means inferred from the integrand
    int variables = 0;
};

// Value of f at a point of the torus with v = +sqrt(q0). `point` lists one
// unit-modulus coordinate per active variable, in increasing variable order.
// Throws OracleError if a coordinate is off the torus or a denominator factor
// vanishes at the point (within 1e-13 relative).
std::complex<double> eval_integrand_numeric(const Integrand& f, double q0,
                                            const std::vector<std::complex<double>>& point);

// Trapezoidal approximation of the integral of f against prod dz_i/(2 pi i
// z_i): the plain average of f over the grid. Accumulation is compensated
// long-double in a fixed order, so results are deterministic. A denominator
// factor with |coefficient| = 1 has poles on the torus and raises
// OracleError; a near-vanishing sample is retried once on a half-step-shifted
// grid before giving up.
std::complex<double> quadrature(const Integrand& f, const QuadratureSpec& spec);

// When every factor has equal total degree on both sides and the overall
// rotation degree vanishes, f(lambda z) = f(z), and one variable can be
// pinned to 1 without changing the torus average. Returns the pinned
// integrand, or nullopt when the symmetry does not hold.
std::optional<Integrand> slice_reduce(const Integrand& f);

struct CompareRow {
    double q0;
    std::complex<double> exact_value;
    std::complex<double> quad;
    double relerr;
};
struct RefinementPair {
    double q0;
    int coarse_n, fine_n;
    double coarse_err, fine_err;
};
struct CompareReport {
    bool pass = false;
    double max_relerr = 0.0;
    std::vector<CompareRow> rows;
    std::vector<RefinementPair> refinements;
    std::string text;
};

// Per-q relative error |exact(q) - quadrature| / max(|exact(q)|, 1e-30) at
// grid_n, with a half-grid run recorded as the refinement pair; pass iff
// every fine-grid error is <= tol.
CompareReport compare(const RatFunc& exact, const Integrand& f, const std::vector<double>& qs,
                      double tol, int grid_n = 1024);

}  // namespace planch
