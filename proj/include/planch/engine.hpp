#pragma once

#include <planch/integrand.hpp>

namespace planch {

struct TraceSink {
    virtual ~TraceSink() = default;
    virtual void event(const std::string& line) = 0;
};

struct EngineOptions {
    // Skip integrals that vanish by rotation homogeneity (all factors degree
    // balanced and total monomial degree nonzero).
    bool use_vanishing_shortcut = true;
    // Prefer eliminating a variable with nonnegative monomial exponent.
    bool prefer_nonnegative = false;
    // Explicit elimination order (a permutation of the variables); empty
    // means lowest active index first.
    std::vector<int> elimination_order;
    TraceSink* trace = nullptr;
};

// One step of the evaluation: variable var was eliminated by taking the
// residue at zero or at the solved pole z_var = coeff * z^target.
struct Decoration {
    int var = 0;
    bool zero = false;
    Coeff coeff;
    Monomial target;
    int order = 1;

    std::string str() const;
    bool operator==(const Decoration& o) const;
};

// Integral of f over the unit torus against prod_i dz_i/(2 pi i z_i), taken
// over the active variables, by iterated residues with |q| large.
// Throws ContourPoleError if a pole lies on the torus and EngineError on
// shapes outside the supported fragment (nonlinear solvable poles).
RatFunc integrate_torus(const Integrand& f, const EngineOptions& opt = {});

// A maximal decoration sequence ending in a fully evaluated scalar.
struct Branch {
    std::vector<Decoration> path;
    RatFunc value;
};

// All branches of the decorated evaluation tree. After a linear decoration
// whose target is a plain variable the next eliminated variable is that
// target; otherwise the lowest active index is taken. Branch values sum to
// integrate_torus(f) exactly. The vanishing shortcut is never applied here.
std::vector<Branch> enumerate_tree(const Integrand& f, TraceSink* trace = nullptr);

// Splits a branch into chains ("clumps") of variables connected by linear
// decorations: z_{i_0} -> z_{i_1} -> ... -> z_{i_t}, each chain closed by a
// zero decoration, a constant target, or the end of the branch.
std::vector<std::vector<int>> branch_clumps(const Branch& b);

}  // namespace planch
