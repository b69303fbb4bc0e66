#pragma once

#include <memory>
#include <optional>
#include <vector>

#include "kstab/rational.hpp"
#include "kstab/variables.hpp"

namespace kstab {

/// Ambient torus data: variable table, torus rank k, one integer weight
/// vector in Z^k per variable, the anticanonical multiple p (O(1) = -pK)
/// and the fiber dimension n (the affine cone has dimension n+1).
struct WeightedSetup {
    VariableTable vars;
    int torus_rank = 1;
    std::vector<std::vector<long long>> weights; // per variable, length k
    long long p = 1;
    long long n = 1;

    // Derived at construction.
    std::vector<size_t> affine_idx;
    std::vector<size_t> projective_idx;
    std::vector<Rational> reeb_witness; // some xi with <wt(y_j), xi> >= 1 for all affine y_j

    /// Validates shapes and bounds and checks that the setup admits a Reeb
    /// field (a strict-feasibility linear program over Q).
    static std::shared_ptr<const WeightedSetup> make(VariableTable vars,
                                                     int torus_rank,
                                                     std::vector<std::vector<long long>> weights,
                                                     long long p,
                                                     long long n);

    size_t nvars() const { return vars.size(); }
};

/// Same ambient space with the torus extended by a diagonal C*-action of
/// weights rho: rank k+1, per-variable weights (w_v, rho_v).
std::shared_ptr<const WeightedSetup> extend_with_rho(const WeightedSetup& s,
                                                     const std::vector<long long>& rho);

struct ReebVector {
    std::vector<Rational> c;

    static ReebVector from_doubles(const std::vector<double>& v);
    std::vector<double> as_doubles() const;
};

struct TorusDirection {
    std::vector<Rational> c;

    std::vector<double> as_doubles() const;
};

/// Torus weight of a monomial: sum of e_v * wt(v).
std::vector<long long> monomial_weight(const Exponent& e, const WeightedSetup& s);

struct ReebStatus {
    bool reeb = false;
    /// min over affine variables of <wt(y_j), xi>; empty when there are no
    /// affine variables (every direction is Reeb, margin +infinity).
    std::optional<Rational> margin;
};

/// True iff <wt(y_j), xi> > 0 for every affine variable. Projective
/// variables impose no constraint.
ReebStatus is_reeb(const ReebVector& xi, const WeightedSetup& s);

/// Largest t* with xi + t*eta in the closed Reeb cone; nullopt means the
/// ray never leaves the cone. Requires xi to be Reeb.
std::optional<Rational> reeb_interior_step(const ReebVector& xi, const TorusDirection& eta,
                                           const WeightedSetup& s);

/// Exact Fourier-Motzkin solver for A xi >= c over Q; returns a feasible
/// point or nullopt.
struct LinearInequality {
    std::vector<Rational> a;
    Rational c;
};
std::optional<std::vector<Rational>> solve_inequalities(std::vector<LinearInequality> rows, size_t k);

} // namespace kstab
