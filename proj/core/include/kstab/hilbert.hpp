#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "kstab/groebner.hpp"

namespace kstab {

struct HilbertOptions {
    uint64_t enum_cap = 50000000;
    GroebnerLimits gb;
};

struct DimEntry {
    std::vector<long long> alpha;
    uint64_t dim = 0;
};

/// Per x-monomial data needed for tail bounds: its torus weight and the
/// remaining window budget for the affine part (in window-vector units).
struct XPartMass {
    std::vector<long long> weight;
    double y_budget = 0;
};

/// Exact graded dimensions of (S/I)_{m, alpha} for one x-degree m, over the
/// window <alpha, xi_ref> <= budget. Entries are sorted by alpha; weights
/// absent from the list have dimension zero inside the window.
struct DimRow {
    int m = 0;
    long long budget_scaled = 0;
    std::vector<DimEntry> entries;
    std::vector<XPartMass> xparts;
    std::vector<double> affine_ref_cost; // <wt(y_j), xi_ref> per affine variable
    uint64_t standard_count = 0;
    uint64_t monomial_count = 0;
};

/// Integer-scaled window vector: pairings against xi_ref become exact
/// int64 arithmetic during enumeration.
struct WindowContext {
    std::vector<long long> xi_scaled;
    long long denom = 1;
    std::vector<long long> var_cost; // <wt(v), xi_scaled> per variable

    static WindowContext make(const WeightedSetup& s, const std::vector<Rational>& xi);
};

DimRow build_dim_row(const Ideal& I, const WindowContext& win, int m, long long budget_scaled,
                     const HilbertOptions& opts = {});

/// Sum of e^{-<alpha, xi>/(p m)} dim over the row entries, normalized by
/// (p m)^{-n}.
double dim_row_value(const DimRow& row, const WeightedSetup& s, const std::vector<double>& xi);

/// Rigorous upper bound on the mass the window dropped, from the geometric
/// series of the free ring (which dominates any quotient termwise).
double dim_row_tail(const DimRow& row, const WeightedSetup& s, const std::vector<double>& xi);

/// Closed-form full free-ring mass at x-degree m (no truncation).
double dim_row_free_mass(const DimRow& row, const WeightedSetup& s, const std::vector<double>& xi);

struct GradedDimTable {
    std::vector<Rational> xi;
    Rational lambda;
    int m_max = 0;
    std::vector<DimRow> rows; // rows[m] for m = 0..m_max
    double tail_bound = 0;
};

/// Dimension table for all m <= m_max over the window <alpha, xi> <= lambda m.
/// Requires xi to be a Reeb field (finite truncation).
GradedDimTable graded_dims(const Ideal& I, const ReebVector& xi, int m_max, const Rational& lambda,
                           const HilbertOptions& opts = {});

/// Window multiplier that keeps the free-ring tail below ~1e-8 of the mass.
Rational suggest_lambda(const WeightedSetup& s, const std::vector<Rational>& xi);

/// Dimension of Spec(S/I): pass to the grevlex initial ideal, then the size
/// of the largest variable subset containing no generator's support.
/// Returns -1 for the unit ideal (empty spectrum).
int krull_dim(const Ideal& I, const GroebnerLimits& limits = {});

struct PlaneComponent {
    std::vector<size_t> vanishing; // variable indices generating the minimal prime
    int plane_dim = 0;
    bool top_dimensional = false;
    std::optional<uint64_t> multiplicity; // populated for top-dimensional components
};

struct SupportReport {
    int krull_dim = 0;
    std::vector<PlaneComponent> components;
};

/// Minimal primes of a monomial ideal (coordinate planes via minimal hitting
/// sets of the generator supports), with multiplicities for top-dimensional
/// components computed by the finite localization count.
SupportReport decompose_monomial_support(const Ideal& J, const GroebnerLimits& limits = {});

/// Compares graded dimension tables of S/I and S/I0 entry-by-entry on a
/// shared window for m <= m_check.
FlatnessCertificate check_flatness(const Ideal& I, const Ideal& I0, int m_check,
                                   const HilbertOptions& opts = {});

} // namespace kstab
