#pragma once

#include <optional>
#include <vector>

#include "kstab/polynomial.hpp"
#include "kstab/rational.hpp"
#include "kstab/variables.hpp"

namespace kstab {

/// Graded reverse lexicographic comparison over the declared variable
/// order. Returns <0, 0, >0 as a is smaller, equal, larger than b.
int grevlex_cmp(const Exponent& a, const Exponent& b);

/// Total order on monomials: an optional primary weight vector (larger
/// weight means larger monomial, so leading terms are initial forms for
/// the weight), tie-broken by grevlex. The plain grevlex order is global;
/// weighted orders need not be, which is fine on bidegree-homogeneous
/// input where every graded piece is finite-dimensional.
class MonomialOrder {
public:
    static MonomialOrder grevlex() { return MonomialOrder{}; }
    static MonomialOrder weighted(std::vector<long long> rho);
    /// Clears denominators; scaling does not change the order.
    static MonomialOrder weighted(const std::vector<Rational>& rho);

    bool has_weight() const { return !rho_.empty(); }
    const std::vector<long long>& weight() const { return rho_; }

    int cmp(const Exponent& a, const Exponent& b) const;
    bool less(const Exponent& a, const Exponent& b) const { return cmp(a, b) < 0; }

    /// Index of the leading term of a canonical (grevlex-sorted) polynomial.
    size_t leading_index(const Polynomial& f) const;
    const Term& leading_term(const Polynomial& f) const { return f.terms()[leading_index(f)]; }
    const Exponent& leading_monomial(const Polynomial& f) const { return leading_term(f).exp; }

    /// Cache key; the empty vector denotes plain grevlex.
    const std::vector<long long>& key() const { return rho_; }

private:
    std::vector<long long> rho_;
};

long long rho_weight(const std::vector<long long>& rho, const Exponent& e);

/// Component of f of maximal rho-weight (the full top-weight form, which
/// may have several terms).
Polynomial initial_form(const Polynomial& f, const std::vector<long long>& rho);

} // namespace kstab
