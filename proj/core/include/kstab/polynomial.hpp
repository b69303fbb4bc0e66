#pragma once

#include <map>
#include <vector>

#include "kstab/rational.hpp"
#include "kstab/variables.hpp"

namespace kstab {

struct Term {
    Rational coeff; // nonzero in canonical polynomials
    Exponent exp;
};

/// Sparse multivariate polynomial over Q in canonical form: terms strictly
/// decreasing in graded-reverse-lexicographic order, no zero coefficients,
/// no duplicate exponents. The zero polynomial has no terms.
class Polynomial {
public:
    Polynomial() = default;
    explicit Polynomial(size_t nvars) : nvars_(nvars) {}

    static Polynomial zero(size_t nvars) { return Polynomial(nvars); }
    static Polynomial constant(size_t nvars, const Rational& c);
    static Polynomial monomial(size_t nvars, const Rational& c, Exponent e);
    /// Canonicalizes: sorts, merges duplicate exponents, drops zeros.
    static Polynomial from_terms(size_t nvars, std::vector<Term> terms);

    size_t nvars() const { return nvars_; }
    bool is_zero() const { return terms_.empty(); }
    size_t term_count() const { return terms_.size(); }
    const std::vector<Term>& terms() const { return terms_; }

    Polynomial operator-() const;
    friend Polynomial operator+(const Polynomial& a, const Polynomial& b);
    friend Polynomial operator-(const Polynomial& a, const Polynomial& b);
    friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
    Polynomial& operator+=(const Polynomial& o) { *this = *this + o; return *this; }
    Polynomial& operator-=(const Polynomial& o) { *this = *this - o; return *this; }
    Polynomial& operator*=(const Polynomial& o) { *this = *this * o; return *this; }

    /// Multiply by a single term, exactly.
    Polynomial times_term(const Rational& c, const Exponent& e) const;
    Polynomial times_scalar(const Rational& c) const;

    bool operator==(const Polynomial& o) const;
    bool operator!=(const Polynomial& o) const { return !(*this == o); }

private:
    size_t nvars_ = 0;
    std::vector<Term> terms_;
};

/// Splits f by total degree in the projective variables. The values sum
/// to f; the zero polynomial yields an empty map.
std::map<uint64_t, Polynomial> x_degree_components(const Polynomial& f, const VariableTable& vars);

} // namespace kstab
