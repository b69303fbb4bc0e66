#include "kstab/polynomial.hpp"

#include <algorithm>

#include "kstab/errors.hpp"
#include "kstab/order.hpp"

namespace kstab {

namespace {

void check_same_ring(const Polynomial& a, const Polynomial& b) {
    if (a.nvars() != b.nvars())
        throw InputError("polynomial arithmetic over different variable tables");
}

} // namespace

Polynomial Polynomial::constant(size_t nvars, const Rational& c) {
    return monomial(nvars, c, Exponent(nvars, 0));
}

Polynomial Polynomial::monomial(size_t nvars, const Rational& c, Exponent e) {
    if (e.size() != nvars) throw InputError("exponent length does not match variable count");
    Polynomial p(nvars);
    if (!c.is_zero()) p.terms_.push_back(Term{c, std::move(e)});
    return p;
}

Polynomial Polynomial::from_terms(size_t nvars, std::vector<Term> terms) {
    for (const auto& t : terms)
        if (t.exp.size() != nvars) throw InputError("exponent length does not match variable count");
    std::sort(terms.begin(), terms.end(), [](const Term& a, const Term& b) {
        return grevlex_cmp(a.exp, b.exp) > 0;
    });
    Polynomial p(nvars);
    for (auto& t : terms) {
        if (!p.terms_.empty() && p.terms_.back().exp == t.exp)
            p.terms_.back().coeff += t.coeff;
        else
            p.terms_.push_back(std::move(t));
        if (!p.terms_.empty() && p.terms_.back().coeff.is_zero()) p.terms_.pop_back();
    }
    return p;
}

Polynomial Polynomial::operator-() const {
    Polynomial p(nvars_);
    p.terms_.reserve(terms_.size());
    for (const auto& t : terms_) p.terms_.push_back(Term{-t.coeff, t.exp});
    return p;
}

Polynomial operator+(const Polynomial& a, const Polynomial& b) {
    check_same_ring(a, b);
    Polynomial p(a.nvars_);
    p.terms_.reserve(a.terms_.size() + b.terms_.size());
    size_t i = 0, j = 0;
    while (i < a.terms_.size() || j < b.terms_.size()) {
        int c;
        if (i == a.terms_.size()) c = -1;
        else if (j == b.terms_.size()) c = 1;
        else c = grevlex_cmp(a.terms_[i].exp, b.terms_[j].exp);
        if (c > 0) {
            p.terms_.push_back(a.terms_[i++]);
        } else if (c < 0) {
            p.terms_.push_back(b.terms_[j++]);
        } else {
            Rational s = a.terms_[i].coeff + b.terms_[j].coeff;
            if (!s.is_zero()) p.terms_.push_back(Term{std::move(s), a.terms_[i].exp});
            ++i; ++j;
        }
    }
    return p;
}

Polynomial operator-(const Polynomial& a, const Polynomial& b) {
    return a + (-b);
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    check_same_ring(a, b);
    std::vector<Term> prod;
    prod.reserve(a.terms_.size() * b.terms_.size());
    for (const auto& ta : a.terms_)
        for (const auto& tb : b.terms_)
            prod.push_back(Term{ta.coeff * tb.coeff, exp_add(ta.exp, tb.exp)});
    return Polynomial::from_terms(a.nvars_, std::move(prod));
}

Polynomial Polynomial::times_term(const Rational& c, const Exponent& e) const {
    if (c.is_zero()) return Polynomial(nvars_);
    Polynomial p(nvars_);
    p.terms_.reserve(terms_.size());
    // Multiplying every exponent by the same monomial preserves grevlex order.
    for (const auto& t : terms_) p.terms_.push_back(Term{t.coeff * c, exp_add(t.exp, e)});
    return p;
}

Polynomial Polynomial::times_scalar(const Rational& c) const {
    if (c.is_zero()) return Polynomial(nvars_);
    Polynomial p(nvars_);
    p.terms_.reserve(terms_.size());
    for (const auto& t : terms_) p.terms_.push_back(Term{t.coeff * c, t.exp});
    return p;
}

bool Polynomial::operator==(const Polynomial& o) const {
    if (nvars_ != o.nvars_ || terms_.size() != o.terms_.size()) return false;
    for (size_t i = 0; i < terms_.size(); ++i)
        if (terms_[i].exp != o.terms_[i].exp || terms_[i].coeff != o.terms_[i].coeff) return false;
    return true;
}

std::map<uint64_t, Polynomial> x_degree_components(const Polynomial& f, const VariableTable& vars) {
    if (f.nvars() != vars.size()) throw InputError("polynomial does not match variable table");
    std::map<uint64_t, std::vector<Term>> buckets;
    for (const auto& t : f.terms()) buckets[x_degree(t.exp, vars)].push_back(t);
    std::map<uint64_t, Polynomial> out;
    for (auto& [deg, terms] : buckets) out.emplace(deg, Polynomial::from_terms(f.nvars(), std::move(terms)));
    return out;
}

} // namespace kstab
