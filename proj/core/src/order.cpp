#include "kstab/order.hpp"

#include <numeric>

#include "kstab/errors.hpp"

namespace kstab {

int grevlex_cmp(const Exponent& a, const Exponent& b) {
    uint64_t da = total_degree(a), db = total_degree(b);
    if (da != db) return da < db ? -1 : 1;
    // a > b iff the last nonzero entry of a - b is negative.
    for (size_t i = a.size(); i-- > 0;) {
        if (a[i] != b[i]) return a[i] > b[i] ? -1 : 1;
    }
    return 0;
}

MonomialOrder MonomialOrder::weighted(std::vector<long long> rho) {
    MonomialOrder ord;
    ord.rho_ = std::move(rho);
    if (ord.rho_.empty()) throw InputError("empty weight vector for monomial order");
    return ord;
}

MonomialOrder MonomialOrder::weighted(const std::vector<Rational>& rho) {
    mpz_class lcm_den(1);
    for (const auto& r : rho) mpz_lcm(lcm_den.get_mpz_t(), lcm_den.get_mpz_t(), r.den().get_mpz_t());
    std::vector<long long> scaled;
    scaled.reserve(rho.size());
    for (const auto& r : rho) {
        mpz_class z = r.num() * (lcm_den / r.den());
        if (!z.fits_slong_p()) throw InputError("weight vector entries too large after clearing denominators");
        scaled.push_back(z.get_si());
    }
    return weighted(std::move(scaled));
}

long long rho_weight(const std::vector<long long>& rho, const Exponent& e) {
    long long w = 0;
    for (size_t i = 0; i < e.size(); ++i) w += rho[i] * static_cast<long long>(e[i]);
    return w;
}

int MonomialOrder::cmp(const Exponent& a, const Exponent& b) const {
    if (!rho_.empty()) {
        if (a.size() != rho_.size() || b.size() != rho_.size())
            throw InputError("weight vector length does not match variable count");
        long long wa = rho_weight(rho_, a), wb = rho_weight(rho_, b);
        if (wa != wb) return wa < wb ? -1 : 1;
    }
    return grevlex_cmp(a, b);
}

size_t MonomialOrder::leading_index(const Polynomial& f) const {
    if (f.is_zero()) throw InputError("leading term of the zero polynomial");
    if (rho_.empty()) return 0; // canonical storage is grevlex-descending
    size_t best = 0;
    long long best_w = rho_weight(rho_, f.terms()[0].exp);
    for (size_t i = 1; i < f.terms().size(); ++i) {
        long long w = rho_weight(rho_, f.terms()[i].exp);
        // Ties keep the earliest term, which is the grevlex-largest.
        if (w > best_w) { best = i; best_w = w; }
    }
    return best;
}

Polynomial initial_form(const Polynomial& f, const std::vector<long long>& rho) {
    if (f.is_zero()) return f;
    if (rho.size() != f.terms()[0].exp.size())
        throw InputError("weight vector length does not match variable count");
    long long top = rho_weight(rho, f.terms()[0].exp);
    for (const auto& t : f.terms()) top = std::max(top, rho_weight(rho, t.exp));
    std::vector<Term> keep;
    for (const auto& t : f.terms())
        if (rho_weight(rho, t.exp) == top) keep.push_back(t);
    return Polynomial::from_terms(f.nvars(), std::move(keep));
}

} // namespace kstab
