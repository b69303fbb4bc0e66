#pragma once

// Test-only oracles, kept independent of the library code paths they check:
// dimension counts by exact Gaussian elimination, Krull dimension by subset
// brute force, closed-form Gaussian-model volumes, and seeded generators
// for random homogeneous ideals.

#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include "kstab/grading.hpp"
#include "kstab/groebner.hpp"
#include "kstab/parse.hpp"
#include "kstab/polynomial.hpp"
#include "kstab/rational.hpp"

namespace kstab::testing {

inline VariableTable make_vars(std::vector<std::string> names, size_t n_projective) {
    std::vector<VarKind> kinds;
    for (size_t i = 0; i < names.size(); ++i)
        kinds.push_back(i < n_projective ? VarKind::Projective : VarKind::Affine);
    return VariableTable::make(std::move(names), std::move(kinds));
}

// Gaussian model on C^1: (x0; y1), wt(x0) = -1, wt(y1) = 1, p = 1, n = 1.
inline std::shared_ptr<const WeightedSetup> c1_setup() {
    return WeightedSetup::make(make_vars({"x0", "y1"}, 1), 1, {{-1}, {1}}, 1, 1);
}

// C^2 model: (x0; y1, y2), wt(x0) = (-1,-1), wt(y_i) = e_i, p = 1, n = 2.
inline std::shared_ptr<const WeightedSetup> c2_setup() {
    return WeightedSetup::make(make_vars({"x0", "y1", "y2"}, 1), 2, {{-1, -1}, {1, 0}, {0, 1}}, 1, 2);
}

// C^3 ambient: (x0; y1, y2, y3), wt(x0) = (-1,-1,-1), wt(y_i) = e_i, p = 1.
inline std::shared_ptr<const WeightedSetup> c3_setup(long long n) {
    return WeightedSetup::make(make_vars({"x0", "y1", "y2", "y3"}, 1), 3,
                               {{-1, -1, -1}, {1, 0, 0}, {0, 1, 0}, {0, 0, 1}}, 1, n);
}

// P^2 x C ambient with circle weights (2, 1, 0, 1); hosts the conic x0*x2 - x1^2.
inline std::shared_ptr<const WeightedSetup> p1xc_setup() {
    return WeightedSetup::make(make_vars({"x0", "x1", "x2", "z"}, 3), 1, {{2}, {1}, {0}, {1}}, 1, 2);
}

// Twisted cubic in P^3 with the (3-i, i) bigrading; no affine variables.
inline std::shared_ptr<const WeightedSetup> twisted_cubic_setup() {
    return WeightedSetup::make(make_vars({"x0", "x1", "x2", "x3"}, 4), 2,
                               {{3, 0}, {2, 1}, {1, 2}, {0, 3}}, 1, 1);
}

inline Polynomial P(const std::string& src, const WeightedSetup& s) {
    return parse_polynomial(src, s.vars);
}

inline std::shared_ptr<const Ideal> make_ideal(std::shared_ptr<const WeightedSetup> s,
                                               const std::vector<std::string>& gens) {
    std::vector<Polynomial> ps;
    for (const auto& g : gens) ps.push_back(parse_polynomial(g, s->vars));
    return std::make_shared<Ideal>(std::move(s), std::move(ps));
}

// ---- closed forms for the Gaussian models -------------------------------

inline double gaussian_volume(double a) { return std::exp(a) / a; }        // W for C^1 at xi=a
inline double gaussian_volume_derivative(double a) {
    return std::exp(a) * (a - 1) / (a * a);                                 // dW/da
}

// ---- exact linear-algebra rank oracle -----------------------------------

// All monomials of x-degree m and torus weight alpha. Finite thanks to the
// Reeb witness; enumerated by plain nested recursion over a y-degree bound
// derived from the witness (independent of the library's window streams).
inline std::vector<Exponent> monomials_of_bidegree(const WeightedSetup& s, uint64_t m,
                                                   const std::vector<long long>& alpha) {
    std::vector<Exponent> out;
    std::vector<size_t> proj = s.projective_idx, aff = s.affine_idx;

    // y-degree cap: <alpha - wt(ex), xi> = <wt(ey), xi> >= margin * ydeg.
    Rational margin(1);
    bool first = true;
    for (size_t j : aff) {
        Rational c = dot(s.reeb_witness, s.weights[j]);
        if (first || c < margin) { margin = c; first = false; }
    }

    Exponent e(s.nvars(), 0);
    auto weight_of = [&](const Exponent& exp) { return monomial_weight(exp, s); };

    auto rec_y = [&](auto&& self, size_t ai, uint64_t ydeg_left) -> void {
        if (ai == aff.size()) {
            if (weight_of(e) == alpha) out.push_back(e);
            return;
        }
        for (uint64_t k = 0; k <= ydeg_left; ++k) {
            e[aff[ai]] = static_cast<uint32_t>(k);
            self(self, ai + 1, ydeg_left - k);
        }
        e[aff[ai]] = 0;
    };
    auto rec_x = [&](auto&& self, size_t pi, uint64_t left) -> void {
        if (pi + 1 == proj.size()) {
            e[proj[pi]] = static_cast<uint32_t>(left);
            // remaining budget for the affine part at this x-monomial
            std::vector<long long> wx(s.torus_rank, 0);
            for (size_t v : proj)
                for (int i = 0; i < s.torus_rank; ++i)
                    wx[i] += static_cast<long long>(e[v]) * s.weights[v][i];
            Rational budget(0);
            for (int i = 0; i < s.torus_rank; ++i)
                budget += s.reeb_witness[i] * Rational(static_cast<long>(alpha[i] - wx[i]));
            uint64_t ydeg_cap = 0;
            if (!aff.empty() && budget.sign() >= 0) {
                Rational q = budget / margin;
                ydeg_cap = static_cast<uint64_t>(q.num().get_d() / q.den().get_d()) + 1;
            }
            rec_y(rec_y, 0, aff.empty() ? 0 : ydeg_cap);
            e[proj[pi]] = 0;
            return;
        }
        for (uint64_t k = 0; k <= left; ++k) {
            e[proj[pi]] = static_cast<uint32_t>(k);
            self(self, pi + 1, left - k);
        }
        e[proj[pi]] = 0;
    };
    rec_x(rec_x, 0, m);
    return out;
}

// Exact row reduction over Q.
inline size_t rational_rank(std::vector<std::vector<Rational>> rows) {
    size_t rank = 0;
    size_t cols = rows.empty() ? 0 : rows[0].size();
    for (size_t c = 0; c < cols && rank < rows.size(); ++c) {
        size_t pivot = rank;
        while (pivot < rows.size() && rows[pivot][c].is_zero()) ++pivot;
        if (pivot == rows.size()) continue;
        std::swap(rows[rank], rows[pivot]);
        Rational inv = Rational(1) / rows[rank][c];
        for (size_t k = c; k < cols; ++k) rows[rank][k] *= inv;
        for (size_t r = 0; r < rows.size(); ++r) {
            if (r == rank || rows[r][c].is_zero()) continue;
            Rational f = rows[r][c];
            for (size_t k = c; k < cols; ++k) rows[r][k] -= f * rows[rank][k];
        }
        ++rank;
    }
    return rank;
}

// dim (S/I)_{m, alpha} by rank of the multiplication-spanned subspace.
inline uint64_t quotient_dim_oracle(const Ideal& I, uint64_t m, const std::vector<long long>& alpha) {
    const auto& s = I.setup();
    auto basis = monomials_of_bidegree(s, m, alpha);
    if (basis.empty()) return 0;
    std::vector<std::vector<Rational>> rows;
    for (const auto& g : I.generators()) {
        uint64_t mg = x_degree(g.terms()[0].exp, s.vars);
        auto ag = monomial_weight(g.terms()[0].exp, s);
        if (mg > m) continue;
        std::vector<long long> rest(alpha);
        for (int i = 0; i < s.torus_rank; ++i) rest[i] -= ag[i];
        for (const auto& mu : monomials_of_bidegree(s, m - mg, rest)) {
            Polynomial prod = g.times_term(Rational(1), mu);
            std::vector<Rational> row(basis.size(), Rational(0));
            for (const auto& t : prod.terms()) {
                for (size_t b = 0; b < basis.size(); ++b) {
                    if (basis[b] == t.exp) { row[b] = t.coeff; break; }
                }
            }
            rows.push_back(std::move(row));
        }
    }
    return basis.size() - rational_rank(std::move(rows));
}

// ---- brute-force Krull dimension for monomial data ----------------------

inline int brute_krull_monomial(const std::vector<Exponent>& gens, size_t nvars) {
    int best = -1;
    for (uint64_t mask = 0; mask < (uint64_t{1} << nvars); ++mask) {
        bool ok = true;
        for (const auto& g : gens) {
            bool contained = true;
            for (size_t v = 0; v < nvars; ++v)
                if (g[v] > 0 && !(mask & (uint64_t{1} << v))) { contained = false; break; }
            if (contained) { ok = false; break; }
        }
        if (ok) best = std::max(best, __builtin_popcountll(mask));
    }
    return best;
}

// ---- seeded random data ---------------------------------------------------

inline Rational random_coeff(std::mt19937_64& rng) {
    std::uniform_int_distribution<long> num(-1000000, 1000000);
    std::uniform_int_distribution<long> den(1, 40);
    long n = num(rng);
    if (n == 0) n = 1;
    return Rational(n, den(rng));
}

inline Polynomial random_polynomial(std::mt19937_64& rng, size_t nvars, size_t max_terms,
                                    uint32_t max_exp) {
    std::uniform_int_distribution<size_t> nterms(0, max_terms);
    std::uniform_int_distribution<uint32_t> pw(0, max_exp);
    std::vector<Term> terms;
    size_t n = nterms(rng);
    for (size_t t = 0; t < n; ++t) {
        Exponent e(nvars);
        for (size_t v = 0; v < nvars; ++v) e[v] = pw(rng);
        terms.push_back(Term{random_coeff(rng), std::move(e)});
    }
    return Polynomial::from_terms(nvars, std::move(terms));
}

struct RandomModel {
    std::shared_ptr<const WeightedSetup> setup;
    std::shared_ptr<const Ideal> ideal;
    std::vector<long long> rho;
};

// Random bidegree-homogeneous ideal in <= 4 variables with <= 3 generators
// of degree <= 3, plus a random integer degeneration weight.
inline RandomModel random_homogeneous_model(std::mt19937_64& rng) {
    std::uniform_int_distribution<int> n_aff_d(1, 3), k_d(1, 2), wd(-2, 2), w0(1, 3);
    int n_aff = n_aff_d(rng);
    int k = k_d(rng);
    std::vector<std::string> names{"x0"};
    for (int j = 1; j <= n_aff; ++j) names.push_back("y" + std::to_string(j));
    std::vector<std::vector<long long>> weights;
    for (int v = 0; v <= n_aff; ++v) {
        std::vector<long long> w(k);
        for (int i = 0; i < k; ++i) w[i] = (v == 0) ? wd(rng) : (i == 0 ? w0(rng) : wd(rng));
        weights.push_back(std::move(w));
    }
    auto setup = WeightedSetup::make(make_vars(std::move(names), 1), k, std::move(weights), 1, 1);

    std::uniform_int_distribution<int> ngens_d(1, 3), mdeg(0, 2), ydeg(0, 3), pick(0, 3);
    std::vector<Polynomial> gens;
    int ngens = ngens_d(rng);
    for (int g = 0; g < ngens; ++g) {
        // random base monomial fixes the bidegree
        Exponent base(setup->nvars(), 0);
        base[0] = static_cast<uint32_t>(mdeg(rng));
        int left = ydeg(rng);
        for (int j = 1; j <= n_aff && left > 0; ++j) {
            std::uniform_int_distribution<int> part(0, left);
            int take = part(rng);
            base[j] = static_cast<uint32_t>(take);
            left -= take;
        }
        uint64_t m = base[0];
        auto alpha = monomial_weight(base, *setup);
        auto piece = monomials_of_bidegree(*setup, m, alpha);
        std::vector<Term> terms;
        for (const auto& mono : piece) {
            if (terms.size() >= 4) break;
            if (pick(rng) == 0 || mono == base) terms.push_back(Term{random_coeff(rng), mono});
        }
        Polynomial p = Polynomial::from_terms(setup->nvars(), std::move(terms));
        if (!p.is_zero()) gens.push_back(std::move(p));
    }

    RandomModel model;
    model.ideal = std::make_shared<Ideal>(setup, std::move(gens));
    model.setup = setup;
    std::uniform_int_distribution<long long> rho_d(-3, 3);
    for (size_t v = 0; v < setup->nvars(); ++v) model.rho.push_back(rho_d(rng));
    return model;
}

} // namespace kstab::testing
