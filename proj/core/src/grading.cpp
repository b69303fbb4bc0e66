#include "kstab/grading.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>

#include "kstab/errors.hpp"

namespace kstab {

namespace {

constexpr long long kMaxWeight = 1000000;

Rational row_value(const LinearInequality& r, const std::vector<Rational>& x, size_t upto) {
    Rational s;
    for (size_t i = 0; i < upto; ++i) s += r.a[i] * x[i];
    return s;
}

} // namespace

std::optional<std::vector<Rational>> solve_inequalities(std::vector<LinearInequality> rows, size_t k) {
    // Fourier-Motzkin elimination, exact over Q. Fine for the handful of
    // variables a torus rank gives.
    if (k == 0) {
        for (const auto& r : rows)
            if (r.c > Rational(0)) return std::nullopt;
        return std::vector<Rational>{};
    }
    std::vector<std::vector<LinearInequality>> levels;
    levels.push_back(rows);
    for (size_t level = k; level-- > 1;) {
        const auto& cur = levels.back();
        std::vector<LinearInequality> next;
        std::vector<const LinearInequality*> lower, upper;
        for (const auto& r : cur) {
            const Rational& a = r.a[level];
            if (a.sign() > 0) lower.push_back(&r);
            else if (a.sign() < 0) upper.push_back(&r);
            else next.push_back(r);
        }
        for (const auto* lo : lower) {
            for (const auto* up : upper) {
                // x_level >= (c_lo - rest_lo)/a_lo and <= (c_up - rest_up)/a_up.
                LinearInequality combined;
                combined.a.assign(level, Rational(0));
                Rational alo = lo->a[level], aup = -(up->a[level]);
                for (size_t i = 0; i < level; ++i)
                    combined.a[i] = lo->a[i] * aup + up->a[i] * alo;
                combined.c = lo->c * aup + up->c * alo;
                combined.a.resize(lo->a.size(), Rational(0));
                next.push_back(std::move(combined));
            }
        }
        levels.push_back(std::move(next));
    }
    // Base level: single variable x_0.
    std::vector<Rational> x(k, Rational(0));
    for (size_t level = 0; level < k; ++level) {
        const auto& cur = levels[k - 1 - level];
        bool has_lo = false, has_up = false;
        Rational lo, up;
        for (const auto& r : cur) {
            const Rational& a = r.a[level];
            Rational rest = r.c - row_value(r, x, level);
            if (a.sign() > 0) {
                Rational bound = rest / a;
                if (!has_lo || bound > lo) { lo = bound; has_lo = true; }
            } else if (a.sign() < 0) {
                Rational bound = rest / a;
                if (!has_up || bound < up) { up = bound; has_up = true; }
            } else if (rest > Rational(0)) {
                return std::nullopt;
            }
        }
        if (has_lo && has_up) {
            if (lo > up) return std::nullopt;
            x[level] = (lo + up) / Rational(2);
        } else if (has_lo) {
            x[level] = lo;
        } else if (has_up) {
            x[level] = up;
        }
    }
    return x;
}

std::shared_ptr<const WeightedSetup> WeightedSetup::make(VariableTable vars,
                                                         int torus_rank,
                                                         std::vector<std::vector<long long>> weights,
                                                         long long p,
                                                         long long n) {
    if (torus_rank < 1) throw InputError("torus rank must be >= 1");
    if (p < 1) throw InputError("p must be a positive integer");
    if (n < 1) throw InputError("n must be a positive integer");
    if (weights.size() != vars.size()) throw InputError("one weight vector per variable required");
    for (const auto& w : weights) {
        if (w.size() != static_cast<size_t>(torus_rank))
            throw InputError("weight vector length does not match torus rank");
        for (long long c : w)
            if (std::llabs(c) > kMaxWeight) throw InputError("weight entry out of range");
    }

    auto s = std::make_shared<WeightedSetup>();
    s->vars = std::move(vars);
    s->torus_rank = torus_rank;
    s->weights = std::move(weights);
    s->p = p;
    s->n = n;
    s->affine_idx = s->vars.affine_indices();
    s->projective_idx = s->vars.projective_indices();

    if (s->affine_idx.empty()) {
        s->reeb_witness.assign(torus_rank, Rational(0));
    } else {
        std::vector<LinearInequality> rows;
        for (size_t j : s->affine_idx) {
            LinearInequality r;
            r.a.reserve(torus_rank);
            for (long long c : s->weights[j]) r.a.push_back(Rational(static_cast<long>(c)));
            r.c = Rational(1);
            rows.push_back(std::move(r));
        }
        auto sol = solve_inequalities(std::move(rows), static_cast<size_t>(torus_rank));
        if (!sol)
            throw InputError("setup admits no Reeb field: the affine weight cone has empty interior");
        s->reeb_witness = std::move(*sol);
    }
    return s;
}

std::shared_ptr<const WeightedSetup> extend_with_rho(const WeightedSetup& s,
                                                     const std::vector<long long>& rho) {
    if (rho.size() != s.nvars()) throw InputError("rho length does not match variable count");
    std::vector<std::vector<long long>> w = s.weights;
    for (size_t v = 0; v < w.size(); ++v) w[v].push_back(rho[v]);
    return WeightedSetup::make(s.vars, s.torus_rank + 1, std::move(w), s.p, s.n);
}

ReebVector ReebVector::from_doubles(const std::vector<double>& v) {
    ReebVector out;
    out.c.reserve(v.size());
    for (double d : v) out.c.push_back(Rational::from_double(d));
    return out;
}

std::vector<double> ReebVector::as_doubles() const {
    std::vector<double> out;
    out.reserve(c.size());
    for (const auto& r : c) out.push_back(r.to_double());
    return out;
}

std::vector<double> TorusDirection::as_doubles() const {
    std::vector<double> out;
    out.reserve(c.size());
    for (const auto& r : c) out.push_back(r.to_double());
    return out;
}

std::vector<long long> monomial_weight(const Exponent& e, const WeightedSetup& s) {
    if (e.size() != s.nvars()) throw InputError("exponent length does not match setup");
    std::vector<long long> alpha(s.torus_rank, 0);
    for (size_t v = 0; v < e.size(); ++v) {
        if (e[v] == 0) continue;
        for (int i = 0; i < s.torus_rank; ++i)
            alpha[i] += static_cast<long long>(e[v]) * s.weights[v][i];
    }
    return alpha;
}

ReebStatus is_reeb(const ReebVector& xi, const WeightedSetup& s) {
    if (xi.c.size() != static_cast<size_t>(s.torus_rank))
        throw InputError("xi has wrong dimension for the torus");
    ReebStatus st;
    st.reeb = true;
    for (size_t j : s.affine_idx) {
        Rational v = dot(xi.c, s.weights[j]);
        if (!st.margin || v < *st.margin) st.margin = v;
        if (v.sign() <= 0) st.reeb = false;
    }
    return st;
}

std::optional<Rational> reeb_interior_step(const ReebVector& xi, const TorusDirection& eta,
                                           const WeightedSetup& s) {
    auto st = is_reeb(xi, s);
    if (!st.reeb) throw InputError("xi is not a Reeb field");
    if (eta.c.size() != static_cast<size_t>(s.torus_rank))
        throw InputError("eta has wrong dimension for the torus");
    std::optional<Rational> tstar;
    for (size_t j : s.affine_idx) {
        Rational num = dot(xi.c, s.weights[j]);
        Rational dir = dot(eta.c, s.weights[j]);
        if (dir.sign() < 0) {
            Rational t = num / (-dir);
            if (!tstar || t < *tstar) tstar = t;
        }
    }
    return tstar;
}

} // namespace kstab
