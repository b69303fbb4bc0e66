#include "kstab/groebner.hpp"

#include <algorithm>
#include <random>
#include <sstream>

#include "kstab/errors.hpp"
#include "kstab/hilbert.hpp"
#include "kstab/parse.hpp"

namespace kstab {

namespace {

Polynomial monic(const Polynomial& f, const MonomialOrder& ord) {
    if (f.is_zero()) return f;
    const Rational& lc = ord.leading_term(f).coeff;
    return f.times_scalar(Rational(1) / lc);
}

struct PairKey {
    uint64_t lcm_degree;
    Exponent lcm;
    size_t i, j;

    bool operator<(const PairKey& o) const {
        if (lcm_degree != o.lcm_degree) return lcm_degree < o.lcm_degree;
        if (int c = grevlex_cmp(lcm, o.lcm); c != 0) return c < 0;
        if (i != o.i) return i < o.i;
        return j < o.j;
    }
};

} // namespace

Polynomial normal_form(const Polynomial& f, std::span<const Polynomial> G,
                       const MonomialOrder& ord, const GroebnerLimits& limits) {
    if (G.empty()) throw InputError("normal_form requires a nonempty divisor list");
    for (const auto& g : G)
        if (g.nvars() != f.nvars())
            throw InputError("normal_form over different variable tables");

    std::vector<const Term*> lead;
    lead.reserve(G.size());
    for (const auto& g : G) {
        if (g.is_zero()) throw InputError("normal_form divisor is zero");
        lead.push_back(&ord.leading_term(g));
    }

    std::vector<Term> remainder;
    Polynomial h = f;
    size_t steps = 0;
    while (!h.is_zero()) {
        if (++steps > limits.max_division_steps)
            throw ResourceLimitError("division step cap exceeded");
        const Term& lt = ord.leading_term(h);
        bool reduced = false;
        for (size_t gi = 0; gi < G.size(); ++gi) {
            if (exp_divides(lead[gi]->exp, lt.exp)) {
                Rational c = lt.coeff / lead[gi]->coeff;
                h -= G[gi].times_term(c, exp_sub(lt.exp, lead[gi]->exp));
                reduced = true;
                break;
            }
        }
        if (!reduced) {
            remainder.push_back(lt);
            h -= Polynomial::monomial(h.nvars(), lt.coeff, lt.exp);
        }
    }
    return Polynomial::from_terms(f.nvars(), std::move(remainder));
}

Polynomial s_polynomial(const Polynomial& f, const Polynomial& g, const MonomialOrder& ord) {
    const Term& lf = ord.leading_term(f);
    const Term& lg = ord.leading_term(g);
    Exponent l = exp_lcm(lf.exp, lg.exp);
    Polynomial a = f.times_term(Rational(1) / lf.coeff, exp_sub(l, lf.exp));
    Polynomial b = g.times_term(Rational(1) / lg.coeff, exp_sub(l, lg.exp));
    return a - b;
}

std::vector<Polynomial> buchberger(std::vector<Polynomial> gens, const MonomialOrder& ord,
                                   const GroebnerLimits& limits) {
    std::vector<Polynomial> G;
    for (auto& g : gens)
        if (!g.is_zero()) G.push_back(monic(g, ord));
    if (G.empty()) return G;

    std::map<PairKey, std::pair<size_t, size_t>> pairs;
    auto push_pair = [&](size_t i, size_t j) {
        Exponent l = exp_lcm(ord.leading_monomial(G[i]), ord.leading_monomial(G[j]));
        pairs.emplace(PairKey{total_degree(l), std::move(l), i, j}, std::make_pair(i, j));
    };
    for (size_t i = 0; i < G.size(); ++i)
        for (size_t j = i + 1; j < G.size(); ++j) push_pair(i, j);

    size_t processed = 0;
    while (!pairs.empty()) {
        auto it = pairs.begin();
        auto [i, j] = it->second;
        Exponent l = it->first.lcm;
        pairs.erase(it);
        if (++processed > limits.max_pairs)
            throw ResourceLimitError("S-pair cap exceeded in Buchberger");

        // Product criterion: coprime leading monomials reduce to zero.
        if (l == exp_add(ord.leading_monomial(G[i]), ord.leading_monomial(G[j]))) continue;

        Polynomial r = normal_form(s_polynomial(G[i], G[j], ord), G, ord, limits);
        if (r.is_zero()) continue;
        if (G.size() >= limits.max_basis)
            throw ResourceLimitError("basis size cap exceeded in Buchberger");
        G.push_back(monic(r, ord));
        for (size_t t = 0; t + 1 < G.size(); ++t) push_pair(t, G.size() - 1);
    }

    // Minimalize: drop elements whose leading monomial is generated by the
    // others' leading monomials.
    std::vector<bool> removed(G.size(), false);
    for (size_t i = 0; i < G.size(); ++i) {
        const Exponent& li = ord.leading_monomial(G[i]);
        for (size_t j = 0; j < G.size(); ++j) {
            if (i == j || removed[j]) continue;
            const Exponent& lj = ord.leading_monomial(G[j]);
            if (exp_divides(lj, li) && (lj != li || j < i)) { removed[i] = true; break; }
        }
    }
    std::vector<Polynomial> minimal;
    for (size_t i = 0; i < G.size(); ++i)
        if (!removed[i]) minimal.push_back(G[i]);

    // Tail-reduce. Leading monomials are pairwise indivisible, so one pass
    // against the current basis suffices.
    for (size_t i = 0; i < minimal.size(); ++i) {
        std::vector<Polynomial> others;
        for (size_t j = 0; j < minimal.size(); ++j)
            if (j != i) others.push_back(minimal[j]);
        if (others.empty()) continue;
        const Term lt = ord.leading_term(minimal[i]);
        Polynomial tail = minimal[i] - Polynomial::monomial(minimal[i].nvars(), lt.coeff, lt.exp);
        tail = normal_form(tail, others, ord, limits);
        minimal[i] = tail + Polynomial::monomial(minimal[i].nvars(), lt.coeff, lt.exp);
    }

    std::sort(minimal.begin(), minimal.end(), [&](const Polynomial& a, const Polynomial& b) {
        return ord.cmp(ord.leading_monomial(a), ord.leading_monomial(b)) < 0;
    });

    // Post-hoc soundness: every S-polynomial of the reduced basis must
    // normal-form to zero.
    for (size_t i = 0; i < minimal.size(); ++i) {
        for (size_t j = i + 1; j < minimal.size(); ++j) {
            Polynomial r = normal_form(s_polynomial(minimal[i], minimal[j], ord), minimal, ord, limits);
            if (!r.is_zero())
                throw InternalError("Buchberger produced an unsound basis (S-polynomial does not reduce to zero)");
        }
    }
    return minimal;
}

Ideal::Ideal(std::shared_ptr<const WeightedSetup> setup, std::vector<Polynomial> gens)
    : setup_(std::move(setup)) {
    if (!setup_) throw InputError("ideal requires a setup");
    for (auto& g : gens) {
        if (g.is_zero()) continue;
        if (g.nvars() != setup_->nvars())
            throw InputError("ideal generator over a different variable table");
        uint64_t m = x_degree(g.terms()[0].exp, setup_->vars);
        auto alpha = monomial_weight(g.terms()[0].exp, *setup_);
        for (const auto& t : g.terms()) {
            if (x_degree(t.exp, setup_->vars) != m)
                throw InputError("ideal generator is not homogeneous in x-degree");
            if (monomial_weight(t.exp, *setup_) != alpha)
                throw InputError("ideal generator is not homogeneous in the torus weight");
        }
        gens_.push_back(std::move(g));
    }
}

Ideal::Ideal(const Ideal& o) : setup_(o.setup_), gens_(o.gens_) {
    std::lock_guard<std::mutex> lock(o.mu_);
    cache_ = o.cache_;
}

Ideal::Ideal(Ideal&& o) noexcept
    : setup_(std::move(o.setup_)), gens_(std::move(o.gens_)), cache_(std::move(o.cache_)) {}

std::shared_ptr<const std::vector<Polynomial>> Ideal::groebner_basis(
    const MonomialOrder& ord, const GroebnerLimits& limits) const {
    std::lock_guard<std::mutex> lock(mu_);
    auto it = cache_.find(ord.key());
    if (it != cache_.end()) return it->second;
    auto basis = std::make_shared<const std::vector<Polynomial>>(buchberger(gens_, ord, limits));
    cache_.emplace(ord.key(), basis);
    return basis;
}

void Ideal::prime_basis_cache(const MonomialOrder& ord, std::vector<Polynomial> basis) const {
    std::lock_guard<std::mutex> lock(mu_);
    cache_.emplace(ord.key(), std::make_shared<const std::vector<Polynomial>>(std::move(basis)));
}

bool Ideal::contains(const Polynomial& f, const GroebnerLimits& limits) const {
    if (f.is_zero()) return true;
    if (gens_.empty()) return false;
    auto gb = groebner_basis(MonomialOrder::grevlex(), limits);
    return normal_form(f, *gb, MonomialOrder::grevlex(), limits).is_zero();
}

bool Ideal::equals(const Ideal& other, const GroebnerLimits& limits) const {
    for (const auto& g : other.generators())
        if (!contains(g, limits)) return false;
    for (const auto& g : generators())
        if (!other.contains(g, limits)) return false;
    return true;
}

bool Ideal::is_monomial(const GroebnerLimits& limits) const {
    if (gens_.empty()) return true;
    auto gb = groebner_basis(MonomialOrder::grevlex(), limits);
    return std::all_of(gb->begin(), gb->end(),
                       [](const Polynomial& g) { return g.term_count() == 1; });
}

Ideal initial_ideal(const Ideal& I, const std::vector<long long>& rho,
                    const GroebnerLimits& limits) {
    if (rho.size() != I.nvars()) throw InputError("rho length does not match variable count");
    if (I.is_zero_ideal()) return Ideal(I.setup_ptr(), {});
    auto gb = I.groebner_basis(MonomialOrder::weighted(rho), limits);
    std::vector<Polynomial> inis;
    inis.reserve(gb->size());
    for (const auto& g : *gb) inis.push_back(initial_form(g, rho));
    return Ideal(I.setup_ptr(), std::move(inis));
}

DegenerationSpec flat_limit(std::shared_ptr<const Ideal> I, const std::vector<long long>& rho,
                            const FlatLimitOptions& opts) {
    DegenerationSpec spec;
    spec.rho = rho;
    spec.source = I;
    spec.central = std::make_shared<Ideal>(initial_ideal(*I, rho, opts.limits));
    const auto& s = I->setup();
    for (size_t v = 0; v < s.nvars(); ++v) {
        auto w = s.weights[v];
        w.push_back(rho[v]);
        spec.extended_weights.push_back(std::move(w));
    }
    spec.certificate = check_flatness(*I, *spec.central, opts.m_check);
    if (!spec.certificate.pass)
        throw InternalError("flatness certificate failed: graded dimensions of S/I and S/ini_rho(I) differ");
    return spec;
}

MonomialDegeneration degenerate_to_monomial(std::shared_ptr<const Ideal> I, uint64_t seed,
                                            const MonomialDegenerationOptions& opts) {
    std::mt19937_64 rng(seed);
    auto draw = [&]() {
        return static_cast<long long>(rng() % static_cast<uint64_t>(opts.weight_bound)) + 1;
    };
    std::vector<std::string> witnesses;
    for (int attempt = 1; attempt <= opts.max_retries; ++attempt) {
        std::vector<long long> rho;
        rho.reserve(I->nvars());
        for (size_t v = 0; v < I->nvars(); ++v) rho.push_back(draw());
        bool monomial = true;
        witnesses.clear();
        if (!I->is_zero_ideal()) {
            auto gb = I->groebner_basis(MonomialOrder::weighted(rho), opts.limits);
            for (const auto& g : *gb) {
                Polynomial ini = initial_form(g, rho);
                if (ini.term_count() > 1) {
                    monomial = false;
                    witnesses.push_back(format_polynomial(ini, I->setup().vars));
                }
            }
        }
        if (monomial) {
            MonomialDegeneration out;
            out.rho = rho;
            out.central = std::make_shared<Ideal>(initial_ideal(*I, rho, opts.limits));
            out.seed = seed;
            out.attempts = attempt;
            return out;
        }
    }
    std::ostringstream os;
    os << "degenerate_to_monomial: retry cap exhausted after " << opts.max_retries
       << " attempts; tie witnesses:";
    for (const auto& w : witnesses) os << " [" << w << "]";
    throw ResourceLimitError(os.str());
}

} // namespace kstab
