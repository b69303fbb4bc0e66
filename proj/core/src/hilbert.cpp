#include "kstab/hilbert.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <set>

#include "kstab/errors.hpp"
#include "kstab/threads.hpp"

namespace kstab {

namespace {

constexpr long kMaxWindowDenom = 1000000;
constexpr long kMaxScaledEntry = 1000000000;
constexpr double kTailTheta = 0.25;

double effective_pm(const WeightedSetup& s, int m) {
    return static_cast<double>(s.p) * std::max(m, 1);
}

std::vector<Exponent> leading_exponents(const Ideal& I, const GroebnerLimits& limits) {
    std::vector<Exponent> lms;
    if (I.is_zero_ideal()) return lms;
    auto gb = I.groebner_basis(MonomialOrder::grevlex(), limits);
    lms.reserve(gb->size());
    for (const auto& g : *gb) lms.push_back(g.terms()[0].exp);
    return lms;
}

struct RowBuilder {
    const WeightedSetup& s;
    const WindowContext& win;
    const std::vector<Exponent>& lms;
    const HilbertOptions& opts;
    int m;
    long long budget;

    Exponent e;
    std::vector<long long> alpha;
    std::map<std::vector<long long>, uint64_t> buckets;
    std::vector<XPartMass> xparts;
    uint64_t standard_count = 0;
    uint64_t monomial_count = 0;

    RowBuilder(const Ideal& I, const WindowContext& w, int m_, long long budget_,
               const std::vector<Exponent>& lms_, const HilbertOptions& o)
        : s(I.setup()), win(w), lms(lms_), opts(o), m(m_), budget(budget_),
          e(s.nvars(), 0), alpha(s.torus_rank, 0) {}

    void bump(size_t v, long long delta) {
        e[v] = static_cast<uint32_t>(static_cast<long long>(e[v]) + delta);
        for (int i = 0; i < s.torus_rank; ++i)
            alpha[i] += delta * s.weights[v][i];
    }

    bool standard() const {
        for (const auto& lm : lms)
            if (exp_divides(lm, e)) return false;
        return true;
    }

    void leaf() {
        if (++monomial_count > opts.enum_cap)
            throw ResourceLimitError("enumeration budget exceeded while building a dimension row");
        if (standard()) {
            ++standard_count;
            ++buckets[alpha];
        }
    }

    void recurse_y(size_t ai, long long rem) {
        if (ai == s.affine_idx.size()) { leaf(); return; }
        size_t v = s.affine_idx[ai];
        long long cost = win.var_cost[v];
        long long max_e = rem / cost;
        for (long long k = 0; k <= max_e; ++k) {
            recurse_y(ai + 1, rem - k * cost);
            bump(v, 1);
        }
        bump(v, -(max_e + 1));
    }

    void x_complete() {
        long long sx = 0;
        for (size_t v : s.projective_idx) sx += static_cast<long long>(e[v]) * win.var_cost[v];
        long long y_budget = std::max<long long>(0, budget - sx);
        xparts.push_back(XPartMass{alpha, static_cast<double>(y_budget) / static_cast<double>(win.denom)});
        recurse_y(0, y_budget);
    }

    void recurse_x(size_t pi, long long rem) {
        if (pi + 1 == s.projective_idx.size()) {
            size_t v = s.projective_idx[pi];
            bump(v, rem);
            x_complete();
            bump(v, -rem);
            return;
        }
        size_t v = s.projective_idx[pi];
        for (long long k = 0; k <= rem; ++k) {
            recurse_x(pi + 1, rem - k);
            bump(v, 1);
        }
        bump(v, -(rem + 1));
    }
};

uint64_t support_mask(const Exponent& e) {
    uint64_t mask = 0;
    for (size_t i = 0; i < e.size(); ++i)
        if (e[i] > 0) mask |= (uint64_t{1} << i);
    return mask;
}

void minimal_hitting_sets_rec(const std::vector<uint64_t>& supports, uint64_t chosen,
                              size_t max_size, std::set<uint64_t>& out) {
    uint64_t uncovered = 0;
    bool found = false;
    for (uint64_t s : supports) {
        if ((s & chosen) == 0) { uncovered = s; found = true; break; }
    }
    if (!found) {
        out.insert(chosen);
        return;
    }
    if (static_cast<size_t>(__builtin_popcountll(chosen)) >= max_size) return;
    for (uint64_t rest = uncovered; rest;) {
        uint64_t bit = rest & (~rest + 1);
        rest ^= bit;
        minimal_hitting_sets_rec(supports, chosen | bit, max_size, out);
    }
}

std::vector<uint64_t> minimal_hitting_sets(const std::vector<uint64_t>& supports, size_t nvars) {
    std::set<uint64_t> all;
    minimal_hitting_sets_rec(supports, 0, nvars, all);
    std::vector<uint64_t> minimal;
    for (uint64_t c : all) {
        bool is_min = true;
        for (uint64_t other : all) {
            if (other != c && (other & c) == other) { is_min = false; break; }
        }
        if (is_min) minimal.push_back(c);
    }
    std::sort(minimal.begin(), minimal.end());
    return minimal;
}

/// Standard-monomial count of the restriction of monomial generators to the
/// variables in `mask`, all other variables set to 1. Finite because the
/// mask is a minimal hitting set of the supports.
uint64_t localized_multiplicity(const std::vector<Exponent>& gens, uint64_t mask, size_t nvars) {
    std::vector<Exponent> restricted;
    for (const auto& g : gens) {
        Exponent r(nvars, 0);
        bool nonconstant = false;
        for (size_t v = 0; v < nvars; ++v) {
            if (mask & (uint64_t{1} << v)) { r[v] = g[v]; nonconstant |= g[v] > 0; }
        }
        if (nonconstant) restricted.push_back(std::move(r));
    }
    // Box bound: for each variable in the mask there is a restricted
    // generator that is a pure power of it.
    std::vector<uint32_t> bound(nvars, 0);
    for (size_t v = 0; v < nvars; ++v) {
        if (!(mask & (uint64_t{1} << v))) continue;
        uint32_t best = 0;
        for (const auto& r : restricted) {
            if (r[v] == 0) continue;
            bool pure = true;
            for (size_t u = 0; u < nvars; ++u)
                if (u != v && r[u] > 0) { pure = false; break; }
            if (pure && (best == 0 || r[v] < best)) best = r[v];
        }
        if (best == 0)
            throw InternalError("localized multiplicity: mask is not a minimal hitting set");
        bound[v] = best;
    }
    std::vector<size_t> mask_vars;
    for (size_t v = 0; v < nvars; ++v)
        if (mask & (uint64_t{1} << v)) mask_vars.push_back(v);

    uint64_t count = 0;
    Exponent e(nvars, 0);
    auto rec = [&](auto&& self, size_t i) -> void {
        if (i == mask_vars.size()) {
            for (const auto& r : restricted)
                if (exp_divides(r, e)) return;
            ++count;
            return;
        }
        size_t v = mask_vars[i];
        for (uint32_t k = 0; k < bound[v]; ++k) {
            e[v] = k;
            self(self, i + 1);
        }
        e[v] = 0;
    };
    rec(rec, 0);
    return count;
}

std::vector<Exponent> minimalize_monomials(std::vector<Exponent> gens) {
    std::vector<Exponent> out;
    for (size_t i = 0; i < gens.size(); ++i) {
        bool redundant = false;
        for (size_t j = 0; j < gens.size(); ++j) {
            if (i == j) continue;
            if (exp_divides(gens[j], gens[i]) && (gens[j] != gens[i] || j < i)) {
                redundant = true;
                break;
            }
        }
        if (!redundant) out.push_back(gens[i]);
    }
    return out;
}

} // namespace

WindowContext WindowContext::make(const WeightedSetup& s, const std::vector<Rational>& xi) {
    if (xi.size() != static_cast<size_t>(s.torus_rank))
        throw InputError("window vector has wrong dimension for the torus");
    mpz_class den(1);
    for (const auto& r : xi) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), r.den().get_mpz_t());
    if (den > kMaxWindowDenom)
        throw InputError("xi denominators too large for exact windowing; supply a coarser Reeb vector");
    WindowContext win;
    win.denom = den.get_si();
    win.xi_scaled.reserve(xi.size());
    for (const auto& r : xi) {
        mpz_class z = r.num() * (den / r.den());
        if (!z.fits_slong_p() || std::llabs(z.get_si()) > kMaxScaledEntry)
            throw InputError("xi entries too large for exact windowing");
        win.xi_scaled.push_back(z.get_si());
    }
    win.var_cost.reserve(s.nvars());
    for (size_t v = 0; v < s.nvars(); ++v) {
        long long c = 0;
        for (int i = 0; i < s.torus_rank; ++i) c += s.weights[v][i] * win.xi_scaled[i];
        win.var_cost.push_back(c);
    }
    for (size_t j : s.affine_idx)
        if (win.var_cost[j] <= 0)
            throw InputError("window vector is not a Reeb field");
    return win;
}

DimRow build_dim_row(const Ideal& I, const WindowContext& win, int m, long long budget_scaled,
                     const HilbertOptions& opts) {
    if (m < 0) throw InputError("x-degree must be non-negative");
    auto lms = leading_exponents(I, opts.gb);
    RowBuilder builder(I, win, m, budget_scaled, lms, opts);
    builder.recurse_x(0, m);

    DimRow row;
    row.m = m;
    row.budget_scaled = budget_scaled;
    row.entries.reserve(builder.buckets.size());
    for (auto& [alpha, dim] : builder.buckets) row.entries.push_back(DimEntry{alpha, dim});
    row.xparts = std::move(builder.xparts);
    const auto& s = I.setup();
    row.affine_ref_cost.reserve(s.affine_idx.size());
    for (size_t j : s.affine_idx)
        row.affine_ref_cost.push_back(static_cast<double>(win.var_cost[j]) /
                                      static_cast<double>(win.denom));
    row.standard_count = builder.standard_count;
    row.monomial_count = builder.monomial_count;
    return row;
}

double dim_row_value(const DimRow& row, const WeightedSetup& s, const std::vector<double>& xi) {
    double pm = effective_pm(s, row.m);
    double scale = std::pow(pm, -static_cast<double>(s.n));
    double sum = 0;
    for (const auto& entry : row.entries) {
        double d = 0;
        for (size_t i = 0; i < xi.size(); ++i) d += static_cast<double>(entry.alpha[i]) * xi[i];
        sum += std::exp(-d / pm) * static_cast<double>(entry.dim);
    }
    return scale * sum;
}

double dim_row_tail(const DimRow& row, const WeightedSetup& s, const std::vector<double>& xi) {
    if (s.affine_idx.empty()) return 0.0;
    double pm = effective_pm(s, row.m);
    double scale = std::pow(pm, -static_cast<double>(s.n));
    double t_min = std::numeric_limits<double>::infinity();
    double yprod = 1.0;
    for (size_t k = 0; k < s.affine_idx.size(); ++k) {
        size_t j = s.affine_idx[k];
        double a = 0;
        for (size_t i = 0; i < xi.size(); ++i) a += static_cast<double>(s.weights[j][i]) * xi[i];
        if (a <= 0) return std::numeric_limits<double>::infinity();
        t_min = std::min(t_min, a / row.affine_ref_cost[k]);
        yprod /= 1.0 - std::exp(-kTailTheta * a / pm);
    }
    double sum = 0;
    for (const auto& xp : row.xparts) {
        double d = 0;
        for (size_t i = 0; i < xi.size(); ++i) d += static_cast<double>(xp.weight[i]) * xi[i];
        sum += std::exp(-(d + (1.0 - kTailTheta) * t_min * xp.y_budget) / pm);
    }
    return scale * sum * yprod;
}

double dim_row_free_mass(const DimRow& row, const WeightedSetup& s, const std::vector<double>& xi) {
    double pm = effective_pm(s, row.m);
    double yprod = 1.0;
    for (size_t j : s.affine_idx) {
        double a = 0;
        for (size_t i = 0; i < xi.size(); ++i) a += static_cast<double>(s.weights[j][i]) * xi[i];
        if (a <= 0) return std::numeric_limits<double>::infinity();
        yprod /= 1.0 - std::exp(-a / pm);
    }
    double sum = 0;
    for (const auto& xp : row.xparts) {
        double d = 0;
        for (size_t i = 0; i < xi.size(); ++i) d += static_cast<double>(xp.weight[i]) * xi[i];
        sum += std::exp(-d / pm);
    }
    return std::pow(pm, -static_cast<double>(s.n)) * sum * yprod;
}

Rational suggest_lambda(const WeightedSetup& s, const std::vector<Rational>& xi) {
    Rational xplus(0);
    for (size_t v : s.projective_idx) {
        Rational c = dot(xi, s.weights[v]);
        if (c > xplus) xplus = c;
    }
    return xplus + Rational(30 * static_cast<long>(s.p));
}

GradedDimTable graded_dims(const Ideal& I, const ReebVector& xi, int m_max, const Rational& lambda,
                           const HilbertOptions& opts) {
    auto st = is_reeb(xi, I.setup());
    if (!st.reeb) throw InputError("xi is not a Reeb field");
    if (m_max < 0) throw InputError("m_max must be non-negative");

    WindowContext win = WindowContext::make(I.setup(), xi.c);
    GradedDimTable table;
    table.xi = xi.c;
    table.lambda = lambda;
    table.m_max = m_max;
    table.rows.resize(m_max + 1);

    // Precompute the basis once; rows only read the cache afterwards.
    if (!I.is_zero_ideal()) I.groebner_basis(MonomialOrder::grevlex(), opts.gb);

    Rational denom(static_cast<long>(win.denom));
    parallel_for(static_cast<size_t>(m_max) + 1, [&](size_t m) {
        Rational budget = lambda * Rational(static_cast<long>(m)) * denom;
        // floor to an integer threshold
        mpz_class b = budget.num() / budget.den();
        long long budget_scaled = b.fits_slong_p() ? b.get_si() : kMaxScaledEntry;
        table.rows[m] = build_dim_row(I, win, static_cast<int>(m), budget_scaled, opts);
    });

    auto xid = xi.as_doubles();
    double tail = 0;
    for (const auto& row : table.rows) tail += dim_row_tail(row, I.setup(), xid);
    table.tail_bound = tail;
    return table;
}

int krull_dim(const Ideal& I, const GroebnerLimits& limits) {
    size_t nvars = I.nvars();
    if (nvars > 64) throw InputError("krull_dim supports at most 64 variables");
    if (I.is_zero_ideal()) return static_cast<int>(nvars);
    auto lms = leading_exponents(I, limits);
    std::vector<uint64_t> supports;
    for (const auto& lm : lms) {
        uint64_t s = support_mask(lm);
        if (s == 0) return -1; // unit ideal, empty spectrum
        supports.push_back(s);
    }
    // dim = nvars - (minimum hitting set of the generator supports).
    size_t best = nvars;
    auto rec = [&](auto&& self, uint64_t chosen, size_t count) -> void {
        if (count >= best) return;
        uint64_t uncovered = 0;
        bool found = false;
        for (uint64_t s : supports)
            if ((s & chosen) == 0) { uncovered = s; found = true; break; }
        if (!found) { best = count; return; }
        for (uint64_t rest = uncovered; rest;) {
            uint64_t bit = rest & (~rest + 1);
            rest ^= bit;
            self(self, chosen | bit, count + 1);
        }
    };
    rec(rec, 0, 0);
    return static_cast<int>(nvars - best);
}

SupportReport decompose_monomial_support(const Ideal& J, const GroebnerLimits& limits) {
    size_t nvars = J.nvars();
    if (nvars > 64) throw InputError("decompose_monomial_support supports at most 64 variables");
    for (const auto& g : J.generators())
        if (g.term_count() != 1)
            throw InputError("decompose_monomial_support requires a monomial ideal");

    SupportReport report;
    std::vector<Exponent> gens;
    for (const auto& g : J.generators()) gens.push_back(g.terms()[0].exp);
    gens = minimalize_monomials(std::move(gens));

    for (const auto& g : gens) {
        if (support_mask(g) == 0) { // unit ideal
            report.krull_dim = -1;
            return report;
        }
    }

    std::vector<uint64_t> supports;
    supports.reserve(gens.size());
    for (const auto& g : gens) supports.push_back(support_mask(g));

    // For the zero ideal the empty set is the unique minimal hitting set,
    // giving one component: the whole space with multiplicity 1.
    auto covers = minimal_hitting_sets(supports, nvars);
    int top_dim = -1;
    for (uint64_t c : covers)
        top_dim = std::max(top_dim, static_cast<int>(nvars) - __builtin_popcountll(c));
    report.krull_dim = top_dim;

    for (uint64_t c : covers) {
        PlaneComponent comp;
        for (size_t v = 0; v < nvars; ++v)
            if (c & (uint64_t{1} << v)) comp.vanishing.push_back(v);
        comp.plane_dim = static_cast<int>(nvars) - __builtin_popcountll(c);
        comp.top_dimensional = comp.plane_dim == report.krull_dim;
        if (comp.top_dimensional)
            comp.multiplicity = localized_multiplicity(gens, c, nvars);
        report.components.push_back(std::move(comp));
    }
    std::sort(report.components.begin(), report.components.end(),
              [](const PlaneComponent& a, const PlaneComponent& b) { return a.vanishing < b.vanishing; });
    (void)limits;
    return report;
}

FlatnessCertificate check_flatness(const Ideal& I, const Ideal& I0, int m_check,
                                   const HilbertOptions& opts) {
    const auto& s = I.setup();
    WindowContext win = WindowContext::make(s, s.reeb_witness);

    long long xplus = 0;
    for (size_t v : s.projective_idx) xplus = std::max(xplus, win.var_cost[v]);
    long long wplus = 0;
    for (size_t j : s.affine_idx) wplus = std::max(wplus, win.var_cost[j]);
    uint64_t ydeg_head = 4;
    for (const auto& g : I.generators())
        for (const auto& t : g.terms())
            ydeg_head = std::max(ydeg_head, total_degree(t.exp) - x_degree(t.exp, s.vars) + 4);

    FlatnessCertificate cert;
    cert.m_checked = m_check;
    cert.pass = true;
    for (int m = 0; m <= m_check; ++m) {
        long long budget = std::max<long long>(1, m) * xplus +
                           wplus * static_cast<long long>(ydeg_head);
        if (m == 1) cert.lambda = static_cast<double>(budget) / static_cast<double>(win.denom);
        DimRow a = build_dim_row(I, win, m, budget, opts);
        DimRow b = build_dim_row(I0, win, m, budget, opts);
        cert.entries_compared += a.entries.size();
        if (a.entries.size() != b.entries.size()) { cert.pass = false; break; }
        for (size_t i = 0; i < a.entries.size(); ++i) {
            if (a.entries[i].alpha != b.entries[i].alpha || a.entries[i].dim != b.entries[i].dim) {
                cert.pass = false;
                break;
            }
        }
        if (!cert.pass) break;
    }
    return cert;
}

} // namespace kstab
