#include "kstab/stability.hpp"

#include <algorithm>

#include "kstab/errors.hpp"
#include "kstab/threads.hpp"

namespace kstab {

namespace {

ReducedFlag reducedness(const Ideal& central, const GroebnerLimits& limits) {
    if (central.is_zero_ideal()) return ReducedFlag::Yes;
    auto gb = central.groebner_basis(MonomialOrder::grevlex(), limits);
    bool monomial = std::all_of(gb->begin(), gb->end(),
                                [](const Polynomial& g) { return g.term_count() == 1; });
    if (!monomial) return ReducedFlag::Unknown;
    // A monomial ideal is radical iff its minimal generators are squarefree.
    for (const auto& g : *gb)
        for (uint32_t p : g.terms()[0].exp)
            if (p > 1) return ReducedFlag::No;
    return ReducedFlag::Yes;
}

} // namespace

TestConfigResult central_fiber(std::shared_ptr<const Ideal> I, const std::vector<long long>& rho,
                               const StabilityOptions& opts) {
    TestConfigResult tc;
    tc.spec = flat_limit(I, rho, opts.flat);
    tc.extended_setup = extend_with_rho(I->setup(), rho);
    tc.central_extended = std::make_shared<Ideal>(tc.extended_setup, tc.spec.central->generators());
    tc.product_candidate = tc.spec.central->equals(*I, opts.flat.limits);
    tc.reduced = reducedness(*tc.spec.central, opts.flat.limits);
    tc.special_conditions_verified = false;
    return tc;
}

TestConfigResult test_config_futaki(std::shared_ptr<const Ideal> I, const std::vector<long long>& rho,
                                    const ReebVector& xi, const StabilityOptions& opts) {
    auto st = is_reeb(xi, I->setup());
    if (!st.reeb) throw InputError("xi is not a Reeb field");

    TestConfigResult tc = central_fiber(I, rho, opts);

    ReebVector xi_hat;
    xi_hat.c = xi.c;
    xi_hat.c.push_back(Rational(0));
    TorusDirection eta_hat;
    eta_hat.c.assign(tc.extended_setup->torus_rank, Rational(0));
    eta_hat.c.back() = Rational(1, static_cast<long>(I->setup().p));

    tc.futaki = futaki(tc.central_extended, xi_hat, eta_hat, opts.schedule, opts.eval);
    tc.invariance = degeneration_invariance_check(I, rho, xi, opts.schedule, opts.eval, opts.flat);
    return tc;
}

StabilityVerdict semistability_scan(std::shared_ptr<const Ideal> I, const ReebVector& xi,
                                    const std::vector<std::vector<long long>>& rho_list,
                                    double tol, const StabilityOptions& opts) {
    StabilityVerdict verdict;
    verdict.tol = tol;
    if (rho_list.empty()) {
        verdict.vacuous = true;
        return verdict;
    }

    std::vector<std::vector<long long>> sorted = rho_list;
    std::sort(sorted.begin(), sorted.end());
    verdict.entries.resize(sorted.size());

    parallel_for(sorted.size(), [&](size_t i) {
        ScanEntry entry;
        entry.rho = sorted[i];
        try {
            entry.result = test_config_futaki(I, sorted[i], xi, opts);
        } catch (const std::exception& e) {
            entry.error = e.what();
        }
        verdict.entries[i] = std::move(entry);
    });

    for (const auto& entry : verdict.entries) {
        if (!entry.result || !entry.result->futaki) continue;
        const FutakiReport& fut = *entry.result->futaki;
        bool both_negative = fut.via_sum < -tol && fut.via_fd < -tol;
        bool gate = entry.result->invariance && entry.result->invariance->pass;
        if (both_negative && gate) {
            verdict.destabilized = true;
            verdict.destabilizer = entry.rho;
            verdict.destabilizer_futaki = fut.via_sum;
            break;
        }
    }
    return verdict;
}

} // namespace kstab
