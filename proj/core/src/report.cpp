#include "kstab/report.hpp"

#include <sstream>

#include <json.hpp>

#include "kstab/parse.hpp"
#include "kstab/version.hpp"

namespace kstab {

using ordered_json = nlohmann::ordered_json;

namespace {

ordered_json conventions() {
    ordered_json c;
    c["initial_form"] = "highest-rho-weight component; negate rho for the opposite convention";
    c["futaki_normalization"] = "graded sums with (p*m)^{-n}; no 2*pi or factorial factors";
    c["cstar_direction"] = "test-configuration direction is the unit extension weight scaled by 1/p";
    return c;
}

ordered_json envelope(const char* command, const Problem& problem) {
    ordered_json j;
    j["command"] = command;
    j["tool"] = "kstab";
    j["version"] = kVersion;
    j["problem_hash"] = problem.content_hash;
    j["problem"] = ordered_json::parse(problem.canonical_json);
    j["conventions"] = conventions();
    if (!problem.warnings.empty()) j["warnings"] = problem.warnings;
    return j;
}

ordered_json rationals_json(const std::vector<Rational>& v) {
    ordered_json a = ordered_json::array();
    for (const auto& r : v) a.push_back(r.str());
    return a;
}

ordered_json estimate_json(const VolumeEstimate& est) {
    ordered_json j;
    j["value"] = est.value;
    j["tag"] = est.extrapolated_tag ? "extrapolated" : "raw";
    j["error_estimate"] = est.error_estimate;
    j["tail_bound"] = est.tail_bound;
    ordered_json samples = ordered_json::array();
    for (const auto& s : est.samples) {
        ordered_json smp;
        smp["m"] = s.m;
        smp["w"] = s.value;
        smp["tail"] = s.tail;
        samples.push_back(std::move(smp));
    }
    j["samples"] = std::move(samples);
    j["richardson"] = est.richardson;
    return j;
}

ordered_json futaki_json(const FutakiReport& r) {
    ordered_json j;
    j["via_sum"] = r.via_sum;
    j["via_fd"] = r.via_fd;
    j["agreement_gap"] = r.agreement_gap;
    j["combined_error"] = r.combined_error;
    j["fd_step"] = r.fd_step;
    j["fd_refine_gap"] = r.fd_refine_gap;
    j["sum_estimate"] = estimate_json(r.sum_estimate);
    j["w_at_xi"] = estimate_json(r.w_at_xi);
    return j;
}

ordered_json invariance_json(const InvarianceReport& r) {
    ordered_json j;
    j["pass"] = r.pass;
    j["per_sample_exact"] = r.per_sample_exact;
    j["value_source"] = r.value_source;
    j["value_central"] = r.value_central;
    j["gap"] = r.gap;
    j["per_sample_gap"] = r.per_sample_gap;
    if (!r.detail.empty()) j["detail"] = r.detail;
    return j;
}

std::string finish(ordered_json& j, double wall_ms) {
    j["wall_clock_ms"] = wall_ms;
    return j.dump(2) + "\n";
}

const char* reduced_str(ReducedFlag f) {
    switch (f) {
        case ReducedFlag::Yes: return "yes";
        case ReducedFlag::No: return "no";
        default: return "unknown";
    }
}

ordered_json test_config_json(const TestConfigResult& tc, const VariableTable& vars) {
    ordered_json j;
    j["rho"] = tc.spec.rho;
    ordered_json gens = ordered_json::array();
    for (const auto& g : tc.spec.central->generators()) gens.push_back(format_polynomial(g, vars));
    j["central_fiber_generators"] = std::move(gens);
    j["product_candidate"] = tc.product_candidate;
    j["reduced"] = reduced_str(tc.reduced);
    j["special_conditions_verified"] = tc.special_conditions_verified;
    ordered_json cert;
    cert["m_checked"] = tc.spec.certificate.m_checked;
    cert["entries_compared"] = tc.spec.certificate.entries_compared;
    cert["pass"] = tc.spec.certificate.pass;
    j["flatness_certificate"] = std::move(cert);
    if (tc.futaki) j["futaki"] = futaki_json(*tc.futaki);
    if (tc.invariance) j["invariance"] = invariance_json(*tc.invariance);
    return j;
}

} // namespace

std::string volume_report_json(const Problem& problem, const ReebVector& xi,
                               const std::vector<int>& schedule, const VolumeEstimate& est,
                               double wall_ms) {
    ordered_json j = envelope("volume", problem);
    ordered_json inputs;
    inputs["xi"] = rationals_json(xi.c);
    inputs["schedule"] = schedule;
    j["inputs"] = std::move(inputs);
    j["results"] = estimate_json(est);
    return finish(j, wall_ms);
}

std::string futaki_report_json(const Problem& problem, const ReebVector& xi,
                               const TorusDirection& eta, const std::vector<int>& schedule,
                               const FutakiReport& report, double wall_ms) {
    ordered_json j = envelope("futaki", problem);
    ordered_json inputs;
    inputs["xi"] = rationals_json(xi.c);
    inputs["eta"] = rationals_json(eta.c);
    inputs["schedule"] = schedule;
    j["inputs"] = std::move(inputs);
    j["results"] = futaki_json(report);
    return finish(j, wall_ms);
}

std::string minimize_report_json(const Problem& problem, const ReebVector& xi0, double tol,
                                 const MinimizeResult& result, double wall_ms) {
    ordered_json j = envelope("minimize", problem);
    ordered_json inputs;
    inputs["xi0"] = rationals_json(xi0.c);
    inputs["tol"] = tol;
    j["inputs"] = std::move(inputs);

    ordered_json r;
    r["xi_star"] = result.xi_star;
    r["w_star"] = estimate_json(result.w_star_estimate);
    r["converged"] = result.converged;
    r["stop_reason"] = result.stop_reason;
    r["iterations"] = result.iterations;
    r["gradient_evals"] = result.gradient_evals;
    ordered_json futs = ordered_json::array();
    for (const auto& f : result.futaki_at_star) futs.push_back(futaki_json(f));
    r["futaki_at_star"] = std::move(futs);
    ordered_json trace = ordered_json::array();
    for (const auto& t : result.trace) {
        ordered_json step;
        step["iteration"] = t.iteration;
        step["w"] = t.w;
        step["grad_sup_norm"] = t.grad_sup_norm;
        step["step"] = t.step;
        trace.push_back(std::move(step));
    }
    r["trace"] = std::move(trace);
    j["results"] = std::move(r);
    return finish(j, wall_ms);
}

std::string flat_limit_report_json(const Problem& problem, const DegenerationSpec& spec,
                                   std::optional<uint64_t> seed, std::optional<int> attempts,
                                   double wall_ms) {
    ordered_json j = envelope("flat-limit", problem);
    ordered_json inputs;
    inputs["rho"] = spec.rho;
    if (seed) {
        ordered_json seeds;
        seeds["rho_sampler"] = *seed;
        j["seeds"] = std::move(seeds);
    }
    j["inputs"] = std::move(inputs);

    ordered_json r;
    r["rho"] = spec.rho;
    ordered_json gens = ordered_json::array();
    for (const auto& g : spec.central->generators())
        gens.push_back(format_polynomial(g, problem.setup->vars));
    r["central_fiber_generators"] = std::move(gens);
    r["extended_weights"] = spec.extended_weights;
    ordered_json cert;
    cert["m_checked"] = spec.certificate.m_checked;
    cert["entries_compared"] = spec.certificate.entries_compared;
    cert["pass"] = spec.certificate.pass;
    cert["tag"] = "exact";
    r["flatness_certificate"] = std::move(cert);
    if (attempts) r["attempts"] = *attempts;
    j["results"] = std::move(r);
    return finish(j, wall_ms);
}

std::string hilbert_report_json(const Problem& problem, const ReebVector& xi,
                                const GradedDimTable& table, double wall_ms) {
    ordered_json j = envelope("hilbert", problem);
    ordered_json inputs;
    inputs["xi"] = rationals_json(xi.c);
    inputs["m_max"] = table.m_max;
    inputs["lambda"] = table.lambda.str();
    j["inputs"] = std::move(inputs);

    ordered_json r;
    ordered_json rows = ordered_json::array();
    for (const auto& row : table.rows) {
        for (const auto& entry : row.entries) {
            ordered_json e;
            e["m"] = row.m;
            e["alpha"] = entry.alpha;
            e["dim"] = entry.dim;
            rows.push_back(std::move(e));
        }
    }
    r["table"] = std::move(rows);
    r["tag"] = "exact";
    r["tail_bound"] = table.tail_bound;
    j["results"] = std::move(r);
    return finish(j, wall_ms);
}

std::string check_report_json(const Problem& problem, const ReebVector& xi,
                              const StabilityVerdict& verdict, double wall_ms) {
    ordered_json j = envelope("check", problem);
    ordered_json inputs;
    inputs["xi"] = rationals_json(xi.c);
    inputs["tol"] = verdict.tol;
    j["inputs"] = std::move(inputs);

    ordered_json r;
    r["verdict"] = verdict.destabilized ? "destabilized" : "semistable_on_corpus";
    r["vacuous"] = verdict.vacuous;
    if (verdict.vacuous)
        r["warning"] = "empty rho candidate list: the verdict is vacuous";
    r["note"] = "destabilizer detector only; normality/klt of central fibers is not verified";
    if (verdict.destabilizer) {
        r["destabilizer_rho"] = *verdict.destabilizer;
        r["destabilizer_futaki"] = verdict.destabilizer_futaki;
    }
    ordered_json entries = ordered_json::array();
    for (const auto& e : verdict.entries) {
        if (e.result) {
            entries.push_back(test_config_json(*e.result, problem.setup->vars));
        } else {
            ordered_json err;
            err["rho"] = e.rho;
            err["error"] = e.error;
            entries.push_back(std::move(err));
        }
    }
    r["entries"] = std::move(entries);
    j["results"] = std::move(r);
    return finish(j, wall_ms);
}

std::string volume_summary(const VolumeEstimate& est) {
    std::ostringstream os;
    os << "W = " << est.value << " (" << (est.extrapolated_tag ? "extrapolated" : "raw")
       << ", error estimate " << est.error_estimate << ", tail bound " << est.tail_bound << ")\n";
    for (const auto& s : est.samples)
        os << "  m=" << s.m << "  W_m=" << s.value << "  tail<=" << s.tail << "\n";
    return os.str();
}

std::string futaki_summary(const FutakiReport& r) {
    std::ostringstream os;
    os << "Fut = " << r.via_sum << " (sum formula), " << r.via_fd
       << " (finite difference), gap " << r.agreement_gap << "\n";
    return os.str();
}

std::string minimize_summary(const MinimizeResult& r) {
    std::ostringstream os;
    os << (r.converged ? "converged" : "stopped") << ": " << r.stop_reason << "\n";
    os << "xi* = [";
    for (size_t i = 0; i < r.xi_star.size(); ++i)
        os << (i ? ", " : "") << r.xi_star[i];
    os << "], W* = " << r.w_star << " after " << r.iterations << " iterations, "
       << r.gradient_evals << " gradient evaluations\n";
    return os.str();
}

std::string flat_limit_summary(const Problem& problem, const DegenerationSpec& spec) {
    std::ostringstream os;
    os << "central fiber ideal:";
    if (spec.central->generators().empty()) os << " (0)";
    for (const auto& g : spec.central->generators())
        os << " " << format_polynomial(g, problem.setup->vars) << ";";
    os << "\nflatness certificate: " << (spec.certificate.pass ? "pass" : "FAIL") << " ("
       << spec.certificate.entries_compared << " entries, m <= " << spec.certificate.m_checked
       << ")\n";
    return os.str();
}

std::string hilbert_summary(const GradedDimTable& table) {
    std::ostringstream os;
    uint64_t total = 0;
    for (const auto& row : table.rows)
        for (const auto& e : row.entries) total += e.dim;
    os << "graded dimension table: m <= " << table.m_max << ", "
       << total << " standard monomials in window, tail bound " << table.tail_bound << "\n";
    return os.str();
}

std::string check_summary(const StabilityVerdict& v) {
    std::ostringstream os;
    if (v.vacuous) {
        os << "verdict: semistable_on_corpus (vacuous: empty rho list)\n";
        return os.str();
    }
    if (v.destabilized) {
        os << "verdict: destabilized, Fut = " << v.destabilizer_futaki << " at rho = [";
        for (size_t i = 0; i < v.destabilizer->size(); ++i)
            os << (i ? "," : "") << (*v.destabilizer)[i];
        os << "]\n";
    } else {
        os << "verdict: semistable_on_corpus (" << v.entries.size()
           << " candidates; special conditions unverified)\n";
    }
    return os.str();
}

} // namespace kstab
