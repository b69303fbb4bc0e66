#include "kstab/volume.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "kstab/errors.hpp"

namespace kstab {

namespace {

constexpr long kSnapDenom = 512;
constexpr long kKeepDenomBound = 4096;

void check_schedule(const std::vector<int>& schedule) {
    if (schedule.empty()) throw InputError("empty sample schedule");
    for (size_t i = 0; i < schedule.size(); ++i) {
        if (schedule[i] < 1) throw InputError("schedule entries must be >= 1");
        if (i > 0 && schedule[i] <= schedule[i - 1])
            throw InputError("schedule must be strictly increasing");
    }
}

double dotd(const std::vector<long long>& a, const std::vector<double>& b) {
    double s = 0;
    for (size_t i = 0; i < a.size() && i < b.size(); ++i) s += static_cast<double>(a[i]) * b[i];
    return s;
}

std::vector<Rational> pick_window_vector(const WeightedSetup& s, const ReebVector& xi_ref) {
    mpz_class den(1);
    for (const auto& r : xi_ref.c) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), r.den().get_mpz_t());
    if (den <= kKeepDenomBound) return xi_ref.c;
    // Snap to a coarse rational; the window is only an enumeration device,
    // so any Reeb vector near xi_ref works and tails stay honest.
    std::vector<Rational> snapped;
    snapped.reserve(xi_ref.c.size());
    for (const auto& r : xi_ref.c)
        snapped.push_back(Rational(static_cast<long>(std::llround(r.to_double() * kSnapDenom)),
                                   static_cast<long>(kSnapDenom)));
    auto st = is_reeb(ReebVector{snapped}, s);
    if (st.reeb) return snapped;
    return s.reeb_witness;
}

VolumeEstimate extrapolate(std::vector<VolumeSample> samples) {
    VolumeEstimate est;
    est.samples = std::move(samples);
    for (const auto& smp : est.samples) est.tail_bound = std::max(est.tail_bound, smp.tail);
    if (est.samples.size() == 1) {
        est.value = est.extrapolated = est.samples[0].value;
        est.error_estimate = est.tail_bound;
        est.extrapolated_tag = false;
        return est;
    }
    for (size_t i = 0; i + 1 < est.samples.size(); ++i) {
        double m1 = est.samples[i].m, v1 = est.samples[i].value;
        double m2 = est.samples[i + 1].m, v2 = est.samples[i + 1].value;
        est.richardson.push_back((m2 * v2 - m1 * v1) / (m2 - m1));
    }
    est.extrapolated = est.richardson.back();
    est.value = est.extrapolated;
    est.extrapolated_tag = true;
    double r_gap = est.richardson.size() >= 2
                       ? std::abs(est.richardson.back() - est.richardson[est.richardson.size() - 2])
                       : 0.0;
    double last_gap = std::abs(est.extrapolated - est.samples.back().value);
    est.error_estimate = std::max(r_gap, last_gap) + est.tail_bound;
    return est;
}

} // namespace

std::vector<int> default_schedule() { return {8, 16, 32, 64}; }

VolumeEvaluator::VolumeEvaluator(std::shared_ptr<const Ideal> ideal, const ReebVector& xi_ref,
                                 EvaluatorOptions opts)
    : ideal_(std::move(ideal)),
      xi_ref_(pick_window_vector(ideal_->setup(), xi_ref)),
      win_(WindowContext::make(ideal_->setup(), xi_ref_)),
      opts_(opts) {}

long long VolumeEvaluator::default_budget(int m) const {
    Rational lambda = suggest_lambda(ideal_->setup(), xi_ref_);
    Rational budget = lambda * Rational(static_cast<long>(std::max(m, 1))) *
                      Rational(static_cast<long>(win_.denom));
    mpz_class b = budget.num() / budget.den();
    return b.fits_slong_p() ? b.get_si() : (1LL << 40);
}

const DimRow& VolumeEvaluator::row_for_probe(int m, const std::vector<double>& xi) {
    auto it = rows_.find(m);
    if (it == rows_.end()) {
        DimRow row = build_dim_row(*ideal_, win_, m, default_budget(m), opts_.hilbert);
        it = rows_.emplace(m, std::move(row)).first;
    }
    if (!opts_.allow_growth) return it->second;
    const auto& s = ideal_->setup();
    for (int round = 0; round < opts_.max_growth_rounds; ++round) {
        double v = dim_row_value(it->second, s, xi);
        double t = dim_row_tail(it->second, s, xi);
        if (std::isinf(t)) throw InputError("volume probe outside the Reeb cone");
        double free_mass = dim_row_free_mass(it->second, s, xi);
        double threshold = opts_.mass_tol * (std::abs(v) + opts_.mass_tol * free_mass);
        if (t <= threshold) break;
        long long grown = it->second.budget_scaled + it->second.budget_scaled / 2 + win_.denom;
        it->second = build_dim_row(*ideal_, win_, m, grown, opts_.hilbert);
    }
    return it->second;
}

VolumeSample VolumeEvaluator::sample(int m, const std::vector<double>& xi) {
    std::lock_guard<std::mutex> lock(mu_);
    const DimRow& row = row_for_probe(m, xi);
    const auto& s = ideal_->setup();
    return VolumeSample{m, dim_row_value(row, s, xi), dim_row_tail(row, s, xi)};
}

double VolumeEvaluator::futaki_sample(int m, const std::vector<double>& xi,
                                      const std::vector<double>& eta) {
    std::lock_guard<std::mutex> lock(mu_);
    const DimRow& row = row_for_probe(m, xi);
    const auto& s = ideal_->setup();
    double pm = static_cast<double>(s.p) * m;
    double scale = std::pow(pm, -static_cast<double>(s.n));
    double sum = 0;
    for (const auto& entry : row.entries) {
        double dx = dotd(entry.alpha, xi);
        double de = dotd(entry.alpha, eta);
        sum += (de / pm) * std::exp(-dx / pm) * static_cast<double>(entry.dim);
    }
    return scale * sum;
}

std::pair<double, std::vector<double>> VolumeEvaluator::value_grad_sample(
    int m, const std::vector<double>& xi) {
    std::lock_guard<std::mutex> lock(mu_);
    const DimRow& row = row_for_probe(m, xi);
    const auto& s = ideal_->setup();
    double pm = static_cast<double>(s.p) * m;
    double scale = std::pow(pm, -static_cast<double>(s.n));
    double sum = 0;
    std::vector<double> grad(xi.size(), 0.0);
    for (const auto& entry : row.entries) {
        double w = std::exp(-dotd(entry.alpha, xi) / pm) * static_cast<double>(entry.dim);
        sum += w;
        for (size_t i = 0; i < grad.size(); ++i)
            grad[i] -= w * static_cast<double>(entry.alpha[i]) / pm;
    }
    for (auto& g : grad) g *= scale;
    return {scale * sum, std::move(grad)};
}

VolumeEstimate VolumeEvaluator::volume(const std::vector<double>& xi,
                                       const std::vector<int>& schedule) {
    check_schedule(schedule);
    std::vector<VolumeSample> samples;
    samples.reserve(schedule.size());
    for (int m : schedule) samples.push_back(sample(m, xi));
    return extrapolate(std::move(samples));
}

VolumeEstimate VolumeEvaluator::futaki_sum(const std::vector<double>& xi,
                                           const std::vector<double>& eta,
                                           const std::vector<int>& schedule) {
    check_schedule(schedule);
    const auto& s = ideal_->setup();
    // Tail for the derivative-weighted sum: |<alpha,eta>| <= Cx*m + kappa*<alpha_y,xi>
    // and u e^{-u} <= (2/e) e^{-u/2} turn the mass tail at xi and xi/2 into a
    // rigorous overestimate.
    double kappa = 0, cx = 0;
    for (size_t j : s.affine_idx) {
        double a = 0, b = 0;
        for (size_t i = 0; i < xi.size(); ++i) {
            a += static_cast<double>(s.weights[j][i]) * xi[i];
            b += static_cast<double>(s.weights[j][i]) * eta[i];
        }
        if (a > 0) kappa = std::max(kappa, std::abs(b) / a);
    }
    double xminus = 0;
    for (size_t v : s.projective_idx) {
        double b = 0, a = 0;
        for (size_t i = 0; i < xi.size(); ++i) {
            b += static_cast<double>(s.weights[v][i]) * eta[i];
            a += static_cast<double>(s.weights[v][i]) * xi[i];
        }
        cx = std::max(cx, std::abs(b));
        xminus = std::max(xminus, -a);
    }
    std::vector<double> half_xi(xi);
    for (auto& c : half_xi) c *= 0.5;

    std::vector<VolumeSample> samples;
    samples.reserve(schedule.size());
    for (int m : schedule) {
        double value = futaki_sample(m, xi, eta);
        double tail;
        {
            std::lock_guard<std::mutex> lock(mu_);
            const DimRow& row = row_for_probe(m, xi);
            double p = static_cast<double>(s.p);
            tail = (cx / p) * dim_row_tail(row, s, xi) +
                   0.736 * kappa * std::exp(xminus / (2 * p)) * dim_row_tail(row, s, half_xi);
        }
        samples.push_back(VolumeSample{m, value, tail});
    }
    return extrapolate(std::move(samples));
}

std::pair<VolumeEstimate, std::vector<double>> VolumeEvaluator::volume_and_gradient(
    const std::vector<double>& xi, const std::vector<int>& schedule) {
    check_schedule(schedule);
    std::vector<VolumeSample> samples;
    std::vector<std::vector<double>> grads;
    for (int m : schedule) {
        double tail = sample(m, xi).tail; // grows the row first if needed
        auto [v, g] = value_grad_sample(m, xi);
        samples.push_back(VolumeSample{m, v, tail});
        grads.push_back(std::move(g));
    }
    VolumeEstimate est = extrapolate(std::move(samples));
    std::vector<double> grad(xi.size(), 0.0);
    if (grads.size() == 1) {
        grad = grads[0];
    } else {
        size_t last = grads.size() - 1;
        double m1 = schedule[last - 1], m2 = schedule[last];
        for (size_t i = 0; i < grad.size(); ++i)
            grad[i] = (m2 * grads[last][i] - m1 * grads[last - 1][i]) / (m2 - m1);
    }
    return {std::move(est), std::move(grad)};
}

long long VolumeEvaluator::row_budget(int m) {
    std::lock_guard<std::mutex> lock(mu_);
    auto it = rows_.find(m);
    if (it == rows_.end()) {
        DimRow row = build_dim_row(*ideal_, win_, m, default_budget(m), opts_.hilbert);
        it = rows_.emplace(m, std::move(row)).first;
    }
    return it->second.budget_scaled;
}

void VolumeEvaluator::force_row_budget(int m, long long budget_scaled) {
    std::lock_guard<std::mutex> lock(mu_);
    auto it = rows_.find(m);
    if (it != rows_.end() && it->second.budget_scaled == budget_scaled) return;
    rows_.insert_or_assign(m, build_dim_row(*ideal_, win_, m, budget_scaled, opts_.hilbert));
}

VolumeEstimate weighted_volume(std::shared_ptr<const Ideal> I, const ReebVector& xi,
                               const std::vector<int>& schedule, const EvaluatorOptions& opts) {
    auto st = is_reeb(xi, I->setup());
    if (!st.reeb) throw InputError("xi is not a Reeb field");
    VolumeEvaluator ev(I, xi, opts);
    return ev.volume(xi.as_doubles(), schedule);
}

namespace {

FutakiReport futaki_with_evaluator(VolumeEvaluator& ev, const ReebVector& xi,
                                   const TorusDirection& eta, const std::vector<int>& schedule) {
    const auto& s = ev.setup();
    auto st = is_reeb(xi, s);
    if (!st.reeb) throw InputError("xi is not a Reeb field");
    if (eta.c.size() != xi.c.size()) throw InputError("eta has wrong dimension for the torus");

    auto xid = xi.as_doubles();
    auto etad = eta.as_doubles();

    FutakiReport report;
    report.sum_estimate = ev.futaki_sum(xid, etad, schedule);
    report.via_sum = report.sum_estimate.value;
    report.w_at_xi = ev.volume(xid, schedule);

    bool eta_zero = std::all_of(eta.c.begin(), eta.c.end(),
                                [](const Rational& r) { return r.is_zero(); });
    if (eta_zero) {
        report.via_fd = 0;
        report.fd_step = 0;
        report.fd_refine_gap = 0;
    } else {
        double eta_affine_scale = 0;
        for (size_t j : s.affine_idx)
            eta_affine_scale = std::max(eta_affine_scale, std::abs(dot(eta.c, s.weights[j]).to_double()));
        double h;
        if (!st.margin.has_value() || eta_affine_scale <= 0) {
            double xmax = 0;
            for (double c : xid) xmax = std::max(xmax, std::abs(c));
            h = 1e-3 * (1 + xmax);
        } else {
            h = 1e-3 * st.margin->to_double() / eta_affine_scale;
        }
        auto probe_ok = [&](double step) {
            std::vector<double> plus(xid), minus(xid);
            for (size_t i = 0; i < xid.size(); ++i) {
                plus[i] += step * etad[i];
                minus[i] -= step * etad[i];
            }
            return is_reeb(ReebVector::from_doubles(plus), s).reeb &&
                   is_reeb(ReebVector::from_doubles(minus), s).reeb;
        };
        int shrink = 0;
        while (!probe_ok(h) && shrink++ < 12) h *= 0.5;
        if (!probe_ok(h))
            throw InputError("xi is too close to the Reeb cone boundary for the finite-difference step");

        auto central = [&](double step) {
            std::vector<double> plus(xid), minus(xid);
            for (size_t i = 0; i < xid.size(); ++i) {
                plus[i] += step * etad[i];
                minus[i] -= step * etad[i];
            }
            double wp = ev.volume(plus, schedule).value;
            double wm = ev.volume(minus, schedule).value;
            return (wp - wm) / (2 * step);
        };
        double d1 = central(h);
        double d2 = central(h / 2);
        report.via_fd = -d2;
        report.fd_step = h / 2;
        report.fd_refine_gap = std::abs(d1 - d2);
    }
    report.agreement_gap = std::abs(report.via_sum - report.via_fd);
    report.combined_error = report.sum_estimate.error_estimate + report.w_at_xi.error_estimate;
    return report;
}

} // namespace

FutakiReport futaki(std::shared_ptr<const Ideal> I, const ReebVector& xi, const TorusDirection& eta,
                    const std::vector<int>& schedule, const EvaluatorOptions& opts) {
    VolumeEvaluator ev(I, xi, opts);
    return futaki_with_evaluator(ev, xi, eta, schedule);
}

InvarianceReport degeneration_invariance_check(std::shared_ptr<const Ideal> I,
                                               const std::vector<long long>& rho,
                                               const ReebVector& xi,
                                               const std::vector<int>& schedule,
                                               const EvaluatorOptions& opts,
                                               const FlatLimitOptions& flat) {
    auto st = is_reeb(xi, I->setup());
    if (!st.reeb) throw InputError("xi is not a Reeb field");
    check_schedule(schedule);

    DegenerationSpec spec = flat_limit(I, rho, flat);

    VolumeEvaluator source(I, xi, opts);
    auto xid = xi.as_doubles();
    VolumeEstimate est_source = source.volume(xid, schedule);

    EvaluatorOptions frozen = opts;
    frozen.allow_growth = false;
    VolumeEvaluator central(spec.central, xi, frozen);
    for (int m : schedule) central.force_row_budget(m, source.row_budget(m));
    VolumeEstimate est_central = central.volume(xid, schedule);

    InvarianceReport report;
    report.samples_source = est_source.samples;
    report.samples_central = est_central.samples;
    report.value_source = est_source.value;
    report.value_central = est_central.value;
    report.gap = std::abs(est_source.value - est_central.value);
    report.per_sample_exact = true;
    for (size_t i = 0; i < schedule.size(); ++i) {
        double g = est_source.samples[i].value - est_central.samples[i].value;
        report.per_sample_gap.push_back(g);
        if (g != 0.0) {
            report.per_sample_exact = false;
            std::ostringstream os;
            os << "per-sample mismatch at m=" << schedule[i]
               << " (source budget " << source.row_budget(schedule[i])
               << ", central budget " << central.row_budget(schedule[i])
               << "): truncation asymmetry";
            report.detail = os.str();
        }
    }
    report.pass = report.gap <= est_source.error_estimate + est_central.error_estimate;
    return report;
}

MinimizeResult minimize_volume(std::shared_ptr<const Ideal> I, const ReebVector& xi0,
                               const MinimizeOptions& opts) {
    const auto& setup = I->setup();
    auto st = is_reeb(xi0, setup);
    if (!st.reeb) throw InputError("xi0 is not a Reeb field");
    check_schedule(opts.schedule);
    check_schedule(opts.final_schedule);

    VolumeEvaluator ev(I, xi0, opts.eval);
    std::vector<double> x = xi0.as_doubles();

    MinimizeResult result;
    double t_prev = 0;
    for (int iter = 0; iter <= opts.max_iterations; ++iter) {
        auto [est, grad] = ev.volume_and_gradient(x, opts.schedule);
        ++result.gradient_evals;
        double w = est.value;
        double gsup = 0, gnorm2 = 0;
        for (double g : grad) {
            gsup = std::max(gsup, std::abs(g));
            gnorm2 += g * g;
        }
        result.trace.push_back(MinimizeTraceStep{iter, w, gsup, 0.0});

        if (gsup <= opts.tol) {
            result.converged = true;
            result.stop_reason = "gradient below tolerance";
            break;
        }
        if (result.gradient_evals >= opts.max_gradient_evals) {
            result.stop_reason = "gradient evaluation budget exhausted";
            break;
        }
        if (iter == opts.max_iterations) {
            result.stop_reason = "iteration cap reached";
            break;
        }

        std::vector<double> dir(grad.size());
        for (size_t i = 0; i < grad.size(); ++i) dir[i] = -grad[i];

        auto step_bound = reeb_interior_step(ReebVector::from_doubles(x),
                                             TorusDirection{ReebVector::from_doubles(dir).c}, setup);
        double tcap = std::numeric_limits<double>::infinity();
        if (step_bound) tcap = opts.boundary_fraction * step_bound->to_double();
        if (tcap < 1e-14) {
            // Identify the binding half-space.
            size_t worst = setup.affine_idx.empty() ? 0 : setup.affine_idx[0];
            double worst_margin = std::numeric_limits<double>::infinity();
            auto xr = ReebVector::from_doubles(x);
            for (size_t j : setup.affine_idx) {
                double mj = dot(xr.c, setup.weights[j]).to_double();
                if (mj < worst_margin) { worst_margin = mj; worst = j; }
            }
            result.stop_reason = "descent blocked by the Reeb cone boundary (half-space of variable '" +
                                 setup.vars.names[worst] + "')";
            break;
        }

        double t = (t_prev > 0) ? std::min(tcap, 2 * t_prev)
                                : std::min(tcap, 1.0 / (1.0 + std::sqrt(gnorm2)));
        bool accepted = false;
        for (int bt = 0; bt < opts.max_backtracks; ++bt) {
            std::vector<double> probe(x);
            for (size_t i = 0; i < x.size(); ++i) probe[i] += t * dir[i];
            double wp = ev.volume(probe, opts.schedule).value;
            if (wp <= w - opts.armijo * t * gnorm2) {
                x = std::move(probe);
                t_prev = t;
                ++result.iterations;
                result.trace.back().step = t;
                accepted = true;
                break;
            }
            t *= 0.5;
        }
        if (!accepted) {
            result.stop_reason = "line search failed to make progress";
            break;
        }
    }

    result.xi_star = x;
    result.w_star_estimate = ev.volume(x, opts.final_schedule);
    result.w_star = result.w_star_estimate.value;
    ReebVector xr = ReebVector::from_doubles(x);
    for (int i = 0; i < setup.torus_rank; ++i) {
        TorusDirection eta;
        eta.c.assign(setup.torus_rank, Rational(0));
        eta.c[i] = Rational(1);
        result.futaki_at_star.push_back(futaki_with_evaluator(ev, xr, eta, opts.final_schedule));
    }
    return result;
}

} // namespace kstab
