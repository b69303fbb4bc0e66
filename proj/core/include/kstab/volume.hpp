#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <vector>

#include "kstab/hilbert.hpp"

namespace kstab {

struct VolumeSample {
    int m = 0;
    double value = 0;
    double tail = 0;
};

/// Truncated-sum samples W_m, their Richardson extrapolation under the
/// model W_m = W + c/m + O(1/m^2), and an error estimate that always
/// dominates |extrapolated - last sample|.
struct VolumeEstimate {
    double value = 0;
    std::vector<VolumeSample> samples;
    std::vector<double> richardson;
    double extrapolated = 0;
    double error_estimate = 0;
    double tail_bound = 0;
    bool extrapolated_tag = false; // false when only one sample was available
};

struct EvaluatorOptions {
    double mass_tol = 1e-8;
    int max_growth_rounds = 30;
    bool allow_growth = true;
    HilbertOptions hilbert;
};

/// Shared dimension-table holder for repeated volume probes at varying xi.
/// Rows are keyed by (ideal, m) and independent of the probe: the
/// exponential merely reweights cached integer data. Windows are anchored
/// at a fixed reference Reeb vector and widen on demand when a probe's
/// certified tail is too large. Methods are thread-safe.
class VolumeEvaluator {
public:
    VolumeEvaluator(std::shared_ptr<const Ideal> ideal, const ReebVector& xi_ref,
                    EvaluatorOptions opts = {});

    const WeightedSetup& setup() const { return ideal_->setup(); }
    const Ideal& ideal() const { return *ideal_; }
    const std::vector<Rational>& window_xi() const { return xi_ref_; }

    VolumeSample sample(int m, const std::vector<double>& xi);
    double futaki_sample(int m, const std::vector<double>& xi, const std::vector<double>& eta);
    std::pair<double, std::vector<double>> value_grad_sample(int m, const std::vector<double>& xi);

    VolumeEstimate volume(const std::vector<double>& xi, const std::vector<int>& schedule);
    VolumeEstimate futaki_sum(const std::vector<double>& xi, const std::vector<double>& eta,
                              const std::vector<int>& schedule);
    /// Value estimate plus the gradient of W at xi, each coordinate
    /// extrapolated over the schedule.
    std::pair<VolumeEstimate, std::vector<double>> volume_and_gradient(
        const std::vector<double>& xi, const std::vector<int>& schedule);

    long long row_budget(int m);
    void force_row_budget(int m, long long budget_scaled);

private:
    std::shared_ptr<const Ideal> ideal_;
    std::vector<Rational> xi_ref_;
    WindowContext win_;
    EvaluatorOptions opts_;
    std::mutex mu_;
    std::map<int, DimRow> rows_;

    const DimRow& row_for_probe(int m, const std::vector<double>& xi);
    long long default_budget(int m) const;
};

std::vector<int> default_schedule();

/// W(xi) per the truncated graded sums with the (pm)^{-n} normalization.
/// Requires xi Reeb.
VolumeEstimate weighted_volume(std::shared_ptr<const Ideal> I, const ReebVector& xi,
                               const std::vector<int>& schedule = default_schedule(),
                               const EvaluatorOptions& opts = {});

struct FutakiReport {
    double via_sum = 0;
    double via_fd = 0;
    double agreement_gap = 0;
    VolumeEstimate sum_estimate;
    VolumeEstimate w_at_xi;
    double fd_step = 0;
    double fd_refine_gap = 0;
    double combined_error = 0;
};

/// Futaki invariant along eta: the graded sum formula and an independent
/// central finite difference of W, with their agreement gap.
FutakiReport futaki(std::shared_ptr<const Ideal> I, const ReebVector& xi, const TorusDirection& eta,
                    const std::vector<int>& schedule = default_schedule(),
                    const EvaluatorOptions& opts = {});

struct InvarianceReport {
    std::vector<VolumeSample> samples_source;
    std::vector<VolumeSample> samples_central;
    std::vector<double> per_sample_gap;
    double value_source = 0;
    double value_central = 0;
    double gap = 0;
    bool per_sample_exact = false;
    bool pass = false;
    std::string detail;
};

/// W(S/I) against W(S/I_0) for the flat limit along rho, evaluated on
/// budget-matched windows so the per-sample agreement is exact.
InvarianceReport degeneration_invariance_check(std::shared_ptr<const Ideal> I,
                                               const std::vector<long long>& rho,
                                               const ReebVector& xi,
                                               const std::vector<int>& schedule = default_schedule(),
                                               const EvaluatorOptions& opts = {},
                                               const FlatLimitOptions& flat = {});

struct MinimizeOptions {
    double tol = 1e-3; // sup-norm of the gradient
    int max_iterations = 200;
    int max_gradient_evals = 200;
    std::vector<int> schedule{8, 16, 32};
    std::vector<int> final_schedule{8, 16, 32, 64};
    double armijo = 1e-4;
    double boundary_fraction = 0.9;
    int max_backtracks = 60;
    EvaluatorOptions eval;
};

struct MinimizeTraceStep {
    int iteration = 0;
    double w = 0;
    double grad_sup_norm = 0;
    double step = 0;
};

struct MinimizeResult {
    std::vector<double> xi_star;
    double w_star = 0;
    VolumeEstimate w_star_estimate;
    std::vector<FutakiReport> futaki_at_star;
    int iterations = 0;
    int gradient_evals = 0;
    bool converged = false;
    std::string stop_reason;
    std::vector<MinimizeTraceStep> trace;
};

/// Projected gradient descent with Armijo backtracking on W over the Reeb
/// cone; steps are clipped to a fraction of the exact ray-cone intersection.
MinimizeResult minimize_volume(std::shared_ptr<const Ideal> I, const ReebVector& xi0,
                               const MinimizeOptions& opts = {});

} // namespace kstab
