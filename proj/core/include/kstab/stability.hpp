#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "kstab/volume.hpp"

namespace kstab {

enum class ReducedFlag { Yes, No, Unknown };

/// One-parameter test configuration realized by a diagonal integer weight
/// vector rho on the ambient space: the central fiber, the (k+1)-torus
/// grading, the product certificate ini_rho(I) = I, and (optionally) the
/// Futaki invariant along the extension direction. Normality/klt of the
/// central fiber is never verified; special_conditions_verified stays false.
struct TestConfigResult {
    DegenerationSpec spec;
    std::shared_ptr<const WeightedSetup> extended_setup;
    std::shared_ptr<const Ideal> central_extended;
    bool product_candidate = false;
    ReducedFlag reduced = ReducedFlag::Unknown;
    bool special_conditions_verified = false;
    std::optional<FutakiReport> futaki;
    std::optional<InvarianceReport> invariance;
};

struct StabilityOptions {
    std::vector<int> schedule{8, 16, 32, 64};
    FlatLimitOptions flat;
    EvaluatorOptions eval;
};

/// Central fiber of the rho-degeneration with the extended grading and the
/// product-candidate check (mutual ideal membership), without Futaki data.
TestConfigResult central_fiber(std::shared_ptr<const Ideal> I, const std::vector<long long>& rho,
                               const StabilityOptions& opts = {});

/// Futaki invariant of the test configuration: the extension direction is
/// (0,...,0,1/p) on the (k+1)-torus of the central fiber, evaluated at
/// hat-xi = (xi, 0). Includes the degeneration invariance check of W as a
/// built-in sanity gate.
TestConfigResult test_config_futaki(std::shared_ptr<const Ideal> I, const std::vector<long long>& rho,
                                    const ReebVector& xi, const StabilityOptions& opts = {});

struct ScanEntry {
    std::vector<long long> rho;
    std::optional<TestConfigResult> result;
    std::string error; // nonempty when this rho failed; failures are isolated
};

struct StabilityVerdict {
    bool destabilized = false;
    bool vacuous = false;
    std::optional<std::vector<long long>> destabilizer;
    double destabilizer_futaki = 0;
    double tol = 0;
    std::vector<ScanEntry> entries; // sorted by rho lexicographically
};

/// Destabilizer detector over a finite candidate list: destabilized only
/// when both Futaki routes are below -tol and the invariance gate passed.
/// Not a stability prover; "special" fiber conditions are not verified.
StabilityVerdict semistability_scan(std::shared_ptr<const Ideal> I, const ReebVector& xi,
                                    const std::vector<std::vector<long long>>& rho_list,
                                    double tol, const StabilityOptions& opts = {});

} // namespace kstab
