#pragma once

#include <optional>
#include <string>
#include <vector>

#include "kstab/hilbert.hpp"
#include "kstab/problem.hpp"
#include "kstab/stability.hpp"
#include "kstab/volume.hpp"

namespace kstab {

/// Machine-readable JSON reports, one per CLI command. Deterministic field
/// order; identical inputs (and seeds) give byte-identical output except
/// for the wall_clock_ms field. Every floating-point result carries an
/// error estimate or the tag "exact".

std::string volume_report_json(const Problem& problem, const ReebVector& xi,
                               const std::vector<int>& schedule, const VolumeEstimate& est,
                               double wall_ms);

std::string futaki_report_json(const Problem& problem, const ReebVector& xi,
                               const TorusDirection& eta, const std::vector<int>& schedule,
                               const FutakiReport& report, double wall_ms);

std::string minimize_report_json(const Problem& problem, const ReebVector& xi0, double tol,
                                 const MinimizeResult& result, double wall_ms);

std::string flat_limit_report_json(const Problem& problem, const DegenerationSpec& spec,
                                   std::optional<uint64_t> seed, std::optional<int> attempts,
                                   double wall_ms);

std::string hilbert_report_json(const Problem& problem, const ReebVector& xi,
                                const GradedDimTable& table, double wall_ms);

std::string check_report_json(const Problem& problem, const ReebVector& xi,
                              const StabilityVerdict& verdict, double wall_ms);

/// One-paragraph human summaries for terminal use.
std::string volume_summary(const VolumeEstimate& est);
std::string futaki_summary(const FutakiReport& report);
std::string minimize_summary(const MinimizeResult& result);
std::string flat_limit_summary(const Problem& problem, const DegenerationSpec& spec);
std::string hilbert_summary(const GradedDimTable& table);
std::string check_summary(const StabilityVerdict& verdict);

} // namespace kstab
