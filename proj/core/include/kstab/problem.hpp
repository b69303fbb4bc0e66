#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "kstab/groebner.hpp"

namespace kstab {

/// A parsed and validated problem file: the embedded presentation of a
/// polarized setup (variables + weights + ideal + p + n) plus optional
/// defaults. "n": "auto" resolves to krull_dim(S/I) - 1 and is echoed back.
struct Problem {
    std::shared_ptr<const WeightedSetup> setup;
    std::shared_ptr<const Ideal> ideal;
    std::optional<ReebVector> default_xi;
    std::vector<std::vector<long long>> rho_candidates;
    bool n_auto = false;
    long long n_resolved = 0;
    int cone_dim = 0; // krull_dim(S/I)
    std::vector<std::string> warnings;
    std::string content_hash;   // FNV-1a 64 over the canonical echo
    std::string canonical_json; // normalized problem echo
};

Problem load_problem_text(const std::string& json_text);
Problem load_problem_file(const std::string& path);

std::string fnv1a_hex(const std::string& data);

} // namespace kstab
