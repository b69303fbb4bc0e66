#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace kstab {

enum class VarKind { Projective, Affine };

/// Declared variable table of the ambient ring: homogeneous coordinates of
/// the projective factor plus affine coordinates, in a fixed order.
struct VariableTable {
    std::vector<std::string> names;
    std::vector<VarKind> kinds;

    /// Validates: nonempty unique identifiers (letter then letters, digits,
    /// underscores), at least one projective variable.
    static VariableTable make(std::vector<std::string> names, std::vector<VarKind> kinds);

    size_t size() const { return names.size(); }
    bool projective(size_t i) const { return kinds[i] == VarKind::Projective; }
    bool affine(size_t i) const { return kinds[i] == VarKind::Affine; }
    std::optional<size_t> index_of(std::string_view name) const;

    std::vector<size_t> projective_indices() const;
    std::vector<size_t> affine_indices() const;

    bool operator==(const VariableTable&) const = default;
};

/// One exponent per declared variable.
using Exponent = std::vector<uint32_t>;

uint64_t total_degree(const Exponent& e);
/// Total degree in the projective variables only.
uint64_t x_degree(const Exponent& e, const VariableTable& vars);

Exponent exp_add(const Exponent& a, const Exponent& b);
/// Componentwise difference; requires exp_divides(b, a).
Exponent exp_sub(const Exponent& a, const Exponent& b);
/// True when a divides b, i.e. a <= b componentwise.
bool exp_divides(const Exponent& a, const Exponent& b);
Exponent exp_lcm(const Exponent& a, const Exponent& b);

} // namespace kstab
