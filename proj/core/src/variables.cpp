#include "kstab/variables.hpp"

#include <algorithm>
#include <cctype>
#include <set>

#include "kstab/errors.hpp"

namespace kstab {

namespace {

bool valid_identifier(const std::string& s) {
    if (s.empty()) return false;
    if (!std::isalpha(static_cast<unsigned char>(s[0]))) return false;
    return std::all_of(s.begin() + 1, s.end(), [](unsigned char c) {
        return std::isalnum(c) || c == '_';
    });
}

} // namespace

VariableTable VariableTable::make(std::vector<std::string> names, std::vector<VarKind> kinds) {
    if (names.empty()) throw InputError("variable table is empty");
    if (names.size() != kinds.size()) throw InputError("variable table: names/kinds length mismatch");
    std::set<std::string> seen;
    for (const auto& n : names) {
        if (!valid_identifier(n)) throw InputError("invalid variable name: '" + n + "'");
        if (!seen.insert(n).second) throw InputError("duplicate variable name: '" + n + "'");
    }
    if (std::none_of(kinds.begin(), kinds.end(), [](VarKind k) { return k == VarKind::Projective; }))
        throw InputError("variable table needs at least one projective variable");
    return VariableTable{std::move(names), std::move(kinds)};
}

std::optional<size_t> VariableTable::index_of(std::string_view name) const {
    for (size_t i = 0; i < names.size(); ++i)
        if (names[i] == name) return i;
    return std::nullopt;
}

std::vector<size_t> VariableTable::projective_indices() const {
    std::vector<size_t> out;
    for (size_t i = 0; i < kinds.size(); ++i)
        if (kinds[i] == VarKind::Projective) out.push_back(i);
    return out;
}

std::vector<size_t> VariableTable::affine_indices() const {
    std::vector<size_t> out;
    for (size_t i = 0; i < kinds.size(); ++i)
        if (kinds[i] == VarKind::Affine) out.push_back(i);
    return out;
}

uint64_t total_degree(const Exponent& e) {
    uint64_t d = 0;
    for (auto p : e) d += p;
    return d;
}

uint64_t x_degree(const Exponent& e, const VariableTable& vars) {
    uint64_t d = 0;
    for (size_t i = 0; i < e.size(); ++i)
        if (vars.projective(i)) d += e[i];
    return d;
}

Exponent exp_add(const Exponent& a, const Exponent& b) {
    Exponent c(a.size());
    for (size_t i = 0; i < a.size(); ++i) c[i] = a[i] + b[i];
    return c;
}

Exponent exp_sub(const Exponent& a, const Exponent& b) {
    Exponent c(a.size());
    for (size_t i = 0; i < a.size(); ++i) c[i] = a[i] - b[i];
    return c;
}

bool exp_divides(const Exponent& a, const Exponent& b) {
    if (a.size() != b.size()) return false;
    for (size_t i = 0; i < a.size(); ++i)
        if (a[i] > b[i]) return false;
    return true;
}

Exponent exp_lcm(const Exponent& a, const Exponent& b) {
    Exponent c(a.size());
    for (size_t i = 0; i < a.size(); ++i) c[i] = std::max(a[i], b[i]);
    return c;
}

} // namespace kstab
