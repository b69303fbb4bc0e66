#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <span>
#include <vector>

#include "kstab/grading.hpp"
#include "kstab/order.hpp"
#include "kstab/polynomial.hpp"

namespace kstab {

/// Declared resource caps; hitting one raises ResourceLimitError.
struct GroebnerLimits {
    size_t max_pairs = 200000;
    size_t max_basis = 2000;
    size_t max_division_steps = 20000000;
};

/// Remainder of f on division by G: f - r lies in <G> and no term of r is
/// divisible by a leading monomial of G. Deterministic given the order and
/// the ordering of G.
Polynomial normal_form(const Polynomial& f, std::span<const Polynomial> G,
                       const MonomialOrder& ord, const GroebnerLimits& limits = {});

Polynomial s_polynomial(const Polynomial& f, const Polynomial& g, const MonomialOrder& ord);

/// Ideal over a weighted setup. Generators are checked on construction to
/// be homogeneous in x-degree and in every torus weight; reduced Groebner
/// bases are cached per order (populated once, read-only thereafter).
class Ideal {
public:
    Ideal(std::shared_ptr<const WeightedSetup> setup, std::vector<Polynomial> gens);
    Ideal(const Ideal& o);
    Ideal(Ideal&& o) noexcept;
    Ideal& operator=(const Ideal&) = delete;
    Ideal& operator=(Ideal&&) = delete;

    const WeightedSetup& setup() const { return *setup_; }
    std::shared_ptr<const WeightedSetup> setup_ptr() const { return setup_; }
    const std::vector<Polynomial>& generators() const { return gens_; }
    size_t nvars() const { return setup_->nvars(); }
    bool is_zero_ideal() const { return gens_.empty(); }

    /// Reduced Groebner basis (monic, self-reduced, sorted by leading
    /// monomial). Every S-polynomial of the result is verified to reduce
    /// to zero before the basis is accepted.
    std::shared_ptr<const std::vector<Polynomial>> groebner_basis(
        const MonomialOrder& ord, const GroebnerLimits& limits = {}) const;

    /// Membership via normal form against the grevlex basis.
    bool contains(const Polynomial& f, const GroebnerLimits& limits = {}) const;

    bool equals(const Ideal& other, const GroebnerLimits& limits = {}) const;

    /// True when every generator of the reduced grevlex basis is a single
    /// term.
    bool is_monomial(const GroebnerLimits& limits = {}) const;

    /// Injects a precomputed basis (e.g. from a disk cache). No-op if the
    /// slot is already populated.
    void prime_basis_cache(const MonomialOrder& ord, std::vector<Polynomial> basis) const;

private:
    std::shared_ptr<const WeightedSetup> setup_;
    std::vector<Polynomial> gens_;
    mutable std::mutex mu_;
    mutable std::map<std::vector<long long>, std::shared_ptr<const std::vector<Polynomial>>> cache_;
};

/// Reduced Groebner basis of a raw generator list (no homogeneity check;
/// termination is only guaranteed for bidegree-homogeneous input).
std::vector<Polynomial> buchberger(std::vector<Polynomial> gens, const MonomialOrder& ord,
                                   const GroebnerLimits& limits = {});

/// I_0 = (ini_rho f | f in I): reduced basis under (rho, grevlex), then the
/// full top-rho-weight form of each element.
Ideal initial_ideal(const Ideal& I, const std::vector<long long>& rho,
                    const GroebnerLimits& limits = {});

struct FlatnessCertificate {
    int m_checked = 0;
    double lambda = 0;
    uint64_t entries_compared = 0;
    bool pass = false;
};

/// One-parameter degeneration: rho, the central-fiber ideal, the extended
/// (k+1)-torus weights, and a dimension-table flatness certificate.
struct DegenerationSpec {
    std::vector<long long> rho;
    std::shared_ptr<const Ideal> source;
    std::shared_ptr<const Ideal> central; // over the original setup
    std::vector<std::vector<long long>> extended_weights; // (alpha_v, rho_v) per variable
    FlatnessCertificate certificate;
};

struct FlatLimitOptions {
    int m_check = 5;
    GroebnerLimits limits;
};

/// Central fiber as the initial ideal, with the graded dimensions of S/I
/// and S/I_0 compared entry-by-entry on a finite window. A certificate
/// failure is a bug (the equality is a theorem) and throws InternalError.
DegenerationSpec flat_limit(std::shared_ptr<const Ideal> I, const std::vector<long long>& rho,
                            const FlatLimitOptions& opts = {});

struct MonomialDegeneration {
    std::vector<long long> rho;
    std::shared_ptr<const Ideal> central;
    uint64_t seed = 0;
    int attempts = 0;
};

struct MonomialDegenerationOptions {
    int max_retries = 5;
    long long weight_bound = 1 << 16;
    GroebnerLimits limits;
};

/// Samples integer rho from [1, B]^nvars with a deterministic PRNG until
/// ini_rho(I) is a monomial ideal. Reports tie witnesses on failure.
MonomialDegeneration degenerate_to_monomial(std::shared_ptr<const Ideal> I, uint64_t seed,
                                            const MonomialDegenerationOptions& opts = {});

} // namespace kstab
