#pragma once

// Construction and reduction of generalized W-class states on n qudits.
//
// A state in this family is a superposition of single-excitation terms
//
//     |psi> = sum_{i=1}^{n} sum_{s=1}^{d-1} b_{is} |0...0 s_i 0...0>,
//
// where s_i means level s at site i and the coefficients are normalized to
// sum_{is} |b_{is}|^2 = 1.  The |0...0> component is absent in the pure
// state but reappears when sites are traced out, and the partial-coherence
// mixtures built from |psi> and |0...0> keep the same pair/one-vs-rest
// concurrence-of-assistance structure.  Partitioning the n sites into m
// groups produces an m-party state of the same class, which is why all the
// closed forms downstream are expressed through per-party weights.

#include <cstddef>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "gwm/tensor.hpp"

namespace gwm {

// ---------------------------------------------------------------------------
// Specs
// ---------------------------------------------------------------------------

/// One excitation coefficient b_{is}: site i in 1..n, level s in 1..d-1.
struct GWCoeff {
    std::size_t site = 0;
    std::size_t level = 0;
    cplx b{0.0, 0.0};
};

/// Generalized W-class state description.  Coefficients not listed are zero.
struct GWStateSpec {
    std::size_t d = 2; ///< local dimension, >= 2
    std::size_t n = 2; ///< number of sites, >= 2
    std::vector<GWCoeff> coeffs;
};

/// Partial-coherence superposition mixing a W-class state with |0...0>:
///   rho = q |psi><psi| + (1-q) |vac><vac|
///       + lambda sqrt(q(1-q)) (|psi><vac| + |vac><psi|).
/// lambda = 1 is the coherent superposition, lambda = 0 the incoherent mix.
struct PCSSpec {
    GWStateSpec state;
    double q = 1.0;      ///< weight of the W-class component, in [0, 1]
    double lambda = 0.0; ///< cross-term strength, in [0, 1]
};

/// Grouping of the n sites into ordered parties.  Site indices are 1-based
/// to match the coefficient table.  Sites in no party are traced out.
struct Partition {
    std::vector<std::vector<std::size_t>> parties;
};

/// Per-party excitation weights w_t = sum_{i in P_t} sum_s |b_{is}|^2.
/// Their total is <= 1, with equality iff no weight sits on traced sites.
using PartyWeights = std::vector<double>;

// ---------------------------------------------------------------------------
// Validation
// ---------------------------------------------------------------------------

/// Checks dimensions, index ranges, duplicate entries, and normalization
/// (sum |b|^2 = 1 within 1e-12).  Throws std::invalid_argument with the
/// offending field, or std::domain_error for a normalization defect.
inline void validate_spec(const GWStateSpec& spec) {
    if (spec.d < 2)
        throw std::invalid_argument("gw spec: local dimension d must be >= 2, got " +
                                    std::to_string(spec.d));
    if (spec.n < 2)
        throw std::invalid_argument("gw spec: site count n must be >= 2, got " +
                                    std::to_string(spec.n));
    std::size_t total = 1;
    for (std::size_t i = 0; i < spec.n; ++i) {
        if (total > kMaxDimension / spec.d)
            throw std::length_error("gw spec: d^n exceeds dimension cap of 2^20");
        total *= spec.d;
    }
    std::set<std::pair<std::size_t, std::size_t>> seen;
    double norm2 = 0.0;
    for (const GWCoeff& c : spec.coeffs) {
        if (c.site < 1 || c.site > spec.n)
            throw std::invalid_argument("gw spec: site " + std::to_string(c.site) +
                                        " outside 1.." + std::to_string(spec.n));
        if (c.level < 1 || c.level > spec.d - 1)
            throw std::invalid_argument("gw spec: level " + std::to_string(c.level) +
                                        " outside 1.." + std::to_string(spec.d - 1));
        if (!seen.insert({c.site, c.level}).second)
            throw std::invalid_argument("gw spec: duplicate coefficient for site " +
                                        std::to_string(c.site) + ", level " +
                                        std::to_string(c.level));
        norm2 += std::norm(c.b);
    }
    if (std::abs(norm2 - 1.0) > 1e-12)
        throw std::domain_error("gw spec: sum |b|^2 = " + std::to_string(norm2) +
                                " differs from 1 by more than 1e-12");
}

inline void validate_pcs(const PCSSpec& pcs) {
    validate_spec(pcs.state);
    if (!(pcs.q >= 0.0 && pcs.q <= 1.0))
        throw std::invalid_argument("pcs spec: q must lie in [0, 1], got " +
                                    std::to_string(pcs.q));
    if (!(pcs.lambda >= 0.0 && pcs.lambda <= 1.0))
        throw std::invalid_argument("pcs spec: lambda must lie in [0, 1], got " +
                                    std::to_string(pcs.lambda));
}

/// Checks that parties are non-empty, disjoint, and within 1..n.
inline void validate_partition(const Partition& part, std::size_t n) {
    if (part.parties.empty())
        throw std::invalid_argument("partition: needs at least one party");
    std::set<std::size_t> seen;
    for (std::size_t t = 0; t < part.parties.size(); ++t) {
        if (part.parties[t].empty())
            throw std::invalid_argument("partition: party " + std::to_string(t + 1) +
                                        " is empty");
        for (std::size_t site : part.parties[t]) {
            if (site < 1 || site > n)
                throw std::invalid_argument("partition: site " + std::to_string(site) +
                                            " outside 1.." + std::to_string(n));
            if (!seen.insert(site).second)
                throw std::invalid_argument("partition: site " + std::to_string(site) +
                                            " appears in two parties");
        }
    }
}

/// Sites of `part` not assigned to any party (1-based, ascending).
inline std::vector<std::size_t> traced_sites(const Partition& part, std::size_t n) {
    std::set<std::size_t> assigned;
    for (const auto& p : part.parties)
        assigned.insert(p.begin(), p.end());
    std::vector<std::size_t> out;
    for (std::size_t s = 1; s <= n; ++s)
        if (!assigned.count(s))
            out.push_back(s);
    return out;
}

// ---------------------------------------------------------------------------
// Construction
// ---------------------------------------------------------------------------

/// Basis index of the single-excitation ket with level s at site i (1-based):
/// site 1 is the most significant digit, so the index is s * d^(n-i).
inline std::size_t excitation_index(std::size_t d, std::size_t n,
                                    std::size_t site, std::size_t level) {
    std::size_t idx = level;
    for (std::size_t k = site; k < n; ++k)
        idx *= d;
    return idx;
}

/// Builds the pure state vector from a validated spec.
inline StateVector build_gw_vector(const GWStateSpec& spec) {
    validate_spec(spec);
    StateVector psi;
    psi.dims.assign(spec.n, spec.d);
    psi.amps.assign(psi.total_dim(), cplx(0.0, 0.0));
    for (const GWCoeff& c : spec.coeffs)
        psi.amps[excitation_index(spec.d, spec.n, c.site, c.level)] = c.b;
    return psi;
}

/// Builds the partial-coherence density matrix on the full n-site space.
inline ComplexMatrix build_pcs_density(const PCSSpec& pcs) {
    validate_pcs(pcs);
    const StateVector psi = build_gw_vector(pcs.state);
    const std::size_t dim = psi.amps.size();
    const double q = pcs.q;
    const double cross = pcs.lambda * std::sqrt(q * (1.0 - q));

    ComplexMatrix rho(dim, dim);
    for (std::size_t i = 0; i < dim; ++i) {
        if (psi.amps[i] == cplx(0.0, 0.0))
            continue;
        for (std::size_t j = 0; j < dim; ++j)
            rho(i, j) = q * psi.amps[i] * std::conj(psi.amps[j]);
    }
    rho(0, 0) += 1.0 - q;
    // |psi><vac| + |vac><psi| ; the vacuum is index 0 and carries no
    // amplitude in psi itself.
    for (std::size_t i = 0; i < dim; ++i) {
        if (psi.amps[i] == cplx(0.0, 0.0))
            continue;
        rho(i, 0) += cross * psi.amps[i];
        rho(0, i) += cross * std::conj(psi.amps[i]);
    }
    return rho;
}

// ---------------------------------------------------------------------------
// Weights and reductions
// ---------------------------------------------------------------------------

/// Per-party excitation weights of a partitioned spec.
inline PartyWeights party_weights(const GWStateSpec& spec, const Partition& part) {
    validate_spec(spec);
    validate_partition(part, spec.n);
    PartyWeights w(part.parties.size(), 0.0);
    for (std::size_t t = 0; t < part.parties.size(); ++t)
        for (std::size_t site : part.parties[t])
            for (const GWCoeff& c : spec.coeffs)
                if (c.site == site)
                    w[t] += std::norm(c.b);
    return w;
}

/// Reduced density operator of |psi><psi| on the listed sites (1-based,
/// output subsystem order as listed); all other sites are traced out.
inline ComplexMatrix reduce_density(const StateVector& psi,
                                    const std::vector<std::size_t>& sites) {
    std::vector<std::size_t> keep;
    keep.reserve(sites.size());
    for (std::size_t s : sites) {
        if (s < 1 || s > psi.dims.size())
            throw std::invalid_argument("reduce_density: site " + std::to_string(s) +
                                        " outside 1.." +
                                        std::to_string(psi.dims.size()));
        keep.push_back(s - 1);
    }
    return partial_trace_pure(psi, keep);
}

/// Reduced density operator grouped by partition: party t becomes subsystem
/// t of the output (its sites flattened in listed order), traced sites drop.
inline ComplexMatrix reduce_by_partition(const StateVector& psi,
                                         const Partition& part,
                                         std::vector<std::size_t>* party_dims = nullptr) {
    validate_partition(part, psi.dims.size());
    std::vector<std::size_t> sites;
    if (party_dims)
        party_dims->clear();
    for (const auto& p : part.parties) {
        std::size_t dim = 1;
        for (std::size_t s : p) {
            sites.push_back(s);
            dim *= psi.dims[s - 1];
        }
        if (party_dims)
            party_dims->push_back(dim);
    }
    return reduce_density(psi, sites);
}

} // namespace gwm
