#pragma once

// Galois-orbit counting of iterated preimages over finite fields, and the
// depth-bounded coherent-backward-orbit search.  Galois orbits are orbits of
// the q-power Frobenius with q = p^k; preimages are sought over the extensions
// F_{p^(j*k)} for j up to a degree bound.

#include <cstdint>
#include <optional>
#include <vector>

#include "dynamo/dynamics.hpp"

namespace dynamo {

struct incomplete_preimages : std::logic_error {
    using std::logic_error::logic_error;
};

struct PreimageSet {
    ResiduePoint base;                 // the point whose preimages are listed
    unsigned depth = 0;                // n with F^n(y) = base
    ContextPtr field;                  // extension the points live in
    std::vector<ResiduePoint> points;  // sorted canonically, over `field`
    bool complete = false;             // stabilization or degree-count certificate
};

/// Exhaustive solutions of F-bar^n(y) = x over F_{p^(j*k)} for j = 1..degree_bound;
/// reports the points over the smallest tried extension attaining the maximal
/// solution count.
PreimageSet preimage_set(const ResidueMap& fbar, const ResiduePoint& x, unsigned depth,
                         unsigned degree_bound, std::uint64_t budget);

/// Number of orbits of the p^base_degree-power Frobenius acting coordinatewise.
/// Requires a complete preimage set.
unsigned galois_orbit_count(const PreimageSet& s, unsigned base_degree);

struct OrbitRow {
    unsigned n = 0;
    std::uint64_t preimages = 0;
    std::uint64_t orbits = 0;
    unsigned field_degree = 0;  // extension degree the preimages live in
    bool complete = false;
};

struct OrbitReport {
    std::vector<OrbitRow> rows;
    bool bounded = false;  // heuristic flag, not a proof
};

/// Orbit-count table for n = 0..n_max with the boundedness heuristic:
/// bounded iff the counts are constant over the last three entries or
/// non-increasing after their peak.
OrbitReport eventual_stability_probe(const ResidueMap& fbar, const ResiduePoint& x,
                                     unsigned n_max, unsigned degree_bound,
                                     std::uint64_t budget);

struct BackwardOrbit {
    ContextPtr field;                  // working extension F_{p^(k*degree_bound)}
    std::vector<ResiduePoint> points;  // a_0 .. a_D with F(a_{i+1}) = a_i
    std::vector<std::size_t> hits;     // indices i with a_i on the variety
};

/// Depth-bounded search for a coherent backward orbit of x0 maximizing the
/// number of variety hits, ties broken by the lexicographically smallest
/// point sequence.  Branches whose subtree within `lookahead` levels contains
/// variety points are explored first.  Returns nothing when no coherent
/// chain of depth D exists within the working extension.
std::optional<BackwardOrbit> coherent_backward_orbit_search(
    const ResidueMap& fbar, const ResiduePoint& x0, const std::vector<ResiduePoly>& variety,
    unsigned depth, unsigned lookahead, unsigned degree_bound, std::uint64_t budget);

}  // namespace dynamo
