#pragma once

// Brute-force kernels over the finite point space F_{p^k}^dim.  Points are
// encoded as indices in [0, q^dim) with q = p^k, coordinate 0 least
// significant.  Each kernel has an OpenMP-parallel entry point and a serial
// reference implementation kept for testing; both produce identical,
// canonically ordered results.

#include <cstdint>
#include <vector>

#include "dynamo/padic.hpp"
#include "dynamo/poly.hpp"

namespace dynamo {

struct PointSpace {
    ContextPtr ctx;
    unsigned dim;
    std::uint64_t size;  // q^dim

    PointSpace(ContextPtr c, unsigned d, std::uint64_t budget);

    std::vector<ResidueElement> decode(std::uint64_t index) const;
    std::uint64_t encode(const std::vector<ResidueElement>& point) const;
};

/// next[i] = encoded image of point i under the map (one component per poly).
std::vector<std::uint64_t> transition_table(const PointSpace& space,
                                            const std::vector<ResiduePoly>& components);
std::vector<std::uint64_t> transition_table_serial(const PointSpace& space,
                                                   const std::vector<ResiduePoly>& components);

struct CycleIdx {
    std::vector<std::uint64_t> points;  // starts at the canonical (tuple-lex smallest) member
};

/// All cycles of length <= max_period in the functional graph, each reported
/// once starting at its lex-smallest point, sorted by (period, points).
std::vector<CycleIdx> collect_cycles(const PointSpace& space,
                                     const std::vector<std::uint64_t>& next, unsigned max_period);
std::vector<CycleIdx> collect_cycles_serial(const PointSpace& space,
                                            const std::vector<std::uint64_t>& next,
                                            unsigned max_period);

/// on_cycle[i] != 0 iff point i lies on a cycle (any period).  Serial
/// functional-graph coloring.
std::vector<std::uint8_t> on_cycle_flags(const std::vector<std::uint64_t>& next);

/// Sorted indices y with next^n applied to y equal to target.
std::vector<std::uint64_t> preimages_under_iterate(const std::vector<std::uint64_t>& next,
                                                   std::uint64_t target, unsigned n);
std::vector<std::uint64_t> preimages_under_iterate_serial(const std::vector<std::uint64_t>& next,
                                                          std::uint64_t target, unsigned n);

/// Sorted indices at which every generator vanishes.
std::vector<std::uint64_t> vanishing_points(const PointSpace& space,
                                            const std::vector<ResiduePoly>& generators);
std::vector<std::uint64_t> vanishing_points_serial(const PointSpace& space,
                                                   const std::vector<ResiduePoly>& generators);

/// Rank of an index under tuple-lex order of decoded points:
/// lex_rank(i) < lex_rank(j) iff decode(i) < decode(j) lexicographically.
std::uint64_t lex_rank(const PointSpace& space, std::uint64_t index);

}  // namespace dynamo
