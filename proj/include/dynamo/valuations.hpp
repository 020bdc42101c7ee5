#pragma once

// Gauss norms on polynomial representatives of Tate-algebra series and the
// rank-2 refinement into the lexicographic value group R_{>0} x gamma^Z.
// Magnitudes are recorded as p-adic valuations (|f| = p^-v), so smaller
// valuation means larger magnitude.

#include <compare>
#include <cstdint>
#include <optional>

#include "dynamo/poly.hpp"

namespace dynamo {

/// Value of the rank-2 valuation: magnitude valuation r plus the exponent of
/// the infinitesimal gamma.  The zero polynomial maps to the distinguished
/// bottom element, smaller than everything else.
struct GammaValue {
    bool bottom = false;
    std::int64_t r = 0;      // magnitude as a valuation
    std::int64_t gamma = 0;  // exponent of gamma

    static GammaValue zero() { return GammaValue{true, 0, 0}; }
    bool operator==(const GammaValue& rhs) const = default;
};

/// Lexicographic order of the value group: smaller magnitude (= larger r)
/// first, then smaller gamma exponent.
std::strong_ordering gamma_compare(const GammaValue& a, const GammaValue& b);

/// Minimum coefficient valuation; empty for the zero polynomial (+infinity).
std::optional<unsigned> gauss_norm(const Polynomial& f);

/// f divided by p^gauss_norm(f); the result has Gauss-norm valuation 0.
/// Requires f != 0 and gauss_norm(f) <= N-1.
Polynomial normalize_generator(const Polynomial& f);

/// The rank-2 valuation of a univariate polynomial: (gauss_norm, i0) with i0
/// the largest index attaining the norm.  The zero polynomial maps to bottom.
GammaValue rank2_val(const Polynomial& f);

}  // namespace dynamo
