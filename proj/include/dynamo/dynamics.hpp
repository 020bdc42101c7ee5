#pragma once

// Polynomial endomorphisms of affine N-space over Z_q, recognition of lifts
// of p-th powers, periodic-point enumeration over the residue field, lifting
// of residue cycles by contraction, point-level tilting, and the gap/density
// scan procedures.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "dynamo/enumerate.hpp"
#include "dynamo/padic.hpp"
#include "dynamo/poly.hpp"

namespace dynamo {

struct lift_failure : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct invariance_failure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

using PadicPoint = std::vector<PAdicElement>;
using ResiduePoint = std::vector<ResidueElement>;

/// N-dimensional polynomial endomorphism with integral coefficients.
class PolyMap {
public:
    PolyMap(ContextPtr ctx, std::vector<Polynomial> components);

    const ContextPtr& context() const { return ctx_; }
    unsigned dim() const { return dim_; }
    const std::vector<Polynomial>& components() const { return comps_; }

    PadicPoint eval(const PadicPoint& x) const;
    PadicPoint iterate(PadicPoint x, std::uint64_t times) const;

    /// Reinterprets the map in another context with the same prime and
    /// precision.  Requires degree-1 coefficients (or an identical degree).
    PolyMap with_context(const ContextPtr& target) const;

private:
    ContextPtr ctx_;
    unsigned dim_;
    std::vector<Polynomial> comps_;
};

/// Reduction of a PolyMap modulo p.
class ResidueMap {
public:
    ResidueMap(ContextPtr ctx, std::vector<ResiduePoly> components);

    const ContextPtr& context() const { return ctx_; }
    unsigned dim() const { return dim_; }
    const std::vector<ResiduePoly>& components() const { return comps_; }

    ResiduePoint eval(const ResiduePoint& x) const;
    ResiduePoint iterate(ResiduePoint x, std::uint64_t times) const;

private:
    ContextPtr ctx_;
    unsigned dim_;
    std::vector<ResiduePoly> comps_;
};

ResidueMap reduce_map(const PolyMap& f);

/// A cycle of the reduced map: points[i] maps to points[(i+1) mod n].
struct ResidueCycle {
    std::vector<ResiduePoint> points;
    unsigned period() const { return static_cast<unsigned>(points.size()); }
};

/// A characteristic-0 periodic point together with its reduction cycle.
struct PeriodicPoint {
    PadicPoint coords;
    unsigned period = 0;
    ResidueCycle residue_cycle;  // reductions of coords, F(coords), ...
};

/// Gauss-norm-1 defining polynomials of a subvariety.
class VarietySpec {
public:
    VarietySpec(ContextPtr ctx, std::vector<Polynomial> generators);

    const ContextPtr& context() const { return ctx_; }
    unsigned dim() const { return dim_; }
    const std::vector<Polynomial>& generators() const { return gens_; }

    VarietySpec with_context(const ContextPtr& target) const;

private:
    ContextPtr ctx_;
    unsigned dim_;
    std::vector<Polynomial> gens_;
};

// ---- recognition ---------------------------------------------------------

struct LiftRecognition {
    bool is_lift = false;
    std::optional<ResidueMap> root;     // G-bar with (G-bar)^p = reduced map
    std::string failure;                // names the offending component/monomial
};

/// A map is a lift of p-th power iff every monomial exponent of its reduction
/// is divisible by p; on success the p-th root of the reduction is returned.
LiftRecognition recognize_lift_of_pth_power(const PolyMap& f);

struct RestrictedComponentWitness {
    // G_i = sum_j c_j X_i^(q_j) with unit c_j and strictly increasing
    // p-power exponents q_j, plus the remainder f_i with F_i = G_i^p + p f_i.
    std::vector<PAdicElement> unit_coeffs;
    std::vector<std::uint64_t> root_exponents;
    Polynomial remainder;
};

struct RestrictednessCheck {
    bool restricted = false;
    std::string reason;  // set when not restricted
    std::vector<RestrictedComponentWitness> witness;
};

/// Syntactic sufficient condition for restrictedness: each component
/// decomposes as (sum_j c_j X_i^(q_j))^p + p*f_i with unit c_j, strictly
/// increasing p-power exponents and deg f_i < deg G_i^p.
RestrictednessCheck is_restricted_syntactic(const PolyMap& f);

// ---- periodic points -------------------------------------------------------

/// Every cycle of length <= max_period of the reduced map, enumerated over
/// the full point space of its context, canonically ordered.
std::vector<ResidueCycle> periodic_points_residue(const ResidueMap& fbar, unsigned max_period,
                                                  std::uint64_t budget);
/// Serial reference implementation of the same enumeration.
std::vector<ResidueCycle> periodic_points_residue_serial(const ResidueMap& fbar,
                                                         unsigned max_period,
                                                         std::uint64_t budget);

/// The contraction iteration: applies F^period exactly `precision` times
/// starting from x0.  Exposed for the uniqueness property tests.
PadicPoint contract_cycle_lift(const PolyMap& f, PadicPoint x0, unsigned period);

/// Lifts a residue cycle to the characteristic-0 periodic point over its
/// starting residue class.  Verifies F^n(x) = x at precision and
/// reduce(x) = cycle.points[0]; throws lift_failure otherwise.
PeriodicPoint lift_periodic(const PolyMap& f, const ResidueCycle& cycle,
                            bool override_restricted = false);

/// (v_in, v_out) for a same-residue-disc pair: v_in = min_i val(x_i - y_i),
/// v_out = min_i val(F(x)_i - F(y)_i).
std::pair<unsigned, unsigned> contraction_witness(const PolyMap& f, const PadicPoint& x,
                                                  const PadicPoint& y);

/// The reduction sequence of a periodic point as the residue cycle through
/// red(x); read backwards it is the compatible sequence attached by tilting.
ResidueCycle tilt_periodic(const PeriodicPoint& x);

/// min over generators of val(H_j(x)); N means "on V at working precision".
unsigned gauss_distance(const PadicPoint& x, const VarietySpec& v);

// ---- scans -----------------------------------------------------------------

struct GapDegreeRow {
    unsigned degree = 0;
    std::uint64_t points = 0;       // lifted periodic points examined
    std::uint64_t on_variety = 0;   // distance valuation == N
    std::uint64_t suspect = 0;      // valuation in [N-2, N)
    std::vector<unsigned> finite_vals;  // sorted, one entry per off-V point
};

struct GapReport {
    std::vector<GapDegreeRow> rows;
    std::optional<unsigned> max_observed;  // empty when no off-V point exists
};

/// Tate-Voloch gap scan: enumerates Per(F-bar) over F_{p^k} for each k,
/// lifts every cycle and classifies the distance valuation of each lifted
/// periodic point against V.
GapReport tate_voloch_scan(const PolyMap& f, const VarietySpec& v,
                           const std::vector<unsigned>& degrees, unsigned max_period,
                           std::uint64_t budget, bool override_restricted = false);

struct DensityRow {
    unsigned degree = 0;
    std::uint64_t variety_points = 0;      // |V-bar(F_{p^k})|
    std::uint64_t periodic_on_variety = 0;
    std::uint64_t lifted_on_variety = 0;   // lifts with gauss_distance == N
};

struct DensityReport {
    std::vector<DensityRow> rows;
};

/// Manin-Mumford density scan: pre-checks that the reduced map sends the
/// reduced variety into itself (pointwise on enumerated rational points) and
/// then tabulates periodic-point counts and lift membership per degree.
DensityReport manin_mumford_scan(const PolyMap& f, const VarietySpec& v,
                                 const std::vector<unsigned>& degrees, std::uint64_t budget,
                                 bool override_restricted = false);

}  // namespace dynamo
