#include "dynamo/dynamics.hpp"

#include <algorithm>
#include <exception>
#include <sstream>

#include "dynamo/valuations.hpp"

namespace dynamo {

namespace {

void require_point_ctx(const ContextPtr& ctx, const PadicPoint& x) {
    for (const auto& c : x)
        if (!ctx->same(c.context())) throw context_mismatch("point from foreign context");
}

std::string monomial_text(const Exponents& exps) {
    std::ostringstream os;
    bool wrote = false;
    for (std::size_t v = 0; v < exps.size(); ++v) {
        if (exps[v] == 0) continue;
        if (wrote) os << "*";
        os << "X" << v;
        if (exps[v] > 1) os << "^" << exps[v];
        wrote = true;
    }
    if (!wrote) os << "1";
    return os.str();
}

bool is_power_of(std::uint64_t e, std::uint64_t p) {
    if (e == 0) return false;
    while (e % p == 0) e /= p;
    return e == 1;
}

}  // namespace

// ---- PolyMap ---------------------------------------------------------------

PolyMap::PolyMap(ContextPtr ctx, std::vector<Polynomial> components)
    : ctx_(std::move(ctx)), dim_(static_cast<unsigned>(components.size())),
      comps_(std::move(components)) {
    if (dim_ < 1) throw std::invalid_argument("map needs at least one component");
    for (const auto& c : comps_) {
        if (!ctx_->same(c.context())) throw context_mismatch("component from foreign context");
        if (c.dim() != dim_) throw std::invalid_argument("component dimension != map dimension");
    }
}

PadicPoint PolyMap::eval(const PadicPoint& x) const {
    if (x.size() != dim_) throw std::invalid_argument("eval: dimension mismatch");
    require_point_ctx(ctx_, x);
    PadicPoint out;
    out.reserve(dim_);
    for (const auto& c : comps_) out.push_back(c.eval(x));
    return out;
}

PadicPoint PolyMap::iterate(PadicPoint x, std::uint64_t times) const {
    for (std::uint64_t i = 0; i < times; ++i) x = eval(x);
    return x;
}

PolyMap PolyMap::with_context(const ContextPtr& target) const {
    if (ctx_->same(target)) return *this;
    if (ctx_->prime() != target->prime() || ctx_->precision() != target->precision())
        throw std::invalid_argument("with_context: prime/precision mismatch");
    if (ctx_->degree() != 1)
        throw std::invalid_argument(
            "with_context: only degree-1 coefficients transport to other extensions");
    std::vector<Polynomial> comps;
    comps.reserve(comps_.size());
    for (const auto& c : comps_) {
        std::vector<PTerm> terms;
        terms.reserve(c.terms().size());
        for (const auto& t : c.terms())
            terms.push_back(
                {t.exps, target->from_integer(static_cast<std::int64_t>(t.coeff.coeffs()[0]))});
        comps.emplace_back(target, c.dim(), std::move(terms));
    }
    return PolyMap(target, std::move(comps));
}

// ---- ResidueMap ------------------------------------------------------------

ResidueMap::ResidueMap(ContextPtr ctx, std::vector<ResiduePoly> components)
    : ctx_(std::move(ctx)), dim_(static_cast<unsigned>(components.size())),
      comps_(std::move(components)) {
    if (dim_ < 1) throw std::invalid_argument("map needs at least one component");
    for (const auto& c : comps_) {
        if (!ctx_->same(c.context())) throw context_mismatch("component from foreign context");
        if (c.dim() != dim_) throw std::invalid_argument("component dimension != map dimension");
    }
}

ResiduePoint ResidueMap::eval(const ResiduePoint& x) const {
    if (x.size() != dim_) throw std::invalid_argument("eval: dimension mismatch");
    ResiduePoint out;
    out.reserve(dim_);
    for (const auto& c : comps_) out.push_back(c.eval(x));
    return out;
}

ResiduePoint ResidueMap::iterate(ResiduePoint x, std::uint64_t times) const {
    for (std::uint64_t i = 0; i < times; ++i) x = eval(x);
    return x;
}

ResidueMap reduce_map(const PolyMap& f) {
    std::vector<ResiduePoly> comps;
    comps.reserve(f.components().size());
    for (const auto& c : f.components()) comps.push_back(reduce_poly(c));
    return ResidueMap(f.context(), std::move(comps));
}

// ---- VarietySpec -----------------------------------------------------------

VarietySpec::VarietySpec(ContextPtr ctx, std::vector<Polynomial> generators)
    : ctx_(std::move(ctx)), gens_(std::move(generators)) {
    if (gens_.empty()) throw std::invalid_argument("variety needs at least one generator");
    dim_ = gens_.front().dim();
    for (auto& g : gens_) {
        if (!ctx_->same(g.context())) throw context_mismatch("generator from foreign context");
        if (g.dim() != dim_) throw std::invalid_argument("generator dimension mismatch");
        if (g.is_zero()) throw std::invalid_argument("zero polynomial cannot define a variety");
        g = normalize_generator(g);
    }
}

VarietySpec VarietySpec::with_context(const ContextPtr& target) const {
    if (ctx_->same(target)) return *this;
    if (ctx_->prime() != target->prime() || ctx_->precision() != target->precision())
        throw std::invalid_argument("with_context: prime/precision mismatch");
    if (ctx_->degree() != 1)
        throw std::invalid_argument(
            "with_context: only degree-1 coefficients transport to other extensions");
    std::vector<Polynomial> gens;
    gens.reserve(gens_.size());
    for (const auto& g : gens_) {
        std::vector<PTerm> terms;
        for (const auto& t : g.terms())
            terms.push_back(
                {t.exps, target->from_integer(static_cast<std::int64_t>(t.coeff.coeffs()[0]))});
        gens.emplace_back(target, g.dim(), std::move(terms));
    }
    return VarietySpec(target, std::move(gens));
}

// ---- recognition -----------------------------------------------------------

LiftRecognition recognize_lift_of_pth_power(const PolyMap& f) {
    const auto& ctx = f.context();
    const std::uint64_t p = ctx->prime();
    LiftRecognition out;
    std::vector<ResiduePoly> roots;
    for (unsigned i = 0; i < f.dim(); ++i) {
        ResiduePoly rbar = reduce_poly(f.components()[i]);
        std::vector<RTerm> root_terms;
        for (const auto& t : rbar.terms()) {
            for (unsigned v = 0; v < f.dim(); ++v) {
                if (t.exps[v] % p != 0) {
                    std::ostringstream os;
                    os << "component " << i << ": exponent of monomial " << monomial_text(t.exps)
                       << " is not divisible by p";
                    out.failure = os.str();
                    return out;
                }
            }
            Exponents e(t.exps);
            for (auto& x : e) x = static_cast<std::uint32_t>(x / p);
            root_terms.push_back({std::move(e), pth_root(t.coeff)});
        }
        roots.emplace_back(ctx, f.dim(), std::move(root_terms));
    }
    out.is_lift = true;
    out.root = ResidueMap(ctx, std::move(roots));
    return out;
}

RestrictednessCheck is_restricted_syntactic(const PolyMap& f) {
    const auto& ctx = f.context();
    const std::uint64_t p = ctx->prime();
    RestrictednessCheck out;

    LiftRecognition rec = recognize_lift_of_pth_power(f);
    if (!rec.is_lift) {
        out.reason = "not a lift of p-th power (" + rec.failure + ")";
        return out;
    }

    for (unsigned i = 0; i < f.dim(); ++i) {
        const Polynomial& comp = f.components()[i];
        ResiduePoly rbar = reduce_poly(comp);
        if (rbar.is_zero()) {
            out.reason = "component " + std::to_string(i) + " reduces to zero mod p";
            return out;
        }
        std::vector<std::uint64_t> exps;
        for (const auto& t : rbar.terms()) {
            std::uint64_t e = 0;
            for (unsigned v = 0; v < f.dim(); ++v) {
                if (v == i || t.exps[v] == 0) continue;
                out.reason = "component " + std::to_string(i) + ": monomial " +
                             monomial_text(t.exps) + " involves a foreign variable";
                return out;
            }
            e = t.exps[i];
            if (!is_power_of(e, p) || e < p) {
                out.reason = "component " + std::to_string(i) + ": exponent " +
                             std::to_string(e) + " is not p times a power of p";
                return out;
            }
            exps.push_back(e);
        }
        std::sort(exps.begin(), exps.end());
        const std::uint64_t top = exps.back();

        // leading coefficient must be an exact p-th power at precision so the
        // remainder stays below the degree of G^p
        Exponents top_exps(f.dim(), 0);
        top_exps[i] = static_cast<std::uint32_t>(top);
        PAdicElement a_top = ctx->zero();
        for (const auto& t : comp.terms())
            if (t.exps == top_exps) a_top = t.coeff;
        std::optional<PAdicElement> c_top = pth_root_exact(a_top);
        if (!c_top) {
            out.reason = "component " + std::to_string(i) +
                         ": leading coefficient is not an exact p-th power at this precision";
            return out;
        }

        RestrictedComponentWitness w{{}, {}, Polynomial(ctx, f.dim())};
        std::vector<PTerm> g_terms;
        for (std::uint64_t e : exps) {
            Exponents ge(f.dim(), 0);
            ge[i] = static_cast<std::uint32_t>(e / p);
            PAdicElement c = ctx->zero();
            if (e == top) {
                c = *c_top;
            } else {
                Exponents fe(f.dim(), 0);
                fe[i] = static_cast<std::uint32_t>(e);
                ResidueElement cr = ctx->residue_zero();
                for (const auto& t : rbar.terms())
                    if (t.exps == fe) cr = t.coeff;
                c = lift(pth_root(cr));
            }
            w.unit_coeffs.push_back(c);
            w.root_exponents.push_back(e / p);
            g_terms.push_back({std::move(ge), std::move(c)});
        }
        Polynomial g(ctx, f.dim(), std::move(g_terms));
        Polynomial gp = g.pow(static_cast<unsigned>(p));
        Polynomial delta = comp - gp;
        w.remainder = divide_by_prime(delta);
        if (w.remainder.degree() >= gp.degree()) {
            out.reason = "component " + std::to_string(i) + ": remainder degree " +
                         std::to_string(w.remainder.degree()) +
                         " is not below deg G^p = " + std::to_string(gp.degree());
            return out;
        }
        out.witness.push_back(std::move(w));
    }
    out.restricted = true;
    return out;
}

// ---- periodic points ---------------------------------------------------------

namespace {

std::vector<ResidueCycle> decode_cycles(const PointSpace& space,
                                        const std::vector<CycleIdx>& raw) {
    std::vector<ResidueCycle> out;
    out.reserve(raw.size());
    for (const auto& c : raw) {
        ResidueCycle rc;
        rc.points.reserve(c.points.size());
        for (std::uint64_t idx : c.points) rc.points.push_back(space.decode(idx));
        out.push_back(std::move(rc));
    }
    return out;
}

}  // namespace

std::vector<ResidueCycle> periodic_points_residue(const ResidueMap& fbar, unsigned max_period,
                                                  std::uint64_t budget) {
    PointSpace space(fbar.context(), fbar.dim(), budget);
    auto next = transition_table(space, fbar.components());
    return decode_cycles(space, collect_cycles(space, next, max_period));
}

std::vector<ResidueCycle> periodic_points_residue_serial(const ResidueMap& fbar,
                                                         unsigned max_period,
                                                         std::uint64_t budget) {
    PointSpace space(fbar.context(), fbar.dim(), budget);
    auto next = transition_table_serial(space, fbar.components());
    return decode_cycles(space, collect_cycles_serial(space, next, max_period));
}

PadicPoint contract_cycle_lift(const PolyMap& f, PadicPoint x0, unsigned period) {
    const unsigned n = f.context()->precision();
    for (unsigned i = 0; i < n; ++i) x0 = f.iterate(std::move(x0), period);
    return x0;
}

PeriodicPoint lift_periodic(const PolyMap& f, const ResidueCycle& cycle,
                            bool override_restricted) {
    if (cycle.points.empty()) throw std::invalid_argument("empty cycle");
    if (!override_restricted) {
        RestrictednessCheck check = is_restricted_syntactic(f);
        if (!check.restricted)
            throw lift_failure("map failed the syntactic restrictedness check (" + check.reason +
                               "); pass the override to lift anyway");
    }

    const unsigned n = cycle.period();
    ResidueMap fbar = reduce_map(f);
    for (unsigned i = 0; i < n; ++i) {
        for (unsigned j = i + 1; j < n; ++j)
            if (cycle.points[i] == cycle.points[j])
                throw lift_failure("cycle points are not pairwise distinct");
        ResiduePoint image = fbar.eval(cycle.points[i]);
        if (image != cycle.points[(i + 1) % n])
            throw lift_failure("cycle is not compatible with the reduced map");
    }

    PadicPoint x0;
    x0.reserve(f.dim());
    for (const auto& r : cycle.points[0]) x0.push_back(lift(r));
    PadicPoint x = contract_cycle_lift(f, std::move(x0), n);

    // convergence contract: F^n(x) = x at precision and red(x) = cycle start
    if (f.iterate(x, n) != x)
        throw lift_failure("contraction did not converge; restrictedness assumption violated");
    for (unsigned i = 0; i < f.dim(); ++i)
        if (reduce(x[i]) != cycle.points[0][i])
            throw lift_failure("lift left its residue disc");

    PeriodicPoint out;
    out.coords = x;
    out.period = n;
    PadicPoint cur = x;
    for (unsigned i = 0; i < n; ++i) {
        ResiduePoint r;
        r.reserve(f.dim());
        for (const auto& c : cur) r.push_back(reduce(c));
        out.residue_cycle.points.push_back(std::move(r));
        if (i + 1 < n) cur = f.eval(cur);
    }
    return out;
}

std::pair<unsigned, unsigned> contraction_witness(const PolyMap& f, const PadicPoint& x,
                                                  const PadicPoint& y) {
    if (x.size() != f.dim() || y.size() != f.dim())
        throw std::invalid_argument("contraction_witness: dimension mismatch");
    for (unsigned i = 0; i < f.dim(); ++i)
        if (reduce(x[i]) != reduce(y[i]))
            throw std::invalid_argument("contraction_witness: points lie in different residue discs");
    const unsigned n = f.context()->precision();
    unsigned v_in = n, v_out = n;
    for (unsigned i = 0; i < f.dim(); ++i) v_in = std::min(v_in, val(x[i] - y[i]));
    PadicPoint fx = f.eval(x);
    PadicPoint fy = f.eval(y);
    for (unsigned i = 0; i < f.dim(); ++i) v_out = std::min(v_out, val(fx[i] - fy[i]));
    return {v_in, v_out};
}

ResidueCycle tilt_periodic(const PeriodicPoint& x) { return x.residue_cycle; }

unsigned gauss_distance(const PadicPoint& x, const VarietySpec& v) {
    if (x.size() != v.dim()) throw std::invalid_argument("gauss_distance: dimension mismatch");
    unsigned best = v.context()->precision();
    for (const auto& h : v.generators()) best = std::min(best, val(h.eval(x)));
    return best;
}

// ---- scans -------------------------------------------------------------------

namespace {

ContextPtr context_for_degree(const ContextPtr& base, unsigned k) {
    if (base->degree() == k) return base;
    if (base->degree() != 1)
        throw std::invalid_argument(
            "scans over a degree list require degree-1 coefficients (got k=" +
            std::to_string(base->degree()) + ")");
    return PAdicContext::make(base->prime(), k, base->precision());
}

std::vector<unsigned> sorted_degrees(std::vector<unsigned> degrees) {
    if (degrees.empty()) throw std::invalid_argument("empty degree list");
    std::sort(degrees.begin(), degrees.end());
    degrees.erase(std::unique(degrees.begin(), degrees.end()), degrees.end());
    if (degrees.front() < 1) throw std::invalid_argument("degrees must be >= 1");
    return degrees;
}

}  // namespace

GapReport tate_voloch_scan(const PolyMap& f, const VarietySpec& v,
                           const std::vector<unsigned>& degrees, unsigned max_period,
                           std::uint64_t budget, bool override_restricted) {
    if (!override_restricted) {
        RestrictednessCheck check = is_restricted_syntactic(f);
        if (!check.restricted)
            throw lift_failure("map failed the syntactic restrictedness check (" + check.reason +
                               "); pass the override to scan anyway");
    }
    GapReport report;
    for (unsigned k : sorted_degrees(degrees)) {
        ContextPtr ctx_k = context_for_degree(f.context(), k);
        PolyMap fk = f.with_context(ctx_k);
        VarietySpec vk = v.with_context(ctx_k);
        std::vector<ResidueCycle> cycles =
            periodic_points_residue(reduce_map(fk), max_period, budget);

        GapDegreeRow row;
        row.degree = k;
        const std::int64_t m = static_cast<std::int64_t>(cycles.size());
        std::vector<std::vector<unsigned>> vals_per_cycle(cycles.size());
        std::exception_ptr first_error;
#pragma omp parallel for schedule(dynamic)
        for (std::int64_t c = 0; c < m; ++c) {
            try {
                PeriodicPoint pp = lift_periodic(fk, cycles[c], true);
                std::vector<unsigned> vals;
                PadicPoint cur = pp.coords;
                for (unsigned j = 0; j < pp.period; ++j) {
                    vals.push_back(gauss_distance(cur, vk));
                    if (j + 1 < pp.period) cur = fk.eval(cur);
                }
                vals_per_cycle[c] = std::move(vals);
            } catch (...) {
#pragma omp critical
                if (!first_error) first_error = std::current_exception();
            }
        }
        if (first_error) std::rethrow_exception(first_error);
        const unsigned n_prec = ctx_k->precision();
        for (const auto& vals : vals_per_cycle) {
            for (unsigned d : vals) {
                ++row.points;
                if (d == n_prec)
                    ++row.on_variety;
                else if (d + 2 >= n_prec)
                    ++row.suspect;
                else
                    row.finite_vals.push_back(d);
            }
        }
        std::sort(row.finite_vals.begin(), row.finite_vals.end());
        if (!row.finite_vals.empty()) {
            unsigned local_max = row.finite_vals.back();
            if (!report.max_observed || local_max > *report.max_observed)
                report.max_observed = local_max;
        }
        report.rows.push_back(std::move(row));
    }
    return report;
}

DensityReport manin_mumford_scan(const PolyMap& f, const VarietySpec& v,
                                 const std::vector<unsigned>& degrees, std::uint64_t budget,
                                 bool override_restricted) {
    if (!override_restricted) {
        RestrictednessCheck check = is_restricted_syntactic(f);
        if (!check.restricted)
            throw lift_failure("map failed the syntactic restrictedness check (" + check.reason +
                               "); pass the override to scan anyway");
    }
    DensityReport report;
    for (unsigned k : sorted_degrees(degrees)) {
        ContextPtr ctx_k = context_for_degree(f.context(), k);
        PolyMap fk = f.with_context(ctx_k);
        VarietySpec vk = v.with_context(ctx_k);
        ResidueMap fbar = reduce_map(fk);
        std::vector<ResiduePoly> vbar;
        vbar.reserve(vk.generators().size());
        for (const auto& g : vk.generators()) vbar.push_back(reduce_poly(g));

        PointSpace space(ctx_k, fk.dim(), budget);
        std::vector<std::uint64_t> vpoints = vanishing_points(space, vbar);

        // invariance pre-check, pointwise on the enumerated rational points
        for (std::uint64_t idx : vpoints) {
            ResiduePoint image = fbar.eval(space.decode(idx));
            for (const auto& g : vbar) {
                if (!g.eval(image).is_zero())
                    throw invariance_failure(
                        "reduced variety is not invariant under the reduced map at degree " +
                        std::to_string(k));
            }
        }

        std::vector<std::uint64_t> next = transition_table(space, fbar.components());
        std::vector<std::uint8_t> cyc = on_cycle_flags(next);

        std::vector<std::uint64_t> periodic;
        for (std::uint64_t idx : vpoints)
            if (cyc[idx]) periodic.push_back(idx);

        DensityRow row;
        row.degree = k;
        row.variety_points = vpoints.size();
        row.periodic_on_variety = periodic.size();

        const std::int64_t m = static_cast<std::int64_t>(periodic.size());
        std::vector<std::uint8_t> lift_on(periodic.size(), 0);
        std::exception_ptr first_error;
#pragma omp parallel for schedule(dynamic)
        for (std::int64_t c = 0; c < m; ++c) {
            try {
                std::uint64_t start = periodic[c];
                ResidueCycle cycle;
                std::uint64_t cur = start;
                do {
                    cycle.points.push_back(space.decode(cur));
                    cur = next[cur];
                } while (cur != start);
                PeriodicPoint pp = lift_periodic(fk, cycle, true);
                if (gauss_distance(pp.coords, vk) == ctx_k->precision()) lift_on[c] = 1;
            } catch (...) {
#pragma omp critical
                if (!first_error) first_error = std::current_exception();
            }
        }
        if (first_error) std::rethrow_exception(first_error);
        for (std::uint8_t b : lift_on) row.lifted_on_variety += b;
        report.rows.push_back(row);
    }
    return report;
}

}  // namespace dynamo
