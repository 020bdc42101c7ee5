#include "dynamo/stability.hpp"

#include <algorithm>
#include <set>

namespace dynamo {

namespace {

ResiduePoly embed_poly(const ResiduePoly& f, const ResidueEmbedding& emb) {
    std::vector<RTerm> terms;
    terms.reserve(f.terms().size());
    for (const auto& t : f.terms()) terms.push_back({t.exps, emb(t.coeff)});
    return ResiduePoly(emb.to(), f.dim(), std::move(terms));
}

ResiduePoint embed_point(const ResiduePoint& x, const ResidueEmbedding& emb) {
    ResiduePoint out;
    out.reserve(x.size());
    for (const auto& c : x) out.push_back(emb(c));
    return out;
}

bool point_less(const ResiduePoint& a, const ResiduePoint& b) {
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] < b[i]) return true;
        if (b[i] < a[i]) return false;
    }
    return false;
}

std::uint64_t map_degree_product(const ResidueMap& fbar) {
    std::uint64_t prod = 1;
    for (const auto& c : fbar.components()) {
        std::int64_t d = c.degree();
        if (d <= 0) return 0;
        prod *= static_cast<std::uint64_t>(d);
    }
    return prod;
}

ResidueElement frobenius_power(ResidueElement r, unsigned times) {
    for (unsigned i = 0; i < times; ++i) r = frobenius(r);
    return r;
}

unsigned orbit_count_unchecked(const std::vector<ResiduePoint>& points, unsigned base_degree) {
    std::set<std::vector<std::uint64_t>> remaining;
    auto key = [](const ResiduePoint& pt) {
        std::vector<std::uint64_t> k;
        for (const auto& c : pt)
            for (std::uint64_t d : c.coeffs()) k.push_back(d);
        return k;
    };
    for (const auto& pt : points) remaining.insert(key(pt));
    unsigned orbits = 0;
    while (!remaining.empty()) {
        auto seed_key = *remaining.begin();
        // reconstruct the point from its key
        ++orbits;
        // walk the Frobenius orbit
        const auto& any = points;  // find the matching point
        ResiduePoint cur;
        for (const auto& pt : any) {
            if (key(pt) == seed_key) {
                cur = pt;
                break;
            }
        }
        while (true) {
            remaining.erase(key(cur));
            ResiduePoint nxt;
            nxt.reserve(cur.size());
            for (const auto& c : cur) nxt.push_back(frobenius_power(c, base_degree));
            if (key(nxt) == seed_key) break;
            cur = std::move(nxt);
        }
    }
    return orbits;
}

}  // namespace

PreimageSet preimage_set(const ResidueMap& fbar, const ResiduePoint& x, unsigned depth,
                         unsigned degree_bound, std::uint64_t budget) {
    const ContextPtr& base = fbar.context();
    if (x.size() != fbar.dim()) throw std::invalid_argument("preimage_set: dimension mismatch");
    if (degree_bound < 1) throw std::invalid_argument("degree_bound must be >= 1");

    PreimageSet out;
    out.base = x;
    out.depth = depth;
    if (depth == 0) {
        out.field = base;
        out.points = {x};
        out.complete = true;
        return out;
    }

    std::uint64_t best_count = 0;
    std::uint64_t prev_count = 0;
    std::uint64_t last_count = 0;
    for (unsigned j = 1; j <= degree_bound; ++j) {
        ContextPtr ctx_m =
            (j == 1) ? base
                     : PAdicContext::make(base->prime(), j * base->degree(), base->precision());
        ResidueEmbedding emb(base, ctx_m);
        std::vector<ResiduePoly> comps;
        comps.reserve(fbar.components().size());
        for (const auto& c : fbar.components()) comps.push_back(embed_poly(c, emb));
        ResiduePoint target = embed_point(x, emb);

        PointSpace space(ctx_m, fbar.dim(), budget);
        std::vector<std::uint64_t> next = transition_table(space, comps);
        std::vector<std::uint64_t> sols =
            preimages_under_iterate(next, space.encode(target), depth);

        prev_count = last_count;
        last_count = sols.size();
        if (sols.size() > best_count) {
            best_count = sols.size();
            out.field = ctx_m;
            out.points.clear();
            out.points.reserve(sols.size());
            for (std::uint64_t idx : sols) out.points.push_back(space.decode(idx));
        }
    }
    if (out.points.empty()) out.field = base;
    std::sort(out.points.begin(), out.points.end(), point_less);

    const std::uint64_t deg_prod = map_degree_product(fbar);
    std::uint64_t expected = 1;
    bool expected_ok = deg_prod > 0;
    for (unsigned i = 0; i < depth && expected_ok; ++i) {
        if (expected > budget / std::max<std::uint64_t>(deg_prod, 1)) expected_ok = false;
        expected *= deg_prod;
    }
    bool stabilized = degree_bound >= 2 && prev_count == last_count;
    bool degree_certified = expected_ok && best_count == expected;
    out.complete = stabilized || degree_certified;
    return out;
}

unsigned galois_orbit_count(const PreimageSet& s, unsigned base_degree) {
    if (!s.complete)
        throw incomplete_preimages("galois_orbit_count requires a complete preimage set");
    return orbit_count_unchecked(s.points, base_degree);
}

OrbitReport eventual_stability_probe(const ResidueMap& fbar, const ResiduePoint& x,
                                     unsigned n_max, unsigned degree_bound,
                                     std::uint64_t budget) {
    OrbitReport report;
    for (unsigned n = 0; n <= n_max; ++n) {
        PreimageSet s = preimage_set(fbar, x, n, degree_bound, budget);
        OrbitRow row;
        row.n = n;
        row.preimages = s.points.size();
        row.orbits = orbit_count_unchecked(s.points, fbar.context()->degree());
        row.field_degree = s.field ? s.field->degree() : fbar.context()->degree();
        row.complete = s.complete;
        report.rows.push_back(row);
    }

    // boundedness heuristic: constant over the last three entries, or
    // non-increasing after the first peak (with the peak before the end)
    const auto& rows = report.rows;
    auto count = [&](std::size_t i) { return rows[i].orbits; };
    const std::size_t len = rows.size();
    bool bounded = false;
    if (len >= 3 && count(len - 1) == count(len - 2) && count(len - 2) == count(len - 3)) {
        bounded = true;
    } else {
        std::size_t peak = 0;
        for (std::size_t i = 1; i < len; ++i)
            if (count(i) > count(peak)) peak = i;
        if (peak + 1 < len || len == 1) {
            bounded = true;
            for (std::size_t i = peak; i + 1 < len; ++i)
                if (count(i + 1) > count(i)) bounded = false;
        }
    }
    report.bounded = bounded;
    return report;
}

// ---- backward-orbit search ---------------------------------------------------

namespace {

struct PredLists {
    std::vector<std::uint64_t> offset;  // size+1 entries
    std::vector<std::uint64_t> flat;    // sources grouped by target, ascending

    std::pair<const std::uint64_t*, const std::uint64_t*> of(std::uint64_t node) const {
        return {flat.data() + offset[node], flat.data() + offset[node + 1]};
    }
};

struct SearchState {
    const PointSpace& space;
    const PredLists& preds;
    const std::vector<std::uint8_t>& on_variety;
    unsigned depth;
    unsigned lookahead;
    std::uint64_t budget;
    std::uint64_t visited = 0;

    std::vector<std::uint64_t> chain;
    std::vector<std::uint64_t> best_chain;
    std::size_t best_hits = 0;
    bool found = false;

    bool subtree_has_variety(std::uint64_t node, unsigned levels) {
        if (on_variety[node]) return true;
        if (levels == 0) return false;
        auto [first, last] = preds.of(node);
        for (const std::uint64_t* it = first; it != last; ++it)
            if (subtree_has_variety(*it, levels - 1)) return true;
        return false;
    }

    bool chain_rank_less(const std::vector<std::uint64_t>& a,
                         const std::vector<std::uint64_t>& b) const {
        for (std::size_t i = 0; i < a.size() && i < b.size(); ++i) {
            std::uint64_t ra = lex_rank(space, a[i]);
            std::uint64_t rb = lex_rank(space, b[i]);
            if (ra != rb) return ra < rb;
        }
        return a.size() < b.size();
    }

    void dfs(std::uint64_t node, unsigned level, std::size_t hits) {
        if (++visited > budget) throw budget_exceeded("backward-orbit search budget exceeded");
        if (level == depth) {
            if (!found || hits > best_hits ||
                (hits == best_hits && chain_rank_less(chain, best_chain))) {
                found = true;
                best_hits = hits;
                best_chain = chain;
            }
            return;
        }
        // can the remaining levels still beat the best?
        if (found && hits + (depth - level) < best_hits) return;

        auto [first, last] = preds.of(node);
        std::vector<std::uint64_t> kids(first, last);
        std::stable_sort(kids.begin(), kids.end(), [&](std::uint64_t a, std::uint64_t b) {
            bool la = subtree_has_variety(a, lookahead);
            bool lb = subtree_has_variety(b, lookahead);
            if (la != lb) return la;
            return lex_rank(space, a) < lex_rank(space, b);
        });
        for (std::uint64_t kid : kids) {
            chain.push_back(kid);
            dfs(kid, level + 1, hits + (on_variety[kid] ? 1 : 0));
            chain.pop_back();
        }
    }
};

}  // namespace

std::optional<BackwardOrbit> coherent_backward_orbit_search(
    const ResidueMap& fbar, const ResiduePoint& x0, const std::vector<ResiduePoly>& variety,
    unsigned depth, unsigned lookahead, unsigned degree_bound, std::uint64_t budget) {
    const ContextPtr& base = fbar.context();
    if (degree_bound < 1) throw std::invalid_argument("degree_bound must be >= 1");

    ContextPtr ctx_m = (degree_bound == 1)
                           ? base
                           : PAdicContext::make(base->prime(), degree_bound * base->degree(),
                                                base->precision());
    ResidueEmbedding emb(base, ctx_m);
    std::vector<ResiduePoly> comps;
    for (const auto& c : fbar.components()) comps.push_back(embed_poly(c, emb));
    std::vector<ResiduePoly> gens;
    for (const auto& g : variety) gens.push_back(embed_poly(g, emb));

    PointSpace space(ctx_m, fbar.dim(), budget);
    std::vector<std::uint64_t> next = transition_table(space, comps);

    // predecessor lists via counting sort, sources ascending
    PredLists preds;
    preds.offset.assign(space.size + 1, 0);
    for (std::uint64_t i = 0; i < space.size; ++i) ++preds.offset[next[i] + 1];
    for (std::uint64_t i = 0; i < space.size; ++i) preds.offset[i + 1] += preds.offset[i];
    preds.flat.assign(space.size, 0);
    std::vector<std::uint64_t> cursor(preds.offset.begin(), preds.offset.end() - 1);
    for (std::uint64_t i = 0; i < space.size; ++i) preds.flat[cursor[next[i]]++] = i;

    std::vector<std::uint8_t> on_v(space.size, 0);
    for (std::uint64_t idx : vanishing_points(space, gens)) on_v[idx] = 1;

    std::uint64_t start = space.encode(embed_point(x0, emb));
    SearchState st{space, preds, on_v, depth, lookahead, budget, 0, {}, {}, 0, false};
    st.chain.push_back(start);
    st.dfs(start, 0, on_v[start] ? 1 : 0);
    if (!st.found) return std::nullopt;

    BackwardOrbit orbit;
    orbit.field = ctx_m;
    for (std::size_t i = 0; i < st.best_chain.size(); ++i) {
        orbit.points.push_back(space.decode(st.best_chain[i]));
        if (on_v[st.best_chain[i]]) orbit.hits.push_back(i);
    }
    return orbit;
}

}  // namespace dynamo
