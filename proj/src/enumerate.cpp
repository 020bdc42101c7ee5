#include "dynamo/enumerate.hpp"

#include <algorithm>

namespace dynamo {

namespace {

std::uint64_t pow_u64(std::uint64_t b, unsigned e) {
    std::uint64_t r = 1;
    while (e--) r *= b;
    return r;
}

}  // namespace

PointSpace::PointSpace(ContextPtr c, unsigned d, std::uint64_t budget) : ctx(std::move(c)), dim(d) {
    if (dim < 1) throw std::invalid_argument("point space dimension must be >= 1");
    const std::uint64_t q = ctx->field_card();
    std::uint64_t s = 1;
    for (unsigned i = 0; i < dim; ++i) {
        if (s > budget / q) throw budget_exceeded("enumeration budget exceeded: q^dim too large");
        s *= q;
    }
    if (s > budget) throw budget_exceeded("enumeration budget exceeded: q^dim too large");
    size = s;
}

std::vector<ResidueElement> PointSpace::decode(std::uint64_t index) const {
    const std::uint64_t q = ctx->field_card();
    std::vector<ResidueElement> point;
    point.reserve(dim);
    for (unsigned i = 0; i < dim; ++i) {
        point.push_back(ctx->decode(index % q));
        index /= q;
    }
    return point;
}

std::uint64_t PointSpace::encode(const std::vector<ResidueElement>& point) const {
    if (point.size() != dim) throw std::invalid_argument("encode: dimension mismatch");
    const std::uint64_t q = ctx->field_card();
    std::uint64_t index = 0;
    for (unsigned i = dim; i-- > 0;) index = index * q + ctx->encode(point[i]);
    return index;
}

std::uint64_t lex_rank(const PointSpace& space, std::uint64_t index) {
    const std::uint64_t p = space.ctx->prime();
    const unsigned k = space.ctx->degree();
    const std::uint64_t q = space.ctx->field_card();
    std::uint64_t rank = 0;
    std::uint64_t coord_weight = pow_u64(q, space.dim - 1);
    std::uint64_t idx = index;
    for (unsigned i = 0; i < space.dim; ++i) {
        std::uint64_t e = idx % q;
        idx /= q;
        // element rank: coefficient c_0 is the most significant digit
        std::uint64_t er = 0;
        std::uint64_t digit_weight = pow_u64(p, k - 1);
        for (unsigned j = 0; j < k; ++j) {
            er += (e % p) * digit_weight;
            e /= p;
            digit_weight /= p;
        }
        rank += er * coord_weight;
        coord_weight /= q;
    }
    return rank;
}

// ---- transition table ------------------------------------------------------

namespace {

std::uint64_t image_of(const PointSpace& space, const std::vector<ResiduePoly>& components,
                       std::uint64_t index) {
    std::vector<ResidueElement> point = space.decode(index);
    std::vector<ResidueElement> out;
    out.reserve(components.size());
    for (const auto& f : components) out.push_back(f.eval(point));
    return space.encode(out);
}

}  // namespace

std::vector<std::uint64_t> transition_table_serial(const PointSpace& space,
                                                   const std::vector<ResiduePoly>& components) {
    if (components.size() != space.dim)
        throw std::invalid_argument("transition table: component count != dim");
    std::vector<std::uint64_t> next(space.size);
    for (std::uint64_t i = 0; i < space.size; ++i) next[i] = image_of(space, components, i);
    return next;
}

std::vector<std::uint64_t> transition_table(const PointSpace& space,
                                            const std::vector<ResiduePoly>& components) {
    if (components.size() != space.dim)
        throw std::invalid_argument("transition table: component count != dim");
    std::vector<std::uint64_t> next(space.size);
    const std::int64_t n = static_cast<std::int64_t>(space.size);
#pragma omp parallel for schedule(static)
    for (std::int64_t i = 0; i < n; ++i)
        next[i] = image_of(space, components, static_cast<std::uint64_t>(i));
    return next;
}

// ---- cycle collection --------------------------------------------------------

namespace {

std::vector<CycleIdx> sort_cycles(const PointSpace& space, std::vector<CycleIdx> cycles) {
    auto key_less = [&](const CycleIdx& a, const CycleIdx& b) {
        if (a.points.size() != b.points.size()) return a.points.size() < b.points.size();
        for (std::size_t i = 0; i < a.points.size(); ++i) {
            std::uint64_t ra = lex_rank(space, a.points[i]);
            std::uint64_t rb = lex_rank(space, b.points[i]);
            if (ra != rb) return ra < rb;
        }
        return false;
    };
    std::sort(cycles.begin(), cycles.end(), key_less);
    return cycles;
}

CycleIdx canonical_rotation(const PointSpace& space, std::vector<std::uint64_t> cycle) {
    std::size_t best = 0;
    std::uint64_t best_rank = lex_rank(space, cycle[0]);
    for (std::size_t i = 1; i < cycle.size(); ++i) {
        std::uint64_t r = lex_rank(space, cycle[i]);
        if (r < best_rank) {
            best_rank = r;
            best = i;
        }
    }
    std::rotate(cycle.begin(), cycle.begin() + static_cast<std::ptrdiff_t>(best), cycle.end());
    return CycleIdx{std::move(cycle)};
}

}  // namespace

std::vector<CycleIdx> collect_cycles_serial(const PointSpace& space,
                                            const std::vector<std::uint64_t>& next,
                                            unsigned max_period) {
    // Orbit walk with a global visited set.  Colors: 0 untouched, 1 on the
    // current path, 2 finished.
    std::vector<std::uint8_t> color(next.size(), 0);
    std::vector<std::uint64_t> path;
    std::vector<CycleIdx> cycles;
    for (std::uint64_t start = 0; start < next.size(); ++start) {
        if (color[start] != 0) continue;
        path.clear();
        std::uint64_t v = start;
        while (color[v] == 0) {
            color[v] = 1;
            path.push_back(v);
            v = next[v];
        }
        if (color[v] == 1) {
            // closed a new cycle inside the current path
            auto it = std::find(path.begin(), path.end(), v);
            std::vector<std::uint64_t> cycle(it, path.end());
            if (cycle.size() <= max_period)
                cycles.push_back(canonical_rotation(space, std::move(cycle)));
        }
        for (std::uint64_t u : path) color[u] = 2;
    }
    return sort_cycles(space, std::move(cycles));
}

std::vector<CycleIdx> collect_cycles(const PointSpace& space,
                                     const std::vector<std::uint64_t>& next, unsigned max_period) {
    // Parallel kernel: a point opens a cycle iff it returns to itself within
    // max_period steps and is the lex-smallest member of that cycle.
    const std::int64_t n = static_cast<std::int64_t>(next.size());
    std::vector<std::uint8_t> opens(next.size(), 0);
    std::vector<std::uint32_t> period(next.size(), 0);
#pragma omp parallel for schedule(static)
    for (std::int64_t ii = 0; ii < n; ++ii) {
        const std::uint64_t i = static_cast<std::uint64_t>(ii);
        std::uint64_t v = i;
        const std::uint64_t my_rank = lex_rank(space, i);
        bool smallest = true;
        for (unsigned m = 1; m <= max_period; ++m) {
            v = next[v];
            if (v == i) {
                if (smallest) {
                    opens[i] = 1;
                    period[i] = m;
                }
                break;
            }
            if (lex_rank(space, v) < my_rank) smallest = false;
        }
    }
    std::vector<CycleIdx> cycles;
    for (std::uint64_t i = 0; i < next.size(); ++i) {
        if (!opens[i]) continue;
        std::vector<std::uint64_t> cycle;
        cycle.reserve(period[i]);
        std::uint64_t v = i;
        for (std::uint32_t m = 0; m < period[i]; ++m) {
            cycle.push_back(v);
            v = next[v];
        }
        cycles.push_back(CycleIdx{std::move(cycle)});
    }
    return sort_cycles(space, std::move(cycles));
}

std::vector<std::uint8_t> on_cycle_flags(const std::vector<std::uint64_t>& next) {
    std::vector<std::uint8_t> color(next.size(), 0);
    std::vector<std::uint8_t> on_cycle(next.size(), 0);
    std::vector<std::uint64_t> path;
    for (std::uint64_t start = 0; start < next.size(); ++start) {
        if (color[start] != 0) continue;
        path.clear();
        std::uint64_t v = start;
        while (color[v] == 0) {
            color[v] = 1;
            path.push_back(v);
            v = next[v];
        }
        if (color[v] == 1) {
            auto it = std::find(path.begin(), path.end(), v);
            for (auto jt = it; jt != path.end(); ++jt) on_cycle[*jt] = 1;
        }
        for (std::uint64_t u : path) color[u] = 2;
    }
    return on_cycle;
}

// ---- preimage scan -----------------------------------------------------------

std::vector<std::uint64_t> preimages_under_iterate_serial(const std::vector<std::uint64_t>& next,
                                                          std::uint64_t target, unsigned n) {
    std::vector<std::uint64_t> out;
    for (std::uint64_t y = 0; y < next.size(); ++y) {
        std::uint64_t v = y;
        for (unsigned s = 0; s < n; ++s) v = next[v];
        if (v == target) out.push_back(y);
    }
    return out;
}

std::vector<std::uint64_t> preimages_under_iterate(const std::vector<std::uint64_t>& next,
                                                   std::uint64_t target, unsigned n) {
    const std::int64_t size = static_cast<std::int64_t>(next.size());
    std::vector<std::uint8_t> hit(next.size(), 0);
#pragma omp parallel for schedule(static)
    for (std::int64_t yy = 0; yy < size; ++yy) {
        std::uint64_t v = static_cast<std::uint64_t>(yy);
        for (unsigned s = 0; s < n; ++s) v = next[v];
        if (v == target) hit[yy] = 1;
    }
    std::vector<std::uint64_t> out;
    for (std::uint64_t y = 0; y < next.size(); ++y)
        if (hit[y]) out.push_back(y);
    return out;
}

// ---- variety points ------------------------------------------------------------

namespace {

bool all_vanish(const PointSpace& space, const std::vector<ResiduePoly>& generators,
                std::uint64_t index) {
    std::vector<ResidueElement> point = space.decode(index);
    for (const auto& g : generators)
        if (!g.eval(point).is_zero()) return false;
    return true;
}

}  // namespace

std::vector<std::uint64_t> vanishing_points_serial(const PointSpace& space,
                                                   const std::vector<ResiduePoly>& generators) {
    std::vector<std::uint64_t> out;
    for (std::uint64_t i = 0; i < space.size; ++i)
        if (all_vanish(space, generators, i)) out.push_back(i);
    return out;
}

std::vector<std::uint64_t> vanishing_points(const PointSpace& space,
                                            const std::vector<ResiduePoly>& generators) {
    const std::int64_t n = static_cast<std::int64_t>(space.size);
    std::vector<std::uint8_t> hit(space.size, 0);
#pragma omp parallel for schedule(static)
    for (std::int64_t i = 0; i < n; ++i)
        if (all_vanish(space, generators, static_cast<std::uint64_t>(i))) hit[i] = 1;
    std::vector<std::uint64_t> out;
    for (std::uint64_t i = 0; i < space.size; ++i)
        if (hit[i]) out.push_back(i);
    return out;
}

}  // namespace dynamo
