#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <limits>
#include <random>
#include <set>

#include "dynamo/dynamics.hpp"

using namespace dynamo;

namespace {

PolyMap make_map(const ContextPtr& ctx, unsigned dim, std::vector<std::string> texts) {
    std::vector<Polynomial> comps;
    for (const auto& t : texts) comps.push_back(parse_polynomial(t, ctx, dim));
    return PolyMap(ctx, std::move(comps));
}

// Newton iteration on a univariate polynomial with unit derivative at the
// seed; independent of the contraction path used by lift_periodic.
PAdicElement hensel_root(const Polynomial& g, const PAdicElement& seed) {
    const auto& ctx = g.context();
    std::vector<PTerm> dterms;
    for (const auto& t : g.terms()) {
        if (t.exps[0] == 0) continue;
        dterms.push_back({{t.exps[0] - 1},
                          t.coeff * ctx->from_integer(static_cast<std::int64_t>(t.exps[0]))});
    }
    Polynomial dg(ctx, 1, std::move(dterms));
    PAdicElement x = seed;
    for (unsigned i = 0; i < ctx->precision() + 2; ++i) {
        PAdicElement gx = g.eval({x});
        if (gx.is_zero()) break;
        x = x - gx * invert(dg.eval({x}));
    }
    REQUIRE(g.eval({x}).is_zero());
    return x;
}

ResiduePoint rpoint(const ContextPtr& ctx, std::vector<std::int64_t> vals) {
    ResiduePoint p;
    for (auto v : vals) p.push_back(ctx->residue_from_integer(v));
    return p;
}

}  // namespace

TEST_CASE("eval examples") {
    auto ctx2 = PAdicContext::make(2, 1, 8);
    auto f = make_map(ctx2, 1, {"X0^2 + 2*X0"});
    CHECK(f.eval({ctx2->one()}) == PadicPoint{ctx2->from_integer(3)});

    auto id = make_map(ctx2, 1, {"X0"});
    auto x = ctx2->from_integer(173);
    CHECK(id.eval({x}) == PadicPoint{x});

    auto ctx3 = PAdicContext::make(3, 1, 6);
    auto intro = make_map(ctx3, 2, {"X0^3+X1^3+3*X0*X1", "X0^3-X1^3+3*X0*X1"});
    auto out = intro.eval({ctx3->one(), ctx3->one()});
    CHECK(out == PadicPoint{ctx3->from_integer(5), ctx3->from_integer(3)});
}

TEST_CASE("reduce_map examples") {
    auto ctx2 = PAdicContext::make(2, 1, 8);
    auto f = make_map(ctx2, 1, {"X0^2 + 2*X0"});
    auto fbar = reduce_map(f);
    CHECK(fbar.components()[0] == reduce_poly(parse_polynomial("X0^2", ctx2, 1)));

    auto ctx3 = PAdicContext::make(3, 1, 6);
    auto intro = make_map(ctx3, 2, {"X0^3+X1^3+3*X0*X1", "X0^3-X1^3+3*X0*X1"});
    auto ibar = reduce_map(intro);
    CHECK(ibar.components()[0] == reduce_poly(parse_polynomial("X0^3+X1^3", ctx3, 2)));
    CHECK(ibar.components()[1] == reduce_poly(parse_polynomial("X0^3-X1^3", ctx3, 2)));

    auto zero = make_map(ctx2, 1, {"2*X0"});
    CHECK(reduce_map(zero).components()[0].is_zero());
}

TEST_CASE("recognition of lifts of p-th powers") {
    auto ctx2 = PAdicContext::make(2, 1, 8);
    auto f = make_map(ctx2, 1, {"X0^2 + 2*X0"});
    auto rec = recognize_lift_of_pth_power(f);
    REQUIRE(rec.is_lift);
    CHECK(rec.root->components()[0] == reduce_poly(parse_polynomial("X0", ctx2, 1)));

    auto ctx3 = PAdicContext::make(3, 1, 6);
    auto intro = make_map(ctx3, 2, {"X0^3+X1^3+3*X0*X1", "X0^3-X1^3+3*X0*X1"});
    auto irec = recognize_lift_of_pth_power(intro);
    REQUIRE(irec.is_lift);
    CHECK(irec.root->components()[0] == reduce_poly(parse_polynomial("X0+X1", ctx3, 2)));
    CHECK(irec.root->components()[1] == reduce_poly(parse_polynomial("X0-X1", ctx3, 2)));
    // the root really is a p-th root of the reduction: check on all of F_3^2
    for (std::int64_t a = 0; a < 3; ++a) {
        for (std::int64_t b = 0; b < 3; ++b) {
            auto pt = rpoint(ctx3, {a, b});
            auto g = irec.root->eval(pt);
            auto cube = ResiduePoint{g[0] * g[0] * g[0], g[1] * g[1] * g[1]};
            CHECK(cube == reduce_map(intro).eval(pt));
        }
    }

    auto bad = make_map(ctx2, 1, {"X0^2 + X0"});
    auto brec = recognize_lift_of_pth_power(bad);
    CHECK_FALSE(brec.is_lift);
    CHECK(brec.failure.find("component 0") != std::string::npos);
}

TEST_CASE("syntactic restrictedness") {
    auto ctx2 = PAdicContext::make(2, 1, 8);
    auto f = make_map(ctx2, 1, {"X0^2 + 2*X0"});
    auto check = is_restricted_syntactic(f);
    REQUIRE(check.restricted);
    REQUIRE(check.witness.size() == 1);
    CHECK(check.witness[0].root_exponents == std::vector<std::uint64_t>{1});
    CHECK(check.witness[0].unit_coeffs[0] == ctx2->one());
    CHECK(check.witness[0].remainder == parse_polynomial("X0", ctx2, 1));
    CHECK(check.witness[0].remainder.degree() == 1);

    // the paper's intro map has a two-variable root, so the single-variable
    // syntactic form rejects it
    auto ctx3 = PAdicContext::make(3, 1, 6);
    auto intro = make_map(ctx3, 2, {"X0^3+X1^3+3*X0*X1", "X0^3-X1^3+3*X0*X1"});
    CHECK_FALSE(is_restricted_syntactic(intro).restricted);

    // leading coefficient reduces to zero
    auto degenerate = make_map(ctx2, 1, {"2*X0^2"});
    CHECK_FALSE(is_restricted_syntactic(degenerate).restricted);

    // remainder degree too large
    auto heavy = make_map(ctx2, 2, {"X0^2 + 2*X0*X1^2", "X1^2 + 2*X0"});
    CHECK_FALSE(is_restricted_syntactic(heavy).restricted);
    auto ok2 = make_map(ctx2, 2, {"X0^2 + 2*X1", "X1^2 + 2*X0"});
    CHECK(is_restricted_syntactic(ok2).restricted);
}

TEST_CASE("residue periodic point enumeration") {
    auto ctx1 = PAdicContext::make(2, 1, 8);
    auto sq1 = reduce_map(make_map(ctx1, 1, {"X0^2"}));
    auto cycles = periodic_points_residue(sq1, 2, 1 << 20);
    REQUIRE(cycles.size() == 2);  // [0] and [1], both fixed
    CHECK(cycles[0].period() == 1);
    CHECK(cycles[1].period() == 1);

    auto ctx4 = PAdicContext::make(2, 2, 8);
    auto sq4 = reduce_map(make_map(ctx4, 1, {"X0^2"}));
    auto cycles4 = periodic_points_residue(sq4, 2, 1 << 20);
    REQUIRE(cycles4.size() == 3);
    // {[0], [1], [w, w+1]} with w^2 = w+1 and (w+1)^2 = w
    CHECK(cycles4[0].points == std::vector<ResiduePoint>{{ctx4->residue_zero()}});
    CHECK(cycles4[1].points == std::vector<ResiduePoint>{{ctx4->residue_one()}});
    REQUIRE(cycles4[2].period() == 2);
    CHECK(cycles4[2].points[0] == ResiduePoint{ctx4->residue_generator()});
    CHECK(cycles4[2].points[1] == ResiduePoint{ctx4->residue_from_coeffs({1, 1})});

    // strictly preperiodic points are not cycles
    auto pre = reduce_map(make_map(ctx1, 1, {"X0^2 + X0"}));
    auto pcycles = periodic_points_residue(pre, 2, 1 << 20);
    REQUIRE(pcycles.size() == 1);
    CHECK(pcycles[0].points == std::vector<ResiduePoint>{{ctx1->residue_zero()}});

    // brute-force oracle: every reported cycle is genuine and none is missing
    auto ctx9 = PAdicContext::make(3, 2, 4);
    auto m = reduce_map(make_map(ctx9, 1, {"X0^3 + 3*X0"}));
    auto got = periodic_points_residue(m, 4, 1 << 20);
    std::set<std::uint64_t> starts;
    for (const auto& c : got) {
        ResiduePoint x = c.points[0];
        for (unsigned i = 1; i < c.period(); ++i) {
            x = m.eval(x);
            CHECK(x == c.points[i]);
        }
        CHECK(m.eval(x) == c.points[0]);
        for (const auto& pt : c.points) starts.insert(ctx9->encode(pt[0]));
    }
    for (std::uint64_t i = 0; i < 9; ++i) {
        // walk the orbit; any point on a cycle of length <= 4 must be reported
        ResiduePoint x = {ctx9->decode(i)};
        std::vector<std::uint64_t> seen = {i};
        bool cycled = false;
        for (int step = 0; step < 16 && !cycled; ++step) {
            x = m.eval(x);
            std::uint64_t e = ctx9->encode(x[0]);
            for (std::size_t j = 0; j < seen.size(); ++j) {
                if (seen[j] == e) {
                    std::size_t len = seen.size() - j;
                    if (len <= 4)
                        for (std::size_t t = j; t < seen.size(); ++t)
                            CHECK(starts.count(seen[t]) == 1);
                    cycled = true;
                    break;
                }
            }
            if (!cycled) seen.push_back(e);
        }
    }
}

TEST_CASE("lift_periodic fixed points of X0^2 + 2*X0") {
    auto ctx = PAdicContext::make(2, 1, 8);
    auto f = make_map(ctx, 1, {"X0^2 + 2*X0"});

    ResidueCycle one{{{ctx->residue_one()}}};
    auto pp = lift_periodic(f, one);
    CHECK(pp.coords[0] == ctx->from_integer(255));  // -1 mod 2^8
    CHECK(pp.period == 1);

    // independent oracle: the odd root of x^2 + x = 0 by Newton iteration
    auto oracle = hensel_root(parse_polynomial("X0^2 + X0", ctx, 1), ctx->one());
    CHECK(pp.coords[0] == oracle);

    ResidueCycle zero{{{ctx->residue_zero()}}};
    CHECK(lift_periodic(f, zero).coords[0].is_zero());
}

TEST_CASE("lift_periodic finds the Teichmueller cube root of unity") {
    auto ctx = PAdicContext::make(2, 2, 8);
    auto f = make_map(ctx, 1, {"X0^2"});
    ResidueCycle cyc{{{ctx->residue_generator()}, {ctx->residue_from_coeffs({1, 1})}}};
    auto pp = lift_periodic(f, cyc);

    // oracle: Hensel-lift the root of x^2 + x + 1 congruent to w
    auto zeta = hensel_root(parse_polynomial("X0^2 + X0 + 1", ctx, 1), lift(cyc.points[0][0]));
    CHECK(pp.coords[0] == zeta);
    CHECK(pp.coords[0].pow(3) == ctx->one());
    CHECK(f.iterate(pp.coords, 2) == pp.coords);
    CHECK(reduce(pp.coords[0]) == ctx->residue_generator());
}

TEST_CASE("lift_periodic rejects bad inputs") {
    auto ctx = PAdicContext::make(2, 1, 8);
    auto not_restricted = make_map(ctx, 1, {"X0^2 + X0"});
    ResidueCycle zero{{{ctx->residue_zero()}}};
    CHECK_THROWS_AS(lift_periodic(not_restricted, zero), lift_failure);

    auto f = make_map(ctx, 1, {"X0^2 + 2*X0"});
    ResidueCycle not_a_cycle{{{ctx->residue_zero()}, {ctx->residue_one()}}};
    CHECK_THROWS_AS(lift_periodic(f, not_a_cycle), lift_failure);
}

TEST_CASE("contraction witness examples") {
    auto ctx = PAdicContext::make(2, 1, 8);
    auto f = make_map(ctx, 1, {"X0^2 + 2*X0"});
    auto [v1, w1] = contraction_witness(f, {ctx->one()}, {ctx->from_integer(3)});
    CHECK(v1 == 1);
    CHECK(w1 == 2);  // F(1)=3, F(3)=15, val(-12)=2

    auto [v2, w2] = contraction_witness(f, {ctx->one()}, {ctx->one()});
    CHECK(v2 == 8);
    CHECK(w2 == 8);

    auto [v3, w3] = contraction_witness(f, {ctx->one()}, {ctx->from_integer(5)});
    CHECK(v3 == 2);
    CHECK(w3 >= 3);

    CHECK_THROWS_AS(contraction_witness(f, {ctx->one()}, {ctx->zero()}), std::invalid_argument);
}

TEST_CASE("contraction estimate holds on random same-disc pairs") {
    std::mt19937_64 rng(12);
    auto ctx2 = PAdicContext::make(2, 1, 8);
    auto ctx3 = PAdicContext::make(3, 1, 6);
    std::vector<PolyMap> maps;
    maps.push_back(make_map(ctx2, 1, {"X0^2 + 2*X0"}));
    maps.push_back(make_map(ctx3, 1, {"X0^3 + 3*X0"}));
    maps.push_back(make_map(ctx2, 2, {"X0^2 + 2*X1", "X1^2 + 2*X0"}));
    for (const auto& f : maps) {
        const auto& ctx = f.context();
        const std::uint64_t p = ctx->prime();
        std::uniform_int_distribution<std::uint64_t> dist(0, ctx->coeff_modulus() / p - 1);
        std::uniform_int_distribution<std::uint64_t> rdist(0, p - 1);
        for (int i = 0; i < 300; ++i) {
            PadicPoint x, y;
            for (unsigned d = 0; d < f.dim(); ++d) {
                std::uint64_t base = rdist(rng);
                x.push_back(
                    ctx->from_integer(static_cast<std::int64_t>(base + p * dist(rng))));
                y.push_back(
                    ctx->from_integer(static_cast<std::int64_t>(base + p * dist(rng))));
            }
            auto [vin, vout] = contraction_witness(f, x, y);
            // valuations saturate at the working precision
            unsigned bound = std::min<unsigned>(
                {static_cast<unsigned>(p) * vin, vin + 1, ctx->precision()});
            CHECK(vout >= bound);
        }
    }
}

TEST_CASE("commuting square on random integral points") {
    std::mt19937_64 rng(3);
    auto ctx = PAdicContext::make(3, 1, 5);
    auto f = make_map(ctx, 2, {"X0^3 + 3*X1", "X1^3 + 3*X0*X1"});
    auto fbar = reduce_map(f);
    std::uniform_int_distribution<std::uint64_t> dist(0, ctx->coeff_modulus() - 1);
    for (int i = 0; i < 200; ++i) {
        PadicPoint x = {ctx->from_integer(static_cast<std::int64_t>(dist(rng))),
                        ctx->from_integer(static_cast<std::int64_t>(dist(rng)))};
        auto image = f.eval(x);
        ResiduePoint lhs = {reduce(image[0]), reduce(image[1])};
        ResiduePoint rhs = fbar.eval({reduce(x[0]), reduce(x[1])});
        CHECK(lhs == rhs);
    }
}

TEST_CASE("bijection between residue cycles and lifted points per degree") {
    auto base = PAdicContext::make(2, 1, 16);
    auto f = make_map(base, 1, {"X0^2 + 2*X0"});
    for (unsigned k = 1; k <= 4; ++k) {
        auto ctx = k == 1 ? base : PAdicContext::make(2, k, 16);
        auto fk = f.with_context(ctx);
        auto cycles = periodic_points_residue(reduce_map(fk), k, 1 << 20);
        std::set<std::vector<std::uint64_t>> residue_points;
        std::set<std::vector<std::uint64_t>> lifted_points;
        std::size_t residue_count = 0;
        for (const auto& c : cycles) {
            for (const auto& pt : c.points) {
                residue_points.insert(pt[0].coeffs());
                ++residue_count;
            }
            auto pp = lift_periodic(fk, c);
            PadicPoint cur = pp.coords;
            for (unsigned j = 0; j < pp.period; ++j) {
                lifted_points.insert(cur[0].coeffs());
                // reduce-of-lift is the identity on the cycle
                CHECK(reduce(cur[0]) == c.points[j][0]);
                cur = fk.eval(cur);
            }
        }
        CHECK(residue_points.size() == residue_count);  // cycles are disjoint
        CHECK(lifted_points.size() == residue_count);   // lifts are distinct
        CHECK(residue_points.size() == (1u << k));      // squaring is bijective mod 2
    }
}

TEST_CASE("uniqueness of the lift from any integral seed") {
    auto ctx = PAdicContext::make(2, 1, 12);
    auto f = make_map(ctx, 1, {"X0^2 + 2*X0"});
    // two different lifts of residue 1
    PadicPoint a = contract_cycle_lift(f, {ctx->from_integer(1)}, 1);
    PadicPoint b = contract_cycle_lift(f, {ctx->from_integer(1 + 2 * 37)}, 1);
    CHECK(a == b);

    auto ext = PAdicContext::make(2, 2, 10);
    auto sq = make_map(ext, 1, {"X0^2"});
    auto w = ext->residue_generator();
    PadicPoint c = contract_cycle_lift(sq, {lift(w)}, 2);
    PadicPoint d = contract_cycle_lift(sq, {lift(w) + ext->from_integer(2 * 5)}, 2);
    CHECK(c == d);
}

TEST_CASE("escape on the Laurent level for restricted maps") {
    // For x = (p^-v, ..., p^-v) the term-wise valuation of component i is
    // val(coeff) - v * total_degree; the leading G-term must dominate
    // strictly, putting the image norm strictly above the input norm.
    auto ctx2 = PAdicContext::make(2, 1, 8);
    auto ctx3 = PAdicContext::make(3, 1, 6);
    std::vector<PolyMap> maps;
    maps.push_back(make_map(ctx2, 1, {"X0^2 + 2*X0"}));
    maps.push_back(make_map(ctx2, 2, {"X0^2 + 2*X1", "X1^2 + 2*X0"}));
    maps.push_back(make_map(ctx3, 1, {"X0^3 + 3*X0"}));
    for (const auto& f : maps) {
        auto check = is_restricted_syntactic(f);
        REQUIRE(check.restricted);
        const std::uint64_t p = f.context()->prime();
        for (std::int64_t v = 1; v <= 4; ++v) {
            std::int64_t out_norm = std::numeric_limits<std::int64_t>::max();
            for (unsigned i = 0; i < f.dim(); ++i) {
                std::int64_t best = std::numeric_limits<std::int64_t>::max();
                int attained = 0;
                for (const auto& t : f.components()[i].terms()) {
                    std::int64_t deg = 0;
                    for (auto e : t.exps) deg += e;
                    std::int64_t tv = static_cast<std::int64_t>(val(t.coeff)) - v * deg;
                    if (tv < best) {
                        best = tv;
                        attained = 1;
                    } else if (tv == best) {
                        ++attained;
                    }
                }
                REQUIRE(attained == 1);  // unique minimum: the valuation is exact
                const auto& w = check.witness[i];
                std::int64_t qmax = static_cast<std::int64_t>(w.root_exponents.back());
                CHECK(best == -static_cast<std::int64_t>(p) * qmax * v);
                out_norm = std::min(out_norm, best);
            }
            CHECK(out_norm < -v);  // the image norm strictly grows
        }
    }
}

TEST_CASE("tilting reproduces the residue cycle in chi order") {
    auto ctx = PAdicContext::make(2, 2, 8);
    auto f = make_map(ctx, 1, {"X0^2"});
    auto fbar = reduce_map(f);
    auto cycles = periodic_points_residue(fbar, 4, 1 << 20);
    REQUIRE(!cycles.empty());
    for (const auto& c : cycles) {
        auto pp = lift_periodic(f, c);
        auto tilt = tilt_periodic(pp);
        // forward reproduction: the stored cycle starts at red(x)
        CHECK(tilt.points == c.points);
        // chi order (x, F^{n-1}x, F^{n-2}x, ...): each entry maps to the
        // previous one under the reduced map
        const unsigned n = tilt.period();
        for (unsigned i = 0; i + 1 < n; ++i) {
            const auto& chi_i = tilt.points[(n - i) % n];
            const auto& chi_next = tilt.points[(n - i - 1) % n];
            CHECK(fbar.eval(chi_next) == chi_i);
        }
    }

    // fixed point example: x = -1 for X0^2 + 2*X0 reduces to [1]
    auto ctx1 = PAdicContext::make(2, 1, 8);
    auto g = make_map(ctx1, 1, {"X0^2 + 2*X0"});
    ResidueCycle one{{{ctx1->residue_one()}}};
    auto tilt = tilt_periodic(lift_periodic(g, one));
    REQUIRE(tilt.period() == 1);
    CHECK(tilt.points[0][0] == ctx1->residue_one());
}

TEST_CASE("gauss_distance examples") {
    auto ctx = PAdicContext::make(2, 1, 8);
    VarietySpec x_axis(ctx, {parse_polynomial("X0", ctx, 1)});
    CHECK(gauss_distance({ctx->from_integer(-1)}, x_axis) == 0);
    CHECK(gauss_distance({ctx->zero()}, x_axis) == 8);
    VarietySpec shifted(ctx, {parse_polynomial("X0 + 1", ctx, 1)});
    CHECK(gauss_distance({ctx->from_integer(-1)}, shifted) == 8);
}

TEST_CASE("variety generators are normalized to Gauss norm 1") {
    auto ctx = PAdicContext::make(3, 1, 4);
    VarietySpec v(ctx, {parse_polynomial("3*X0 + 6", ctx, 1)});
    CHECK(v.generators()[0] == parse_polynomial("X0 + 2", ctx, 1));
    CHECK_THROWS_AS(VarietySpec(ctx, {parse_polynomial("X0 - X0", ctx, 1)}),
                    std::invalid_argument);
}

TEST_CASE("tate_voloch_scan on the squaring map") {
    auto ctx = PAdicContext::make(2, 1, 16);
    auto f = make_map(ctx, 1, {"X0^2"});
    VarietySpec v(ctx, {parse_polynomial("X0 - 1", ctx, 1)});
    auto report = tate_voloch_scan(f, v, {1, 2, 3}, 6, 1 << 22);
    REQUIRE(report.rows.size() == 3);
    REQUIRE(report.max_observed.has_value());
    CHECK(*report.max_observed == 0);
    for (const auto& row : report.rows) {
        CHECK(row.suspect == 0);
        CHECK(row.on_variety == 1);  // exactly the Teichmueller lift of 1
        for (unsigned d : row.finite_vals) CHECK(d == 0);
        CHECK(row.points == row.on_variety + row.finite_vals.size());
    }

    // fixed points of X0^2 + 2*X0: 0 on V = {X0}, -1 at distance 1
    auto g = make_map(ctx, 1, {"X0^2 + 2*X0"});
    VarietySpec axis(ctx, {parse_polynomial("X0", ctx, 1)});
    auto r2 = tate_voloch_scan(g, axis, {1}, 2, 1 << 20);
    REQUIRE(r2.rows.size() == 1);
    CHECK(r2.rows[0].on_variety == 1);
    CHECK(r2.rows[0].finite_vals == std::vector<unsigned>{0});

    // a variety containing every tested periodic point
    auto all1 = tate_voloch_scan(f, VarietySpec(ctx, {parse_polynomial("X0^2 - X0", ctx, 1)}),
                                 {1}, 2, 1 << 20);
    CHECK_FALSE(all1.max_observed.has_value());
    CHECK(all1.rows[0].finite_vals.empty());
}

TEST_CASE("manin_mumford_scan counts diagonal periodic points") {
    auto ctx = PAdicContext::make(2, 1, 16);
    auto f = make_map(ctx, 2, {"X0^2", "X1^2"});
    VarietySpec diag(ctx, {parse_polynomial("X0 - X1", ctx, 2)});
    auto report = manin_mumford_scan(f, diag, {1, 2, 3}, 1 << 22);
    REQUIRE(report.rows.size() == 3);
    for (const auto& row : report.rows) {
        CHECK(row.variety_points == (1ull << row.degree));
        CHECK(row.periodic_on_variety == (1ull << row.degree));
        CHECK(row.lifted_on_variety == (1ull << row.degree));
    }

    // independent oracle for k = 3: walk every diagonal point to check
    // periodicity with a plain visited set
    auto ctx3 = PAdicContext::make(2, 3, 16);
    auto f3 = f.with_context(ctx3);
    auto fbar3 = reduce_map(f3);
    std::size_t periodic_count = 0;
    for (std::uint64_t t = 0; t < 8; ++t) {
        ResiduePoint x = {ctx3->decode(t), ctx3->decode(t)};
        std::set<std::vector<std::uint64_t>> seen;
        ResiduePoint cur = x;
        while (true) {
            std::vector<std::uint64_t> key = {ctx3->encode(cur[0]), ctx3->encode(cur[1])};
            if (seen.count(key)) break;
            seen.insert(key);
            cur = fbar3.eval(cur);
        }
        // x is periodic iff the walk returns to x itself
        ResiduePoint probe = fbar3.eval(x);
        std::size_t steps = 1;
        while (!(probe == x) && steps <= seen.size() + 1) {
            probe = fbar3.eval(probe);
            ++steps;
        }
        if (probe == x) ++periodic_count;
    }
    CHECK(periodic_count == 8);

    // an empty reduced variety yields all-zero counts
    VarietySpec empty(ctx, {parse_polynomial("1", ctx, 2)});
    auto zero = manin_mumford_scan(f, empty, {1, 2}, 1 << 20);
    for (const auto& row : zero.rows) {
        CHECK(row.variety_points == 0);
        CHECK(row.periodic_on_variety == 0);
    }

    // non-invariant variety trips the pre-check: mod 2 this map acts as the
    // square of (X0^2, X1), which moves diagonal points of F_4 off the diagonal
    auto g = make_map(ctx, 2, {"X0^4", "X1^2"});
    CHECK_THROWS_AS(manin_mumford_scan(g, diag, {2}, 1 << 20), invariance_failure);
}

TEST_CASE("scan degree lists require rational coefficients") {
    auto ext = PAdicContext::make(2, 2, 8);
    auto f = make_map(ext, 1, {"X0^2"});
    VarietySpec v(ext, {parse_polynomial("X0 - 1", ext, 1)});
    CHECK_THROWS_AS(tate_voloch_scan(f, v, {1, 3}, 4, 1 << 20), std::invalid_argument);
    CHECK_NOTHROW(tate_voloch_scan(f, v, {2}, 4, 1 << 20));
}

TEST_CASE("budget violations surface as budget_exceeded") {
    auto base = PAdicContext::make(2, 1, 8);
    auto f = make_map(base, 1, {"X0^2"});
    auto big = f.with_context(PAdicContext::make(2, 8, 8));
    CHECK_THROWS_AS(periodic_points_residue(reduce_map(big), 2, 100), budget_exceeded);
}
