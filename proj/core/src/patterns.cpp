#include "smoothpile/patterns.hpp"

#include <algorithm>
#include <cstdlib>
#include <numeric>

namespace smoothpile {

namespace {

Value iabs(Value v) { return v < 0 ? -v : v; }

/// Vertices at least `margin` (Chebyshev) inside the interior region.
bool deep_interior(const Domain& dom, Point pt, Value margin) {
    if (const auto* b = dom.box_params()) {
        return pt.x >= b->x0 + b->guard + margin && pt.x <= b->x1 - b->guard - margin &&
               pt.y >= b->y0 + b->guard + margin && pt.y <= b->y1 - b->guard - margin;
    }
    if (const auto* c = dom.cylinder_params()) {
        return pt.y >= c->y0 + c->guard + margin && pt.y <= c->y1 - c->guard - margin;
    }
    return dom.is_interior(dom.vertex_at(pt));
}

/// A(v) == B(coord(v) + shift) over the deep interior. False when the region
/// is empty or a shifted point leaves the window.
bool states_match_shifted(const SandpileState& A, const SandpileState& B, Point shift,
                          Value margin) {
    const Domain& dom = *A.domain();
    bool compared = false;
    for (VertexId v : dom.interior_vertices()) {
        const Point pt = dom.coord(v);
        if (!deep_interior(dom, pt, margin)) continue;
        const VertexId u = dom.vertex_at(Point{pt.x + shift.x, pt.y + shift.y});
        if (u < 0) return false;
        compared = true;
        if (A[v] != B[u]) return false;
    }
    return compared;
}

/// Topmost interior vertex whose surrounding (2*clearance+1)-square holds
/// only threes on interior vertices.
VertexId find_wave_source(const SandpileState& st, Value clearance) {
    const Domain& dom = *st.domain();
    const auto* cp = dom.cylinder_params();
    if (!cp) throw PreconditionError("wave source search needs a cylinder window");
    const Value ytop = cp->y1 - cp->guard;
    const Value ybot = cp->y0 + cp->guard;
    for (Value y = ytop - clearance; y >= ybot + clearance; --y) {
        for (Value x = 0; x < cp->period_x; ++x) {
            bool clean = true;
            for (Value dy = -clearance; dy <= clearance && clean; ++dy) {
                for (Value dx = -clearance; dx <= clearance && clean; ++dx) {
                    const VertexId u = dom.vertex_at(Point{x + dx, y + dy});
                    if (u < 0 || (dom.is_interior(u) && st[u] != 3)) clean = false;
                }
            }
            if (clean) return dom.vertex_at(Point{x, y});
        }
    }
    throw NoValidSourceError("no all-3 neighborhood found for a wave source");
}

int default_cap(Value p, Value q, Value height) {
    const Value cap = 10 * (p * p + q * q) * std::max<Value>(height, 16);
    return static_cast<int>(std::min<Value>(cap, 1'000'000));
}

}  // namespace

SandpileState state_from_theta(const IntegerField& theta) {
    const DomainPtr& dom = theta.domain();
    IntegerField s(dom, 3);
    for (VertexId v : dom->interior_vertices()) {
        const Value d = laplacian(theta, v);
        if (d < -3 || d > 0) {
            throw Error("state_from_theta: Laplacian " + std::to_string(d) +
                        " outside [-3, 0]; smoothing not stabilized?");
        }
        s[v] = 3 + d;
    }
    return SandpileState(std::move(s));
}

PatternState pattern_from(const PLMinFunction& F, const DomainPtr& dom, int max_iters,
                          const SmoothOptions& opts) {
    SmoothingResult res = canonical_smoothing(F, dom, max_iters, opts);
    PatternState ps;
    ps.theta = res.final;
    ps.state = state_from_theta(ps.theta);
    ps.kind = "custom";
    ps.steps = res.steps;
    return ps;
}

PatternState build_soliton(const SolitonSpec& spec) {
    Value p = spec.p, q = spec.q;
    if (p == 0 && q == 0) throw PreconditionError("soliton: direction must be nonzero");
    if (std::gcd(iabs(p), iabs(q)) != 1) throw PreconditionError("soliton: direction must be primitive");
    if (p < 0 || (p == 0 && q < 0)) {
        p = -p;
        q = -q;
    }

    const AffineForm normal{-q, p, 0};  // min(0, -q x + p y) travels along (p,q)

    if (p == 0) {
        // Vertical soliton: the smoothing is the function itself, a box does.
        const Value w = std::max<Value>(spec.height / 2, 16);
        const DomainPtr dom = Domain::box(-w, w, -w, w, 2);
        SmoothingResult res = canonical_smoothing(
            PLMinFunction{{AffineForm{0, 0, 0}, normal}}, dom,
            spec.max_iters ? spec.max_iters : 64, SmoothOptions{});
        PatternState ps;
        ps.theta = res.final;
        ps.state = state_from_theta(ps.theta);
        ps.kind = "soliton";
        ps.p = p;
        ps.q = q;
        ps.fold = 1;
        ps.steps = res.steps;
        return ps;
    }

    // Wind enough direction periods for a legal cylinder: width >= 2 and no
    // double wrap edges at width 2 with zero twist.
    const int fold = p >= 2 ? 1 : (q != 0 ? 2 : 3);
    const Value a = fold * p;
    const Value b = fold * q;

    Value h = spec.height ? spec.height : 24 * (iabs(p) + iabs(q)) + 48;
    for (int attempt = 0;; ++attempt) {
        const int guard = static_cast<int>(iabs(b)) + 4;
        const Value half = h / 2;
        const DomainPtr dom = Domain::cylinder(a, b, -half, half, guard);
        const int cap = spec.max_iters ? spec.max_iters : default_cap(p, q, h);
        try {
            SmoothingResult res =
                canonical_smoothing(PLMinFunction{{AffineForm{0, 0, 0}, normal}}, dom, cap,
                                    SmoothOptions{});
            PatternState ps;
            ps.theta = res.final;
            ps.state = state_from_theta(ps.theta);
            ps.kind = "soliton";
            ps.p = p;
            ps.q = q;
            ps.fold = fold;
            ps.steps = res.steps;
            return ps;
        } catch (const WindowTooSmallError&) {
            if (attempt >= 3) throw;
            h *= 2;  // grow-and-retry
        }
    }
}

namespace {

PatternState build_meeting(const DirectionPair& dirs, Value radius, int max_iters, bool node) {
    dirs.validate();
    // Tolerate cut deviation rays at the band within a sleeve scaled by the
    // coarsest slope difference.
    Value span = std::max(iabs(dirs.p1) + iabs(dirs.q1), iabs(dirs.p2) + iabs(dirs.q2));
    span = std::max(span, iabs(dirs.p1 - dirs.p2) + iabs(dirs.q1 - dirs.q2));
    if (node) span = std::max(span, iabs(dirs.p1 + dirs.p2) + iabs(dirs.q1 + dirs.q2));
    const Value allowance = 2 + 2 * span;

    Value r = radius ? radius : 48;
    for (int attempt = 0;; ++attempt) {
        const int guard = 6;
        const DomainPtr dom = Domain::box(-r, r, -r, r, guard);
        const PLMinFunction F = node ? node_function(dirs) : vertex_function(dirs);
        const int cap = max_iters ? max_iters : default_cap(span, span, r);
        SmoothOptions opts;
        opts.band_allowance = allowance;
        try {
            SmoothingResult res = canonical_smoothing(F, dom, cap, opts);
            PatternState ps;
            ps.theta = res.final;
            ps.state = state_from_theta(ps.theta);
            ps.kind = node ? "node" : "triad";
            ps.dirs = dirs;
            ps.steps = res.steps;
            return ps;
        } catch (const WindowTooSmallError&) {
            if (attempt >= 2) throw;
            r *= 2;
        }
    }
}

}  // namespace

PatternState build_triad(const DirectionPair& dirs, Value radius, int max_iters) {
    return build_meeting(dirs, radius, max_iters, /*node=*/false);
}

PatternState build_node(const DirectionPair& dirs, Value radius, int max_iters) {
    return build_meeting(dirs, radius, max_iters, /*node=*/true);
}

Value laplacian_mass_check(const PatternState& ps) {
    if (ps.kind != "soliton") throw PreconditionError("mass check: soliton patterns only");
    Value total = 0;
    for (VertexId v : ps.theta.domain()->interior_vertices()) total -= laplacian(ps.theta, v);
    if (ps.fold > 1 && total % ps.fold != 0) {
        throw Error("mass check: total mass not divisible by the winding count");
    }
    return total / ps.fold;
}

Point reduce_mod_direction(Point s, Value p, Value q) {
    Value gx = p, gy = q;
    if (gy < 0 || (gy == 0 && gx < 0)) {
        gx = -gx;
        gy = -gy;
    }
    if (gx == 0 && gy == 0) return s;
    if (gy > 0) {
        const Value t = floor_div(s.y, gy);
        return Point{s.x - t * gx, s.y - t * gy};
    }
    const Value t = floor_div(s.x, gx);
    return Point{s.x - t * gx, s.y};
}

MovabilityReport verify_movable(const PatternState& ps) {
    const DomainPtr& dom = ps.state.domain();
    const auto* cp = dom->cylinder_params();
    if (ps.kind != "soliton" || !cp) {
        throw PreconditionError("verify_movable: soliton on a cylinder required");
    }

    const VertexId src = find_wave_source(ps.state, 4);
    const WaveRecord wave = send_wave(ps.state, src);

    const Value sy_range = iabs(cp->period_y) + iabs(ps.q) + 4;
    const Value margin = sy_range + iabs(cp->period_y) + 4;

    if (states_match_shifted(wave.result, ps.state, Point{0, 0}, margin)) {
        return MovabilityReport{Point{0, 0}, true, true};
    }

    std::vector<Point> reps;
    for (Value sy = -sy_range; sy <= sy_range; ++sy) {
        for (Value sx = 0; sx < cp->period_x; ++sx) {
            if (!states_match_shifted(wave.result, ps.state, Point{sx, sy}, margin)) continue;
            const Point rep = reduce_mod_direction(Point{sx, sy}, ps.p, ps.q);
            if (std::find(reps.begin(), reps.end(), rep) == reps.end()) reps.push_back(rep);
        }
    }
    if (reps.size() != 1) return MovabilityReport{Point{0, 0}, false, false};
    const Point rep = reps.front();
    const bool ok = rep.x * ps.q - ps.p * rep.y == 1;
    return MovabilityReport{rep, ok, false};
}

IteratedWaveReport verify_movable_iterated(const PatternState& ps, int waves) {
    MovabilityReport first = verify_movable(ps);
    IteratedWaveReport out;
    out.shift = first.shift;
    out.waves = waves;
    if (!first.ok || first.degenerate) return out;

    const auto* cp = ps.state.domain()->cylinder_params();
    SandpileState cur = ps.state;
    for (int k = 0; k < waves; ++k) {
        const VertexId src = find_wave_source(cur, 4);
        cur = send_wave(cur, src).result;
    }
    const Point total{first.shift.x * waves, first.shift.y * waves};
    const Value margin =
        iabs(cp->period_y) + waves * (iabs(first.shift.y) + 2) + 8;
    out.ok = states_match_shifted(cur, ps.state, total, margin);
    return out;
}

bool verify_wave_coefficient_shift(const PLMinFunction& F, const DomainPtr& dom, Point source,
                                   int max_iters, const SmoothOptions& opts, Value margin) {
    SmoothingResult base = canonical_smoothing(F, dom, max_iters, opts);
    const SandpileState phi = state_from_theta(base.final);

    const VertexId v = dom->vertex_at(source);
    if (v < 0 || !dom->is_interior(v)) throw PreconditionError("source outside the interior");
    const std::vector<VertexId> dev = deviation_set(base.final);
    const Value d2 = min_dist2_to_set(*dom, dom->coord(v), dev);
    if (d2 >= 0 && d2 <= 16) throw PreconditionError("source too close to the deviation set");

    const int active = F.active_form(source);
    for (size_t j = 0; j < F.forms().size(); ++j) {
        if (static_cast<int>(j) != active && F.forms()[j](source) == F(source)) {
            throw PreconditionError("source must lie strictly inside one linear region");
        }
    }

    const WaveRecord wave = send_wave(phi, v);

    SmoothingResult bumped = canonical_smoothing(F.with_bumped_constant(active, 1), dom,
                                                 max_iters, opts);
    const SandpileState expected = state_from_theta(bumped.final);
    return states_match_shifted(wave.result, expected, Point{0, 0}, margin);
}

ClassifyResult classify_line_shaped(const SandpileState& phi, Value p, Value q, int max_iters) {
    const DomainPtr& dom = phi.domain();
    const auto* cp = dom->cylinder_params();
    if (!cp) throw PreconditionError("classify: cylinder windows only");
    if (p == 0 && q == 0) throw PreconditionError("classify: direction must be nonzero");

    const Value g = std::gcd(iabs(p), iabs(q));
    Value pp = p / g, qq = q / g;
    if (pp < 0 || (pp == 0 && qq < 0)) {
        pp = -pp;
        qq = -qq;
    }
    if (-qq * cp->period_x + pp * cp->period_y != 0) {
        throw PreconditionError("classify: direction does not descend to this cylinder");
    }

    std::vector<VertexId> strip;
    for (VertexId v : dom->interior_vertices()) {
        if (phi[v] != 3) strip.push_back(v);
    }
    if (strip.empty()) return ClassifyResult{LineVerdict::NotLineShaped, Point{0, 0}};

    const int cap = max_iters ? max_iters
                              : default_cap(pp, qq, cp->y1 - cp->y0 + 1);
    SmoothingResult ref = canonical_smoothing(
        PLMinFunction{{AffineForm{0, 0, 0}, AffineForm{-qq, pp, 0}}}, dom, cap, SmoothOptions{});
    const SandpileState ref_state = state_from_theta(ref.final);

    std::vector<VertexId> ref_strip;
    for (VertexId v : dom->interior_vertices()) {
        if (ref_state[v] != 3) ref_strip.push_back(v);
    }

    auto yspan = [&](const std::vector<VertexId>& vs) {
        Value lo = dom->coord(vs.front()).y, hi = lo;
        for (VertexId v : vs) {
            lo = std::min(lo, dom->coord(v).y);
            hi = std::max(hi, dom->coord(v).y);
        }
        return std::pair<Value, Value>{lo, hi};
    };
    const auto [slo, shi] = yspan(strip);
    const auto [rlo, rhi] = yspan(ref_strip);

    for (Value oy = slo - rhi - 1; oy <= shi - rlo + 1; ++oy) {
        for (Value ox = 0; ox < cp->period_x; ++ox) {
            // phi(v) == ref(coord(v) - o)
            const Value margin = iabs(cp->period_y) + iabs(oy) + 2;
            if (slo < cp->y0 + cp->guard + margin || shi > cp->y1 - cp->guard - margin) continue;
            if (!states_match_shifted(phi, ref_state, Point{-ox, -oy}, margin)) continue;
            return ClassifyResult{LineVerdict::IsSoliton,
                                  reduce_mod_direction(Point{ox, oy}, pp, qq)};
        }
    }
    return ClassifyResult{LineVerdict::NotMovable, Point{0, 0}};
}

}  // namespace smoothpile
