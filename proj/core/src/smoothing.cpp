#include "smoothpile/smoothing.hpp"

#include <algorithm>
#include <random>

namespace smoothpile {

namespace {

/// Shrinking fixed point over the interior. Keeps per-vertex counts of
/// neighbors still in the set; a vertex leaves once
/// lap(v) + tau(v) > |neighbors in set|, which can cascade.
std::vector<VertexId> maximal_cut_set(const IntegerField& g, const SmoothOptions& opts) {
    const Domain& dom = *g.domain();
    const int n = dom.size();

    std::vector<Value> lap(static_cast<size_t>(n), 0);
    std::vector<std::uint8_t> in_set(static_cast<size_t>(n), 0);
    std::vector<int> cnt(static_cast<size_t>(n), 0);

    for (VertexId v : dom.interior_vertices()) {
        lap[static_cast<size_t>(v)] = laplacian(g, v);
        if (opts.check_input && lap[static_cast<size_t>(v)] > 0) {
            throw NotSuperharmonicError("smooth_once: input not superharmonic");
        }
        in_set[static_cast<size_t>(v)] = 1;
    }
    for (VertexId v : dom.interior_vertices()) {
        int c = 0;
        for (VertexId u : dom.neighbors(v)) c += in_set[static_cast<size_t>(u)];
        cnt[static_cast<size_t>(v)] = c;
    }

    auto violates = [&](VertexId v) {
        return lap[static_cast<size_t>(v)] + static_cast<Value>(dom.threshold(v)) >
               static_cast<Value>(cnt[static_cast<size_t>(v)]);
    };

    std::vector<VertexId> work;
    std::vector<std::uint8_t> queued(static_cast<size_t>(n), 0);
    for (VertexId v : dom.interior_vertices()) {
        if (violates(v)) {
            work.push_back(v);
            queued[static_cast<size_t>(v)] = 1;
        }
    }

    std::mt19937_64 rng(opts.seed);
    if (opts.order == SweepOrder::Randomized) {
        std::shuffle(work.begin(), work.end(), rng);
    }

    size_t head = 0;
    auto pop = [&]() -> VertexId {
        if (opts.order == SweepOrder::RowMajor) return work[head++];
        std::uniform_int_distribution<size_t> pick(head, work.size() - 1);
        std::swap(work[pick(rng)], work[head]);
        return work[head++];
    };

    while (head < work.size()) {
        const VertexId v = pop();
        queued[static_cast<size_t>(v)] = 0;
        if (!in_set[static_cast<size_t>(v)] || !violates(v)) continue;
        in_set[static_cast<size_t>(v)] = 0;
        for (VertexId u : dom.neighbors(v)) {
            if (!in_set[static_cast<size_t>(u)]) continue;
            --cnt[static_cast<size_t>(u)];
            if (!queued[static_cast<size_t>(u)] && violates(u)) {
                work.push_back(u);
                queued[static_cast<size_t>(u)] = 1;
            }
        }
    }

    std::vector<VertexId> out;
    for (VertexId v : dom.interior_vertices()) {
        if (in_set[static_cast<size_t>(v)]) out.push_back(v);
    }
    return out;
}

/// First changed vertex sitting next to the guard band outside the tolerated
/// sleeve around dev0, or nullopt.
std::optional<VertexId> find_guard_violation(const Domain& dom,
                                             const std::vector<VertexId>& changed,
                                             const std::vector<VertexId>& dev0,
                                             Value band_allowance) {
    for (VertexId v : changed) {
        if (!dom.touches_guard(v)) continue;
        if (band_allowance >= 0) {
            const Value d2 = min_dist2_to_set(dom, dom.coord(v), dev0);
            if (d2 >= 0 && d2 <= band_allowance * band_allowance) continue;
        }
        return v;
    }
    return std::nullopt;
}

SmoothingResult iterate_cuts(IntegerField g, std::vector<VertexId> dev0, int max_steps,
                             bool stop_on_fixpoint, int hard_cap, const SmoothOptions& opts) {
    SmoothingResult res;
    res.final = std::move(g);

    SmoothOptions step_opts = opts;
    for (int k = 0; k < max_steps; ++k) {
        SmoothStep step = smooth_once(res.final, step_opts);
        // The input was verified once; later iterates are superharmonic by
        // construction.
        step_opts.check_input = false;
        res.final = std::move(step.next);
        res.change_sets.push_back(step.changed);
        ++res.steps;

        if (!res.guard_violation) {
            res.guard_violation =
                find_guard_violation(*res.final.domain(), step.changed, dev0, opts.band_allowance);
            if (res.guard_violation && opts.strict) {
                const Point pt = res.final.domain()->coord(*res.guard_violation);
                throw WindowTooSmallError("smoothing changed a vertex next to the guard band at (" +
                                          std::to_string(pt.x) + "," + std::to_string(pt.y) + ")");
            }
        }

        if (step.changed.empty()) {
            res.stabilized = true;
            break;
        }
        if (stop_on_fixpoint && res.steps >= hard_cap) {
            throw IterationCapError("smoothing did not stabilize within " +
                                    std::to_string(hard_cap) + " steps (last change set: " +
                                    std::to_string(res.change_sets.back().size()) + " vertices)");
        }
    }
    return res;
}

}  // namespace

SmoothStep smooth_once(const IntegerField& g, const SmoothOptions& opts) {
    SmoothStep out{g, maximal_cut_set(g, opts)};
    for (VertexId v : out.changed) out.next[v] -= 1;
    return out;
}

SmoothingResult smooth_n(const PLMinFunction& F, const DomainPtr& dom, int n,
                         const SmoothOptions& opts) {
    if (n < 0) throw PreconditionError("smooth_n: n must be nonnegative");
    IntegerField g = eval_on(F, dom);
    std::vector<VertexId> dev0 = deviation_set(g);
    return iterate_cuts(std::move(g), std::move(dev0), n, /*stop_on_fixpoint=*/false, 0, opts);
}

SmoothingResult smooth_until_stable(const IntegerField& g0, std::vector<VertexId> dev0,
                                    int max_iters, const SmoothOptions& opts) {
    if (max_iters <= 0) throw PreconditionError("smooth_until_stable: max_iters must be positive");
    return iterate_cuts(g0, std::move(dev0), max_iters, /*stop_on_fixpoint=*/true, max_iters, opts);
}

SmoothingResult canonical_smoothing(const PLMinFunction& F, const DomainPtr& dom, int max_iters,
                                    const SmoothOptions& opts) {
    IntegerField g = eval_on(F, dom);
    std::vector<VertexId> dev0 = deviation_set(g);
    return smooth_until_stable(g, std::move(dev0), max_iters, opts);
}

IntegerField two_form_smoothing(const AffineForm& fa, const AffineForm& fb, const DomainPtr& dom,
                                int max_iters, const SmoothOptions& opts) {
    // min(fa, fb) = fb + min(fa - fb, 0); smoothing commutes with adding the
    // linear part back. reduce_edge also validates that fa - fb is primitive.
    (void)reduce_edge(fa.p, fa.q, fa.c, fb.p, fb.q, fb.c);
    const PLMinFunction reduced{{AffineForm{fa.p - fb.p, fa.q - fb.q, fa.c - fb.c},
                                 AffineForm{0, 0, 0}}};
    SmoothingResult inner = canonical_smoothing(reduced, dom, max_iters, opts);
    return shift_by_linear(inner.final, AffineForm{-fb.p, -fb.q, -fb.c});
}

IntegerField piecewise_smoothing_min(MeetingKind kind, const DirectionPair& dirs, const DomainPtr& dom,
                             int max_iters, const SmoothOptions& opts) {
    dirs.validate();
    const AffineForm zero{0, 0, 0};
    const AffineForm f1{dirs.p1, dirs.q1, 0};
    const AffineForm f2{dirs.p2, dirs.q2, dirs.c1};
    const AffineForm f3{dirs.p1 + dirs.p2, dirs.q1 + dirs.q2, dirs.c2};

    std::vector<std::pair<AffineForm, AffineForm>> pieces;
    if (kind == MeetingKind::Vertex) {
        pieces = {{f1, zero}, {f2, zero}, {f1, f2}};
    } else {
        pieces = {{f1, zero}, {f2, zero}, {f1, f3}, {f2, f3}};
    }

    IntegerField out;
    bool first = true;
    for (const auto& [fa, fb] : pieces) {
        IntegerField piece = two_form_smoothing(fa, fb, dom, max_iters, opts);
        if (first) {
            out = std::move(piece);
            first = false;
        } else {
            for (VertexId v = 0; v < dom->size(); ++v) out[v] = std::min(out[v], piece[v]);
        }
    }
    return out;
}

}  // namespace smoothpile
