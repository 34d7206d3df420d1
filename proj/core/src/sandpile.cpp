#include "smoothpile/sandpile.hpp"

#include <algorithm>
#include <random>

namespace smoothpile {

namespace {

RelaxationOutcome relax_impl(const SandpileState& phi, const RelaxOptions& opts) {
    const Domain& dom = *phi.domain();
    RelaxationOutcome out;
    out.final = phi;
    out.odometer = IntegerField(phi.domain(), 0);
    out.scheduler = opts.scheduler;
    out.seed = opts.seed;
    out.budget = opts.budget ? opts.budget : default_budget(dom);

    IntegerField& f = out.final.field;
    std::vector<VertexId> active;
    std::vector<std::uint8_t> queued(static_cast<size_t>(dom.size()), 0);
    for (VertexId v : dom.interior_vertices()) {
        if (f[v] >= dom.threshold(v)) {
            active.push_back(v);
            queued[static_cast<size_t>(v)] = 1;
        }
    }

    std::mt19937_64 rng(opts.seed);
    size_t head = 0;

    auto enqueue = [&](VertexId u) {
        if (!queued[static_cast<size_t>(u)] && dom.is_interior(u) && f[u] >= dom.threshold(u)) {
            active.push_back(u);
            queued[static_cast<size_t>(u)] = 1;
        }
    };

    while (head < active.size()) {
        VertexId v;
        if (opts.scheduler == Scheduler::Fifo) {
            v = active[head++];
        } else {
            std::uniform_int_distribution<size_t> pick(head, active.size() - 1);
            std::swap(active[pick(rng)], active[head]);
            v = active[head++];
        }
        queued[static_cast<size_t>(v)] = 0;

        const Value tau = dom.threshold(v);
        while (f[v] >= tau) {
            // Batch all immediately legal topplings at v (FIFO); random order
            // topples one at a time to scramble the schedule.
            Value t = opts.scheduler == Scheduler::Fifo ? f[v] / tau : 1;
            const std::uint64_t left = out.budget - out.topplings;
            if (static_cast<std::uint64_t>(t) > left) t = static_cast<Value>(left);
            if (t == 0) {
                out.exhausted = true;
                return out;
            }
            f[v] -= t * tau;
            out.odometer[v] += t;
            out.topplings += static_cast<std::uint64_t>(t);
            for (VertexId u : dom.neighbors(v)) {
                f[u] += t;
                enqueue(u);
            }
            if (opts.scheduler == Scheduler::Random) break;
        }
        if (f[v] >= tau) enqueue(v);
    }
    return out;
}

WaveRecord wave_impl(const SandpileState& phi, VertexId source, const RelaxOptions& opts,
                     bool require_threshold) {
    const Domain& dom = *phi.domain();
    if (!dom.is_interior(source)) throw PreconditionError("wave: source must be interior");
    if (!is_stable(phi)) throw NotStableError("wave: state not stable");
    if (require_threshold && phi[source] != dom.threshold(source) - 1) {
        throw SourceNotAtThresholdError("wave: source must hold threshold-1 grains");
    }

    SandpileState toppled = topple(phi, source);
    RelaxationOutcome r = relax_impl(toppled, opts);
    if (r.exhausted) throw Error("wave: relaxation budget exhausted");

    WaveRecord rec;
    rec.source = source;
    rec.wave_odometer = std::move(r.odometer);
    rec.wave_odometer[source] += 1;
    rec.result = std::move(r.final);
    for (VertexId v = 0; v < dom.size(); ++v) {
        const Value h = rec.wave_odometer[v];
        if (h != 0 && h != 1) throw Error("wave: odometer left {0,1}");
    }
    return rec;
}

void require_physical(const SandpileState& phi) {
    for (VertexId v : phi.domain()->interior_vertices()) {
        if (phi[v] < 0) throw PreconditionError("state has negative grain counts");
    }
}

}  // namespace

bool is_stable(const SandpileState& phi) {
    const Domain& dom = *phi.domain();
    for (VertexId v : dom.interior_vertices()) {
        if (phi[v] >= dom.threshold(v)) return false;
    }
    return true;
}

SandpileState topple(SandpileState phi, VertexId v) {
    const Domain& dom = *phi.domain();
    if (!dom.is_interior(v)) throw BoundaryVertexError("topple: guard-band vertex");
    phi[v] -= dom.threshold(v);
    for (VertexId u : dom.neighbors(v)) phi[u] += 1;
    return phi;
}

bool can_topple(const SandpileState& phi, VertexId v) {
    const Domain& dom = *phi.domain();
    return dom.is_interior(v) && phi[v] >= dom.threshold(v);
}

std::uint64_t default_budget(const Domain& dom) {
    int max_tau = 1;
    for (VertexId v = 0; v < dom.size(); ++v) max_tau = std::max(max_tau, dom.threshold(v));
    return 64ull * static_cast<std::uint64_t>(dom.size()) * static_cast<std::uint64_t>(max_tau);
}

RelaxationOutcome relax(const SandpileState& phi, const RelaxOptions& opts) {
    require_physical(phi);
    return relax_impl(phi, opts);
}

bool check_relaxability_certificate(const SandpileState& phi, const IntegerField& cert) {
    for (VertexId v = 0; v < phi.domain()->size(); ++v) {
        if (cert[v] < 0) throw PreconditionError("certificate must be nonnegative");
    }
    const Domain& dom = *phi.domain();
    for (VertexId v : dom.interior_vertices()) {
        if (phi[v] + laplacian(cert, v) >= dom.threshold(v)) return false;
    }
    return true;
}

bool least_action_check(const SandpileState& phi, const IntegerField& cand) {
    const Domain& dom = *phi.domain();
    for (VertexId v = 0; v < dom.size(); ++v) {
        if (cand[v] < 0) throw PreconditionError("candidate must be nonnegative");
    }
    for (VertexId v : dom.interior_vertices()) {
        if (phi[v] + laplacian(cand, v) >= dom.threshold(v)) {
            throw PreconditionError("candidate does not stabilize the state");
        }
    }
    RelaxationOutcome r = relax(phi);
    if (r.exhausted) throw Error("least_action_check: relaxation budget exhausted");
    return pointwise_le(r.odometer, cand);
}

WaveRecord send_wave(const SandpileState& phi, VertexId source, const RelaxOptions& opts) {
    return wave_impl(phi, source, opts, /*require_threshold=*/true);
}

WaveRecord wave_unchecked(const SandpileState& phi, VertexId source, const RelaxOptions& opts) {
    return wave_impl(phi, source, opts, /*require_threshold=*/false);
}

std::vector<std::vector<VertexId>> territories(const SandpileState& phi) {
    if (!is_stable(phi)) throw NotStableError("territories: state not stable");
    const Domain& dom = *phi.domain();
    return connected_components(dom, [&](VertexId v) {
        return dom.is_interior(v) && phi[v] == dom.threshold(v) - 1;
    });
}

bool wave_source_independence_check(const SandpileState& phi, std::span<const VertexId> path) {
    if (path.empty()) throw PreconditionError("path must be nonempty");
    const Domain& dom = *phi.domain();
    for (size_t i = 0; i < path.size(); ++i) {
        if (phi[path[i]] != dom.threshold(path[i]) - 1) {
            throw PreconditionError("path vertex not at threshold-1");
        }
        if (i > 0) {
            const auto nb = dom.neighbors(path[i - 1]);
            if (std::find(nb.begin(), nb.end(), path[i]) == nb.end()) {
                throw PreconditionError("path vertices not adjacent");
            }
        }
    }
    if (path.size() == 1) return true;
    const WaveRecord a = send_wave(phi, path.front());
    const WaveRecord b = send_wave(phi, path.back());
    return a.wave_odometer == b.wave_odometer;
}

WaveDecomposition wave_decomposition_check(const SandpileState& phi, VertexId v,
                                           const RelaxOptions& opts) {
    if (!is_stable(phi)) throw NotStableError("wave decomposition: state not stable");
    const DomainPtr& dom = phi.domain();

    SandpileState seeded = phi;
    seeded[v] += 1;
    RelaxationOutcome r = relax(seeded, opts);
    if (r.exhausted) throw Error("wave decomposition: relaxation budget exhausted");

    WaveDecomposition out;
    out.waves = r.odometer[v];

    SandpileState cur = phi;
    IntegerField cumulative(dom, 0);
    for (Value k = 0; k < out.waves; ++k) {
        WaveRecord w = wave_unchecked(cur, v, opts);
        cumulative += w.wave_odometer;
        cur = std::move(w.result);
    }
    SandpileState rhs = cur;
    rhs[v] += 1;
    out.ok = (r.final == rhs) && (r.odometer == cumulative);
    return out;
}

bool wave_least_action_check(const SandpileState& phi, VertexId source, int n,
                             const IntegerField& cand, const RelaxOptions& opts) {
    const Domain& dom = *phi.domain();
    for (VertexId v = 0; v < dom.size(); ++v) {
        if (cand[v] < 0) throw PreconditionError("candidate must be nonnegative");
    }
    if (cand[source] < n) throw PreconditionError("candidate below wave count at source");
    for (VertexId v : dom.interior_vertices()) {
        if (phi[v] + laplacian(cand, v) < 0) {
            throw PreconditionError("candidate drives the state negative");
        }
    }

    SandpileState cur = phi;
    IntegerField cumulative(phi.domain(), 0);
    for (int k = 0; k < n; ++k) {
        WaveRecord w = wave_unchecked(cur, source, opts);
        cumulative += w.wave_odometer;
        cur = std::move(w.result);
    }
    return pointwise_le(cumulative, cand);
}

}  // namespace smoothpile
