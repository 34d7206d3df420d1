#pragma once

#include <cstdint>
#include <span>

#include "smoothpile/field.hpp"

namespace smoothpile {

/// Grain counts per vertex. Guard-band vertices act as sinks: they absorb
/// grains and never topple, standing in for dissipation at infinity.
struct SandpileState {
    IntegerField field;

    SandpileState() = default;
    explicit SandpileState(IntegerField f) : field(std::move(f)) {}
    SandpileState(DomainPtr dom, Value fill) : field(std::move(dom), fill) {}

    const DomainPtr& domain() const { return field.domain(); }
    Value operator[](VertexId v) const { return field[v]; }
    Value& operator[](VertexId v) { return field[v]; }
    bool operator==(const SandpileState& o) const { return field == o.field; }
};

/// value < threshold on every interior vertex.
bool is_stable(const SandpileState& phi);

/// Unconditional toppling at an interior vertex: v loses tau(v) grains, each
/// neighbor gains one. Legality is the caller's concern.
SandpileState topple(SandpileState phi, VertexId v);

bool can_topple(const SandpileState& phi, VertexId v);

enum class Scheduler { Fifo, Random };

struct RelaxOptions {
    Scheduler scheduler = Scheduler::Fifo;
    std::uint64_t seed = 0;
    std::uint64_t budget = 0;  // 0: 64 * |V| * max threshold
};

struct RelaxationOutcome {
    SandpileState final;
    IntegerField odometer;        // per-vertex toppling counts, >= 0
    std::uint64_t topplings = 0;  // total
    bool exhausted = false;       // budget ran out before stabilization
    Scheduler scheduler = Scheduler::Fifo;
    std::uint64_t seed = 0;
    std::uint64_t budget = 0;
};

std::uint64_t default_budget(const Domain& dom);

/// Perform legal topplings until stable or the budget is exhausted.
/// Requires a physical state (>= 0 on the interior).
RelaxationOutcome relax(const SandpileState& phi, const RelaxOptions& opts = {});

/// Witness check: Fcert >= 0 and phi + lap(Fcert) < tau on the interior
/// certify that phi relaxes to a stable state.
bool check_relaxability_certificate(const SandpileState& phi, const IntegerField& cert);

/// Requires Fcand >= 0 with phi + lap(Fcand) stable; verifies the odometer of
/// relax(phi) is a pointwise lower bound of Fcand. Always true: a false
/// return indicates an implementation bug.
bool least_action_check(const SandpileState& phi, const IntegerField& cand);

struct WaveRecord {
    IntegerField wave_odometer;  // values in {0, 1}; 1 at the source
    SandpileState result;
    VertexId source = -1;
};

/// Topple the source, then relax. Requires a stable state with the source at
/// threshold-1 (a neighbor at threshold-1 additionally keeps the result
/// nonnegative, which is not enforced here).
WaveRecord send_wave(const SandpileState& phi, VertexId source, const RelaxOptions& opts = {});

/// Wave without the source-at-threshold check; used by wave decomposition
/// where intermediate sources sit below threshold-1.
WaveRecord wave_unchecked(const SandpileState& phi, VertexId source, const RelaxOptions& opts = {});

/// Connected components of the interior vertices holding threshold-1 grains.
std::vector<std::vector<VertexId>> territories(const SandpileState& phi);

/// Waves sent from the two ends of a path inside one territory have equal
/// toppling functions.
bool wave_source_independence_check(const SandpileState& phi, std::span<const VertexId> path);

struct WaveDecomposition {
    Value waves = 0;  // odometer of relax(phi + delta(v)) at v
    bool ok = false;  // relaxation state and odometer both match the wave sum
};

/// Relaxing phi + delta(v) equals adding the grain and sending `waves` waves
/// from v; the relaxation odometer is the sum of the wave odometers.
WaveDecomposition wave_decomposition_check(const SandpileState& phi, VertexId v,
                                           const RelaxOptions& opts = {});

/// Requires cand >= 0, cand(source) >= n, and phi + lap(cand) >= 0; verifies
/// the cumulative odometer of n waves from the source is bounded by cand.
bool wave_least_action_check(const SandpileState& phi, VertexId source, int n,
                             const IntegerField& cand, const RelaxOptions& opts = {});

}  // namespace smoothpile
