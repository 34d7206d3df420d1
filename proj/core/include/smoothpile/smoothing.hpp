#pragma once

#include <cstdint>
#include <optional>

#include "smoothpile/plmin.hpp"

namespace smoothpile {

enum class SweepOrder { RowMajor, Randomized };

struct SmoothOptions {
    /// Throw WindowTooSmallError as soon as a changed vertex sits next to the
    /// guard band (outside the tolerated sleeve, see band_allowance).
    bool strict = true;

    /// Changes next to the guard band are tolerated when they lie within this
    /// Euclidean distance of the starting deviation set. Use -1 to flag every
    /// band-adjacent change. Boxes cut the deviation rays of vertex/node
    /// functions, so their builds run with a positive allowance.
    Value band_allowance = -1;

    SweepOrder order = SweepOrder::RowMajor;
    std::uint64_t seed = 0;

    /// Verify superharmonicity of inputs (cheap at desk scale).
    bool check_input = true;
};

/// Result of applying one minimal 1-step cut.
struct SmoothStep {
    IntegerField next;
    std::vector<VertexId> changed;  // sorted vertex ids
};

/// Drop the value by one on the unique maximal interior set that keeps the
/// field superharmonic; guard values stay frozen. Computed as a shrinking
/// fixed point: start from all interior vertices and delete any v whose
/// deletion constraint lap(v) + tau(v) - |neighbors in set| <= 0 fails until
/// none does. The deletion order does not affect the result.
SmoothStep smooth_once(const IntegerField& g, const SmoothOptions& opts = {});

struct SmoothingResult {
    IntegerField final;
    int steps = 0;
    std::vector<std::vector<VertexId>> change_sets;
    bool stabilized = false;
    std::optional<VertexId> guard_violation;
};

/// n successive 1-step cuts starting from the evaluation of F. Stops early
/// once a step changes nothing (the remaining steps are no-ops).
SmoothingResult smooth_n(const PLMinFunction& F, const DomainPtr& dom, int n,
                         const SmoothOptions& opts = {});

/// Iterate 1-step cuts from an explicit starting field until the change set
/// is empty. dev0 anchors the band_allowance test; pass the starting field's
/// deviation set. Throws IterationCapError when max_iters is exhausted.
SmoothingResult smooth_until_stable(const IntegerField& g0, std::vector<VertexId> dev0,
                                    int max_iters, const SmoothOptions& opts = {});

/// Iterate until the fixed point: the pointwise-minimal superharmonic
/// function agreeing with F near infinity (here: at the frozen guard band).
SmoothingResult canonical_smoothing(const PLMinFunction& F, const DomainPtr& dom, int max_iters,
                                    const SmoothOptions& opts = {});

/// Stabilized smoothing of min(fa, fb): reduce to a pure edge by subtracting
/// fb (the difference slope must be primitive), smooth, and shift back.
IntegerField two_form_smoothing(const AffineForm& fa, const AffineForm& fb, const DomainPtr& dom,
                                int max_iters, const SmoothOptions& opts = {});

enum class MeetingKind { Vertex, Node };

/// Pointwise minimum of the stabilized smoothings of the two-form pieces of a
/// vertex (three pieces) or node (four pieces) function. Agrees with the
/// plain vertex/node function away from its deviation rays and smooths to the
/// same fixed point.
IntegerField piecewise_smoothing_min(MeetingKind kind, const DirectionPair& dirs, const DomainPtr& dom,
                             int max_iters, const SmoothOptions& opts = {});

}  // namespace smoothpile
