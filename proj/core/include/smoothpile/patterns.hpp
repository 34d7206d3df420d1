#pragma once

#include <string>

#include "smoothpile/sandpile.hpp"
#include "smoothpile/smoothing.hpp"

namespace smoothpile {

/// A soliton travels along a primitive direction (p,q); the natural window
/// is a cylinder whose period is a multiple of (p,q).
struct SolitonSpec {
    Value p = 1;
    Value q = 0;
    Value height = 0;  // cylinder rows; 0 picks a default from (p,q)
    int max_iters = 0;  // smoothing cap; 0 picks a default
};

/// A built pattern: the stabilized smoothing and the state 3 + lap(theta).
struct PatternState {
    SandpileState state;
    IntegerField theta;
    std::string kind;  // "soliton" | "triad" | "node"
    Value p = 0, q = 0;
    int fold = 1;  // how many direction periods the cylinder winds
    DirectionPair dirs;
    int steps = 0;  // cuts until the smoothing stabilized
};

/// State 3 + lap(theta) on the interior, 3 on the guard band. Validates the
/// sand range 0..3 (the stabilized smoothing has Laplacian in [-3, 0]).
SandpileState state_from_theta(const IntegerField& theta);

/// Stabilized smoothing of an arbitrary min-of-forms function on a given
/// window, packaged with its state.
PatternState pattern_from(const PLMinFunction& F, const DomainPtr& dom, int max_iters,
                          const SmoothOptions& opts = {});

/// Soliton of direction (p,q), gcd 1: the stabilized smoothing of
/// min(0, -q x + p y) on a cylinder winding (p,q). Directions with p = 0
/// fall back to a box window (their smoothing is the function itself).
PatternState build_soliton(const SolitonSpec& spec);

/// Three solitons meeting at a point: 3 + lap of the stabilized smoothing of
/// min(0, p1 x + q1 y, p2 x + q2 y + c1) on a box window.
PatternState build_triad(const DirectionPair& dirs, Value radius = 0, int max_iters = 0);

/// Four solitons meeting along offsets c1, c2.
PatternState build_node(const DirectionPair& dirs, Value radius = 0, int max_iters = 0);

/// Per-direction-period Laplacian mass of the soliton profile:
/// sum of -lap(theta) over the cylinder interior divided by the winding
/// count. Equals p^2 + q^2.
Value laplacian_mass_check(const PatternState& ps);

/// Reduce a translation modulo the direction lattice Z*(p,q); the canonical
/// representative has y in [0, |q|) (x in [0, |p|) when q = 0).
Point reduce_mod_direction(Point s, Value p, Value q);

struct MovabilityReport {
    Point shift;             // canonical representative of the detected shift
    bool ok = false;         // shift satisfies shift.x * q - p * shift.y == 1
    bool degenerate = false; // wave left the state unchanged (background)
};

/// Send one wave from a source in the all-3 region above the strip and detect
/// the translation matching the result against the original state.
MovabilityReport verify_movable(const PatternState& ps);

struct IteratedWaveReport {
    Point shift;      // per-wave canonical shift
    int waves = 0;
    bool ok = false;  // after k waves the state is the original shifted k times
};

/// Iterate `waves` waves and compare against the k-fold shifted original.
IteratedWaveReport verify_movable_iterated(const PatternState& ps, int waves);

/// Sending a wave from a vertex deep inside a linear region of F raises that
/// form's constant by one: the wave result equals 3 + lap(theta of the bumped
/// function) away from the guard band. `margin` rows/columns next to the
/// band are excluded from the comparison.
bool verify_wave_coefficient_shift(const PLMinFunction& F, const DomainPtr& dom, Point source,
                                   int max_iters, const SmoothOptions& opts, Value margin);

enum class LineVerdict { IsSoliton, NotMovable, NotLineShaped };

struct ClassifyResult {
    LineVerdict verdict = LineVerdict::NotLineShaped;
    Point offset;  // canonical translation from the reference soliton
};

/// Compare a (p,q)-periodic line-shaped state on a cylinder against the
/// built soliton of the primitive direction (p,q)/gcd.
ClassifyResult classify_line_shaped(const SandpileState& phi, Value p, Value q, int max_iters = 0);

}  // namespace smoothpile
