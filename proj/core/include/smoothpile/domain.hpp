#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "smoothpile/errors.hpp"

namespace smoothpile {

using VertexId = std::int32_t;
using Value = std::int64_t;

/// Division rounding toward negative infinity.
constexpr Value floor_div(Value a, Value b) {
    Value q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
    return q;
}

struct Point {
    Value x = 0;
    Value y = 0;
    bool operator==(const Point&) const = default;
};

enum class DomainKind { Box, Cylinder, GeneralGraph };

struct BoxParams {
    Value x0, x1, y0, y1;
    int guard;
};

/// Quotient of the square grid by (x,y) ~ (x+period_x, y+period_y),
/// stored on representatives with x in [0, period_x), y in [y0, y1].
/// Wrap edges: the right neighbor of (period_x-1, y) is (0, y-period_y),
/// the left neighbor of (0, y) is (period_x-1, y+period_y).
struct CylinderParams {
    Value period_x, period_y;
    Value y0, y1;
    int guard;
};

class Domain;
using DomainPtr = std::shared_ptr<const Domain>;

/// A finite vertex set with symmetric neighbor structure and per-vertex
/// toppling thresholds. Vertices are either interior or guard band;
/// algorithms only evaluate Laplacians on the interior and treat guard
/// values as frozen (a finite window standing in for the infinite lattice).
class Domain {
public:
    /// Square-grid window [x0,x1]x[y0,y1]; vertices within `guard` of the
    /// window edge form the guard band.
    static DomainPtr box(Value x0, Value x1, Value y0, Value y1, int guard);

    /// Cylinder with period vector (period_x, period_y), period_x >= 2,
    /// rows y0..y1, guard bands of `guard` rows at top and bottom.
    /// Requires guard >= |period_y| so interior vertices keep degree 4.
    static DomainPtr cylinder(Value period_x, Value period_y, Value y0, Value y1, int guard);

    /// Arbitrary locally-finite graph with explicit thresholds. Adjacency
    /// must be symmetric, loop-free, and satisfy deg(v) <= threshold(v).
    static DomainPtr general(std::vector<std::vector<VertexId>> adjacency,
                             std::vector<int> thresholds,
                             std::vector<bool> interior,
                             std::vector<Point> coords = {});

    DomainKind kind() const { return kind_; }
    int size() const { return static_cast<int>(coords_.size()); }
    bool is_interior(VertexId v) const { return interior_[static_cast<size_t>(v)] != 0; }
    int threshold(VertexId v) const { return tau_[static_cast<size_t>(v)]; }
    Point coord(VertexId v) const { return coords_[static_cast<size_t>(v)]; }

    std::span<const VertexId> neighbors(VertexId v) const {
        auto b = static_cast<size_t>(adj_offsets_[static_cast<size_t>(v)]);
        auto e = static_cast<size_t>(adj_offsets_[static_cast<size_t>(v) + 1]);
        return {adj_.data() + b, e - b};
    }
    int degree(VertexId v) const { return static_cast<int>(neighbors(v).size()); }

    /// True when v has at least one guard-band neighbor.
    bool touches_guard(VertexId v) const;

    /// Reduce a plane point modulo the cylinder period (identity elsewhere).
    Point canonical(Point pt) const;
    bool contains(Point pt) const;
    /// Vertex at a plane point, or -1 when the point falls outside the window.
    VertexId vertex_at(Point pt) const;

    /// Squared Euclidean distance, minimized over lifts on cylinders.
    Value dist2(Point a, Point b) const;

    const std::vector<VertexId>& interior_vertices() const { return interior_list_; }

    const BoxParams* box_params() const { return kind_ == DomainKind::Box ? &box_ : nullptr; }
    const CylinderParams* cylinder_params() const {
        return kind_ == DomainKind::Cylinder ? &cyl_ : nullptr;
    }

    /// Header line used by the field dump format, e.g. "box -5 5 -5 5 2".
    std::string header() const;

    /// Structural equality: same kind and parameters. General graphs only
    /// compare equal to themselves.
    static bool compatible(const Domain& a, const Domain& b);

private:
    Domain() = default;
    void build_interior_list();

    DomainKind kind_ = DomainKind::Box;
    BoxParams box_{};
    CylinderParams cyl_{};

    std::vector<std::int32_t> adj_offsets_;
    std::vector<VertexId> adj_;
    std::vector<int> tau_;
    std::vector<std::uint8_t> interior_;
    std::vector<Point> coords_;
    std::vector<VertexId> interior_list_;
};

}  // namespace smoothpile
