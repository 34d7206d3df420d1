#pragma once

#include <functional>
#include <span>
#include <vector>

#include "smoothpile/domain.hpp"

namespace smoothpile {

/// A total map from domain vertices to integers. Arithmetic and comparisons
/// are only defined between fields over the same (structurally equal) domain.
class IntegerField {
public:
    IntegerField() = default;
    explicit IntegerField(DomainPtr dom, Value fill = 0)
        : dom_(std::move(dom)), v_(static_cast<size_t>(dom_->size()), fill) {}

    const DomainPtr& domain() const { return dom_; }
    int size() const { return static_cast<int>(v_.size()); }

    Value operator[](VertexId v) const { return v_[static_cast<size_t>(v)]; }
    Value& operator[](VertexId v) { return v_[static_cast<size_t>(v)]; }

    /// Value at a plane point (lift-aware on cylinders).
    Value at(Point pt) const {
        const VertexId v = dom_->vertex_at(pt);
        if (v < 0) throw BadInputError("field: point outside domain");
        return v_[static_cast<size_t>(v)];
    }
    bool has(Point pt) const { return dom_->vertex_at(pt) >= 0; }

    const std::vector<Value>& values() const { return v_; }
    std::vector<Value>& values() { return v_; }

    bool operator==(const IntegerField& o) const;

    IntegerField& operator+=(const IntegerField& o);
    IntegerField& operator-=(const IntegerField& o);
    friend IntegerField operator+(IntegerField a, const IntegerField& b) { return a += b; }
    friend IntegerField operator-(IntegerField a, const IntegerField& b) { return a -= b; }

private:
    void check_compatible(const IntegerField& o) const;

    DomainPtr dom_;
    std::vector<Value> v_;
};

/// Discrete Laplacian -tau(v) f(v) + sum of neighbor values; interior only.
Value laplacian(const IntegerField& f, VertexId v);

/// Laplacian on every interior vertex, zero on the guard band.
IntegerField laplacian_field(const IntegerField& f);

/// True iff the Laplacian is <= 0 on every vertex of the region
/// (region must consist of interior vertices).
bool is_superharmonic(const IntegerField& f, std::span<const VertexId> region);

/// Superharmonic on the whole interior.
bool is_superharmonic(const IntegerField& f);

/// Both sides of the summation-by-parts identity over a finite region A:
/// lhs = sum of Laplacians over A minus its inner rim, rhs = sum of
/// differences across the rim. The two sides are computed independently
/// and agree whenever every vertex of A \ dA has degree == threshold.
struct GreenIdentity {
    Value lhs = 0;
    Value rhs = 0;
    bool equal() const { return lhs == rhs; }
};
GreenIdentity green_identity_check(const IntegerField& f, std::span<const VertexId> region);

/// Connected components (domain adjacency) of the vertices satisfying pred.
std::vector<std::vector<VertexId>> connected_components(
    const Domain& dom, const std::function<bool(VertexId)>& pred);

/// Smallest squared distance from pt to any vertex of `set` (-1 when empty).
Value min_dist2_to_set(const Domain& dom, Point pt, std::span<const VertexId> set);

/// Largest |f - g| over all vertices.
Value max_abs_diff(const IntegerField& f, const IntegerField& g);

/// f <= g pointwise.
bool pointwise_le(const IntegerField& f, const IntegerField& g);

}  // namespace smoothpile
