#include "smoothpile/field.hpp"

#include <algorithm>
#include <cstdlib>
#include <queue>

namespace smoothpile {

void IntegerField::check_compatible(const IntegerField& o) const {
    if (!dom_ || !o.dom_ || !Domain::compatible(*dom_, *o.dom_)) {
        throw PreconditionError("fields live on different domains");
    }
}

bool IntegerField::operator==(const IntegerField& o) const {
    check_compatible(o);
    return v_ == o.v_;
}

IntegerField& IntegerField::operator+=(const IntegerField& o) {
    check_compatible(o);
    for (size_t i = 0; i < v_.size(); ++i) v_[i] += o.v_[i];
    return *this;
}

IntegerField& IntegerField::operator-=(const IntegerField& o) {
    check_compatible(o);
    for (size_t i = 0; i < v_.size(); ++i) v_[i] -= o.v_[i];
    return *this;
}

Value laplacian(const IntegerField& f, VertexId v) {
    const Domain& d = *f.domain();
    if (!d.is_interior(v)) {
        throw BoundaryVertexError("laplacian: guard-band vertex");
    }
    Value s = -static_cast<Value>(d.threshold(v)) * f[v];
    for (VertexId u : d.neighbors(v)) s += f[u];
    return s;
}

IntegerField laplacian_field(const IntegerField& f) {
    IntegerField out(f.domain(), 0);
    for (VertexId v : f.domain()->interior_vertices()) out[v] = laplacian(f, v);
    return out;
}

bool is_superharmonic(const IntegerField& f, std::span<const VertexId> region) {
    const Domain& d = *f.domain();
    for (VertexId v : region) {
        if (!d.is_interior(v)) throw PreconditionError("is_superharmonic: region not interior");
        if (laplacian(f, v) > 0) return false;
    }
    return true;
}

bool is_superharmonic(const IntegerField& f) {
    return is_superharmonic(f, f.domain()->interior_vertices());
}

GreenIdentity green_identity_check(const IntegerField& f, std::span<const VertexId> region) {
    const Domain& d = *f.domain();
    std::vector<std::uint8_t> in_region(static_cast<size_t>(d.size()), 0);
    for (VertexId v : region) in_region[static_cast<size_t>(v)] = 1;

    // Inner rim: region vertices with a neighbor outside the region.
    std::vector<std::uint8_t> rim(static_cast<size_t>(d.size()), 0);
    for (VertexId v : region) {
        for (VertexId u : d.neighbors(v)) {
            if (!in_region[static_cast<size_t>(u)]) {
                rim[static_cast<size_t>(v)] = 1;
                break;
            }
        }
    }

    GreenIdentity out;
    for (VertexId v : region) {
        if (rim[static_cast<size_t>(v)]) continue;
        if (!d.is_interior(v)) {
            throw RegionTouchesGuardBandError("green identity: region core reaches guard band");
        }
        out.lhs += laplacian(f, v);
    }
    for (VertexId v : region) {
        if (!rim[static_cast<size_t>(v)]) continue;
        for (VertexId u : d.neighbors(v)) {
            if (in_region[static_cast<size_t>(u)] && !rim[static_cast<size_t>(u)]) {
                out.rhs += f[v] - f[u];
            }
        }
    }
    return out;
}

std::vector<std::vector<VertexId>> connected_components(
    const Domain& dom, const std::function<bool(VertexId)>& pred) {
    std::vector<std::uint8_t> seen(static_cast<size_t>(dom.size()), 0);
    std::vector<std::vector<VertexId>> comps;
    for (VertexId s = 0; s < dom.size(); ++s) {
        if (seen[static_cast<size_t>(s)] || !pred(s)) continue;
        std::vector<VertexId> comp;
        std::queue<VertexId> q;
        q.push(s);
        seen[static_cast<size_t>(s)] = 1;
        while (!q.empty()) {
            const VertexId v = q.front();
            q.pop();
            comp.push_back(v);
            for (VertexId u : dom.neighbors(v)) {
                if (!seen[static_cast<size_t>(u)] && pred(u)) {
                    seen[static_cast<size_t>(u)] = 1;
                    q.push(u);
                }
            }
        }
        std::sort(comp.begin(), comp.end());
        comps.push_back(std::move(comp));
    }
    return comps;
}

Value min_dist2_to_set(const Domain& dom, Point pt, std::span<const VertexId> set) {
    Value best = -1;
    for (VertexId s : set) {
        const Value d2 = dom.dist2(pt, dom.coord(s));
        if (best < 0 || d2 < best) best = d2;
    }
    return best;
}

Value max_abs_diff(const IntegerField& f, const IntegerField& g) {
    Value best = 0;
    for (int i = 0; i < f.size(); ++i) {
        best = std::max(best, std::abs(f[static_cast<VertexId>(i)] - g[static_cast<VertexId>(i)]));
    }
    return best;
}

bool pointwise_le(const IntegerField& f, const IntegerField& g) {
    for (int i = 0; i < f.size(); ++i) {
        if (f[static_cast<VertexId>(i)] > g[static_cast<VertexId>(i)]) return false;
    }
    return true;
}

}  // namespace smoothpile
