#include "smoothpile/domain.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace smoothpile {

namespace {

Value sq(Value v) { return v * v; }

}  // namespace

void Domain::build_interior_list() {
    interior_list_.clear();
    for (VertexId v = 0; v < size(); ++v) {
        if (interior_[static_cast<size_t>(v)]) interior_list_.push_back(v);
    }
}

DomainPtr Domain::box(Value x0, Value x1, Value y0, Value y1, int guard) {
    if (x1 < x0 || y1 < y0) throw BadInputError("box: empty coordinate range");
    if (guard < 1) throw BadInputError("box: guard band must be at least 1");
    const Value w = x1 - x0 + 1;
    const Value h = y1 - y0 + 1;
    if (w <= 2 * guard || h <= 2 * guard) throw BadInputError("box: no interior left by guard band");

    auto d = std::shared_ptr<Domain>(new Domain());
    d->kind_ = DomainKind::Box;
    d->box_ = BoxParams{x0, x1, y0, y1, guard};

    const size_t n = static_cast<size_t>(w * h);
    d->coords_.reserve(n);
    d->tau_.assign(n, 4);
    d->interior_.assign(n, 0);
    d->adj_offsets_.assign(n + 1, 0);
    d->adj_.reserve(n * 4);

    for (Value y = y0; y <= y1; ++y) {
        for (Value x = x0; x <= x1; ++x) {
            d->coords_.push_back(Point{x, y});
        }
    }
    auto id = [&](Value x, Value y) -> VertexId {
        return static_cast<VertexId>((y - y0) * w + (x - x0));
    };
    for (Value y = y0; y <= y1; ++y) {
        for (Value x = x0; x <= x1; ++x) {
            const VertexId v = id(x, y);
            if (x + 1 <= x1) d->adj_.push_back(id(x + 1, y));
            if (x - 1 >= x0) d->adj_.push_back(id(x - 1, y));
            if (y + 1 <= y1) d->adj_.push_back(id(x, y + 1));
            if (y - 1 >= y0) d->adj_.push_back(id(x, y - 1));
            d->adj_offsets_[static_cast<size_t>(v) + 1] = static_cast<std::int32_t>(d->adj_.size());
            const bool inside = x >= x0 + guard && x <= x1 - guard && y >= y0 + guard && y <= y1 - guard;
            d->interior_[static_cast<size_t>(v)] = inside ? 1 : 0;
        }
    }
    d->build_interior_list();
    return d;
}

DomainPtr Domain::cylinder(Value period_x, Value period_y, Value y0, Value y1, int guard) {
    if (period_x < 2) throw BadInputError("cylinder: period_x must be at least 2");
    if (y1 < y0) throw BadInputError("cylinder: empty row range");
    const Value need = std::max<Value>(1, std::abs(period_y));
    if (guard < need) throw BadInputError("cylinder: guard must be >= max(1, |period_y|)");
    if (y1 - y0 + 1 <= 2 * static_cast<Value>(guard)) {
        throw BadInputError("cylinder: no interior left by guard bands");
    }

    auto d = std::shared_ptr<Domain>(new Domain());
    d->kind_ = DomainKind::Cylinder;
    d->cyl_ = CylinderParams{period_x, period_y, y0, y1, guard};

    const Value a = period_x;
    const Value b = period_y;
    const Value h = y1 - y0 + 1;
    const size_t n = static_cast<size_t>(a * h);
    d->coords_.reserve(n);
    d->tau_.assign(n, 4);
    d->interior_.assign(n, 0);
    d->adj_offsets_.assign(n + 1, 0);
    d->adj_.reserve(n * 4);

    for (Value y = y0; y <= y1; ++y) {
        for (Value x = 0; x < a; ++x) d->coords_.push_back(Point{x, y});
    }
    auto id = [&](Value x, Value y) -> VertexId {
        return static_cast<VertexId>((y - y0) * a + x);
    };
    auto push_if = [&](Value x, Value y) {
        if (y >= y0 && y <= y1) d->adj_.push_back(id(x, y));
    };
    for (Value y = y0; y <= y1; ++y) {
        for (Value x = 0; x < a; ++x) {
            const VertexId v = id(x, y);
            if (x + 1 < a) push_if(x + 1, y); else push_if(0, y - b);
            if (x - 1 >= 0) push_if(x - 1, y); else push_if(a - 1, y + b);
            push_if(x, y + 1);
            push_if(x, y - 1);
            d->adj_offsets_[static_cast<size_t>(v) + 1] = static_cast<std::int32_t>(d->adj_.size());
            const bool inside = y >= y0 + guard && y <= y1 - guard;
            d->interior_[static_cast<size_t>(v)] = inside ? 1 : 0;
        }
    }
    d->build_interior_list();
    return d;
}

DomainPtr Domain::general(std::vector<std::vector<VertexId>> adjacency,
                          std::vector<int> thresholds,
                          std::vector<bool> interior,
                          std::vector<Point> coords) {
    const size_t n = adjacency.size();
    if (thresholds.size() != n || interior.size() != n) {
        throw BadInputError("general: mismatched vector sizes");
    }
    if (!coords.empty() && coords.size() != n) {
        throw BadInputError("general: mismatched coords size");
    }
    for (size_t v = 0; v < n; ++v) {
        if (thresholds[v] <= 0) throw BadInputError("general: thresholds must be positive");
        if (adjacency[v].size() > static_cast<size_t>(thresholds[v])) {
            throw BadInputError("general: degree exceeds threshold");
        }
        for (VertexId u : adjacency[v]) {
            if (u < 0 || static_cast<size_t>(u) >= n) throw BadInputError("general: neighbor out of range");
            if (static_cast<size_t>(u) == v) throw BadInputError("general: self loop");
            const auto& back = adjacency[static_cast<size_t>(u)];
            if (std::find(back.begin(), back.end(), static_cast<VertexId>(v)) == back.end()) {
                throw BadInputError("general: adjacency not symmetric");
            }
        }
    }

    auto d = std::shared_ptr<Domain>(new Domain());
    d->kind_ = DomainKind::GeneralGraph;
    d->tau_ = std::move(thresholds);
    d->interior_.resize(n);
    for (size_t v = 0; v < n; ++v) d->interior_[v] = interior[v] ? 1 : 0;
    if (coords.empty()) {
        d->coords_.resize(n);
        for (size_t v = 0; v < n; ++v) d->coords_[v] = Point{static_cast<Value>(v), 0};
    } else {
        d->coords_ = std::move(coords);
    }
    d->adj_offsets_.assign(n + 1, 0);
    for (size_t v = 0; v < n; ++v) {
        for (VertexId u : adjacency[v]) d->adj_.push_back(u);
        d->adj_offsets_[v + 1] = static_cast<std::int32_t>(d->adj_.size());
    }
    d->build_interior_list();
    return d;
}

bool Domain::touches_guard(VertexId v) const {
    for (VertexId u : neighbors(v)) {
        if (!is_interior(u)) return true;
    }
    return false;
}

Point Domain::canonical(Point pt) const {
    if (kind_ != DomainKind::Cylinder) return pt;
    const Value k = floor_div(pt.x, cyl_.period_x);
    return Point{pt.x - k * cyl_.period_x, pt.y - k * cyl_.period_y};
}

bool Domain::contains(Point pt) const {
    return vertex_at(pt) >= 0;
}

VertexId Domain::vertex_at(Point pt) const {
    switch (kind_) {
        case DomainKind::Box: {
            if (pt.x < box_.x0 || pt.x > box_.x1 || pt.y < box_.y0 || pt.y > box_.y1) return -1;
            const Value w = box_.x1 - box_.x0 + 1;
            return static_cast<VertexId>((pt.y - box_.y0) * w + (pt.x - box_.x0));
        }
        case DomainKind::Cylinder: {
            const Point c = canonical(pt);
            if (c.y < cyl_.y0 || c.y > cyl_.y1) return -1;
            return static_cast<VertexId>((c.y - cyl_.y0) * cyl_.period_x + c.x);
        }
        case DomainKind::GeneralGraph: {
            if (pt.y != 0 || pt.x < 0 || pt.x >= size()) return -1;
            return static_cast<VertexId>(pt.x);
        }
    }
    return -1;
}

Value Domain::dist2(Point p, Point q) const {
    const Value dx = p.x - q.x;
    const Value dy = p.y - q.y;
    if (kind_ != DomainKind::Cylinder) return sq(dx) + sq(dy);
    // Minimize |(dx,dy) + k*(a,b)|^2 over integer lifts k; the quadratic in k
    // is minimized near k* = -(a dx + b dy)/(a^2 + b^2).
    const Value a = cyl_.period_x;
    const Value b = cyl_.period_y;
    const double kstar = -static_cast<double>(a * dx + b * dy) / static_cast<double>(a * a + b * b);
    const Value k0 = static_cast<Value>(std::llround(kstar));
    Value best = sq(dx + k0 * a) + sq(dy + k0 * b);
    for (Value k = k0 - 2; k <= k0 + 2; ++k) {
        best = std::min(best, sq(dx + k * a) + sq(dy + k * b));
    }
    return best;
}

std::string Domain::header() const {
    std::ostringstream os;
    switch (kind_) {
        case DomainKind::Box:
            os << "box " << box_.x0 << ' ' << box_.x1 << ' ' << box_.y0 << ' ' << box_.y1 << ' '
               << box_.guard;
            break;
        case DomainKind::Cylinder:
            os << "cylinder " << cyl_.period_x << ' ' << cyl_.period_y << ' ' << cyl_.y0 << ' '
               << cyl_.y1 << ' ' << cyl_.guard;
            break;
        case DomainKind::GeneralGraph:
            os << "graph " << size();
            break;
    }
    return os.str();
}

bool Domain::compatible(const Domain& a, const Domain& b) {
    if (&a == &b) return true;
    if (a.kind_ != b.kind_ || a.size() != b.size()) return false;
    switch (a.kind_) {
        case DomainKind::Box:
            return a.box_.x0 == b.box_.x0 && a.box_.x1 == b.box_.x1 && a.box_.y0 == b.box_.y0 &&
                   a.box_.y1 == b.box_.y1 && a.box_.guard == b.box_.guard;
        case DomainKind::Cylinder:
            return a.cyl_.period_x == b.cyl_.period_x && a.cyl_.period_y == b.cyl_.period_y &&
                   a.cyl_.y0 == b.cyl_.y0 && a.cyl_.y1 == b.cyl_.y1 && a.cyl_.guard == b.cyl_.guard;
        case DomainKind::GeneralGraph:
            return false;
    }
    return false;
}

}  // namespace smoothpile
