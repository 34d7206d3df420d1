#include "smoothpile/plmin.hpp"

#include <algorithm>
#include <cstdlib>
#include <limits>

namespace smoothpile {

PLMinFunction::PLMinFunction(std::vector<AffineForm> forms) : forms_(std::move(forms)) {
    if (forms_.empty()) throw PreconditionError("PLMinFunction: needs at least one form");
    for (size_t i = 0; i < forms_.size(); ++i) {
        for (size_t j = i + 1; j < forms_.size(); ++j) {
            if (forms_[i] == forms_[j]) throw PreconditionError("PLMinFunction: duplicate form");
        }
    }
}

Value PLMinFunction::operator()(Point pt) const {
    Value best = forms_[0](pt);
    for (size_t i = 1; i < forms_.size(); ++i) best = std::min(best, forms_[i](pt));
    return best;
}

int PLMinFunction::active_form(Point pt) const {
    int best = 0;
    Value bv = forms_[0](pt);
    for (size_t i = 1; i < forms_.size(); ++i) {
        const Value v = forms_[i](pt);
        if (v < bv) {
            bv = v;
            best = static_cast<int>(i);
        }
    }
    return best;
}

PLMinFunction PLMinFunction::plus(const AffineForm& form) const {
    std::vector<AffineForm> out = forms_;
    for (auto& f : out) {
        f.p += form.p;
        f.q += form.q;
        f.c += form.c;
    }
    return PLMinFunction(std::move(out));
}

PLMinFunction PLMinFunction::with_bumped_constant(int idx, Value delta) const {
    std::vector<AffineForm> out = forms_;
    out.at(static_cast<size_t>(idx)).c += delta;
    return PLMinFunction(std::move(out));
}

PLMinFunction edge_function(Value p, Value q) {
    return PLMinFunction{{AffineForm{0, 0, 0}, AffineForm{p, q, 0}}};
}

void DirectionPair::validate() const {
    if (p1 * q2 - p2 * q1 != 1) {
        throw PreconditionError("DirectionPair: p1*q2 - p2*q1 must be 1");
    }
}

PLMinFunction vertex_function(const DirectionPair& d) {
    d.validate();
    return PLMinFunction{{AffineForm{0, 0, 0}, AffineForm{d.p1, d.q1, 0}, AffineForm{d.p2, d.q2, d.c1}}};
}

PLMinFunction node_function(const DirectionPair& d) {
    d.validate();
    return PLMinFunction{{AffineForm{0, 0, 0},
                          AffineForm{d.p1, d.q1, 0},
                          AffineForm{d.p2, d.q2, d.c1},
                          AffineForm{d.p1 + d.p2, d.q1 + d.q2, d.c2}}};
}

IntegerField eval_on(const PLMinFunction& F, const DomainPtr& dom) {
    if (const auto* c = dom->cylinder_params()) {
        for (const AffineForm& f : F.forms()) {
            if (f.p * c->period_x + f.q * c->period_y != 0) {
                throw PreconditionError("eval_on: form does not descend to the cylinder");
            }
        }
    }
    IntegerField out(dom);
    for (VertexId v = 0; v < dom->size(); ++v) out[v] = F(dom->coord(v));
    return out;
}

std::vector<VertexId> deviation_set(const IntegerField& f) {
    std::vector<VertexId> out;
    for (VertexId v : f.domain()->interior_vertices()) {
        if (laplacian(f, v) != 0) out.push_back(v);
    }
    return out;
}

std::vector<VertexId> deviation_set(const PLMinFunction& F, const DomainPtr& dom) {
    return deviation_set(eval_on(F, dom));
}

std::vector<int> redundant_forms(const PLMinFunction& F, const DomainPtr& dom) {
    std::vector<std::uint8_t> achieves(F.forms().size(), 0);
    for (VertexId v = 0; v < dom->size(); ++v) {
        const Point pt = dom->coord(v);
        const Value m = F(pt);
        for (size_t i = 0; i < F.forms().size(); ++i) {
            if (F.forms()[i](pt) == m) achieves[i] = 1;
        }
    }
    std::vector<int> out;
    for (size_t i = 0; i < achieves.size(); ++i) {
        if (!achieves[i]) out.push_back(static_cast<int>(i));
    }
    return out;
}

bool is_holeless(const PLMinFunction& F, const DomainPtr& dom, Value C) {
    if (C <= 0) throw PreconditionError("is_holeless: C must be positive");
    const IntegerField f = eval_on(F, dom);
    const std::vector<VertexId> dev = deviation_set(f);
    std::vector<std::uint8_t> in_dev(static_cast<size_t>(dom->size()), 0);
    for (VertexId v : dev) in_dev[static_cast<size_t>(v)] = 1;

    const auto comps = connected_components(
        *dom, [&](VertexId v) { return dom->is_interior(v) && !in_dev[static_cast<size_t>(v)]; });
    for (const auto& comp : comps) {
        bool escapes = false;
        for (VertexId v : comp) {
            if (dom->touches_guard(v)) {
                escapes = true;
                break;
            }
        }
        if (escapes) continue;
        for (VertexId v : comp) {
            const Value d2 = min_dist2_to_set(*dom, dom->coord(v), dev);
            if (d2 < 0 || d2 > C * C) return false;
        }
    }
    return true;
}

bool is_e_increasing(const IntegerField& f, Point e, Value C) {
    if (e.x == 0 && e.y == 0) throw PreconditionError("is_e_increasing: e must be nonzero");
    const Domain& dom = *f.domain();
    const std::vector<VertexId> dev = deviation_set(f);

    for (VertexId v = 0; v < dom.size(); ++v) {
        const Point pt = dom.coord(v);
        const Point fwd{pt.x + e.x, pt.y + e.y};
        if (f.has(fwd) && f[v] > f.at(fwd)) return false;  // condition (b)
    }
    for (VertexId v = 0; v < dom.size(); ++v) {
        const Point pt = dom.coord(v);
        const Point back{pt.x - e.x, pt.y - e.y};
        if (!f.has(back) || f.at(back) != f[v]) continue;
        // Walk v, v-e, v-2e, ... to the first strict decrease. The step cap
        // covers wrap-around wandering on cylinders.
        Point prev = pt;
        int steps = 0;
        for (Point w = back;; w = Point{w.x - e.x, w.y - e.y}) {
            if (!f.has(w) || ++steps > dom.size() + 2) break;  // left the window before decreasing
            if (f.at(w) < f.at(prev)) {
                const Value d2 = min_dist2_to_set(dom, dom.canonical(w), dev);
                if (d2 < 0 || d2 > C * C) return false;  // condition (c)
                break;
            }
            prev = w;
        }
    }
    return true;
}

IntegerField shift_by_linear(const IntegerField& f, const AffineForm& form) {
    IntegerField out = f;
    const Domain& dom = *f.domain();
    for (VertexId v = 0; v < dom.size(); ++v) out[v] -= form(dom.coord(v));
    return out;
}

Bezout extended_gcd(Value a, Value b) {
    Value old_r = a, r = b;
    Value old_u = 1, u = 0;
    Value old_v = 0, v = 1;
    while (r != 0) {
        const Value qt = old_r / r;
        Value t = old_r - qt * r;
        old_r = r;
        r = t;
        t = old_u - qt * u;
        old_u = u;
        u = t;
        t = old_v - qt * v;
        old_v = v;
        v = t;
    }
    if (old_r < 0) {
        old_r = -old_r;
        old_u = -old_u;
        old_v = -old_v;
    }
    return Bezout{old_r, old_u, old_v};
}

EdgeReduction reduce_edge(Value p, Value q, Value a, Value pp, Value qp, Value ap) {
    const Value P = p - pp;
    const Value Q = q - qp;
    const Value A = a - ap;
    const Bezout bz = extended_gcd(P, Q);
    if (bz.g != 1) throw NotCoprimeError("reduce_edge: gcd(p-p', q-q') must be 1");
    return EdgeReduction{P, Q, Point{A * bz.u, A * bz.v}};
}

}  // namespace smoothpile
