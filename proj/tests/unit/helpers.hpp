#pragma once

#include <random>

#include "smoothpile/oracle.hpp"
#include "smoothpile/patterns.hpp"

namespace testutil {

using namespace smoothpile;

inline PLMinFunction random_plmin(std::mt19937_64& rng, int max_forms = 4, Value slope = 3,
                                  Value offset = 6) {
    std::uniform_int_distribution<int> nf(1, max_forms);
    std::uniform_int_distribution<Value> ps(-slope, slope);
    std::uniform_int_distribution<Value> cs(-offset, offset);
    const int n = nf(rng);
    std::vector<AffineForm> forms;
    while (static_cast<int>(forms.size()) < n) {
        const AffineForm f{ps(rng), ps(rng), cs(rng)};
        if (std::find(forms.begin(), forms.end(), f) == forms.end()) forms.push_back(f);
    }
    return PLMinFunction(forms);
}

/// Superharmonic by construction: a min of affine forms, occasionally cut once.
inline IntegerField random_superharmonic(std::mt19937_64& rng, const DomainPtr& dom) {
    IntegerField f = eval_on(random_plmin(rng), dom);
    if (rng() % 2 == 0) f = smooth_once(f).next;
    return f;
}

inline SandpileState random_stable_state(std::mt19937_64& rng, const DomainPtr& dom) {
    SandpileState st(dom, 3);
    std::uniform_int_distribution<Value> grains(0, 3);
    for (VertexId v : dom->interior_vertices()) st[v] = grains(rng);
    return st;
}

inline SandpileState random_state(std::mt19937_64& rng, const DomainPtr& dom, Value hi) {
    SandpileState st(dom, 0);
    std::uniform_int_distribution<Value> grains(0, hi);
    for (VertexId v : dom->interior_vertices()) st[v] = grains(rng);
    return st;
}

/// True when the (2r+1)-square patch of `needle` around `at` occurs anywhere
/// in `hay` (exact values, interior-only positions).
inline bool patch_occurs(const SandpileState& needle, Point at, Value r, const SandpileState& hay) {
    const Domain& nd = *needle.domain();
    const Domain& hd = *hay.domain();
    std::vector<Value> patch;
    for (Value dy = -r; dy <= r; ++dy) {
        for (Value dx = -r; dx <= r; ++dx) {
            const VertexId v = nd.vertex_at(Point{at.x + dx, at.y + dy});
            if (v < 0) return false;
            patch.push_back(needle[v]);
        }
    }
    for (VertexId c : hd.interior_vertices()) {
        const Point ct = hd.coord(c);
        bool all = true;
        size_t i = 0;
        for (Value dy = -r; dy <= r && all; ++dy) {
            for (Value dx = -r; dx <= r && all; ++dx, ++i) {
                const VertexId v = hd.vertex_at(Point{ct.x + dx, ct.y + dy});
                if (v < 0 || !hd.is_interior(v) || hay[v] != patch[i]) all = false;
            }
        }
        if (all) return true;
    }
    return false;
}

}  // namespace testutil
