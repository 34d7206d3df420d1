#include "smoothpile/oracle.hpp"

#include <algorithm>

namespace smoothpile {
namespace oracle {

IntegerField brute_min_superharmonic_step(const IntegerField& g,
                                          std::span<const VertexId> candidates,
                                          const OracleBudget& budget) {
    const Domain& dom = *g.domain();
    const int k = static_cast<int>(candidates.size());
    if (k > budget.max_vertices) {
        throw TooLargeError("oracle: " + std::to_string(k) + " candidates exceed the budget of " +
                            std::to_string(budget.max_vertices));
    }
    for (VertexId v : candidates) {
        if (!dom.is_interior(v)) throw PreconditionError("oracle: candidates must be interior");
    }
    if (!is_superharmonic(g)) throw NotSuperharmonicError("oracle: input not superharmonic");

    // Vertices whose Laplacian a cut could change: candidates and neighbors.
    std::vector<int> cand_index(static_cast<size_t>(dom.size()), -1);
    for (int i = 0; i < k; ++i) cand_index[static_cast<size_t>(candidates[i])] = i;
    std::vector<VertexId> affected;
    {
        std::vector<std::uint8_t> mark(static_cast<size_t>(dom.size()), 0);
        auto add = [&](VertexId v) {
            if (dom.is_interior(v) && !mark[static_cast<size_t>(v)]) {
                mark[static_cast<size_t>(v)] = 1;
                affected.push_back(v);
            }
        };
        for (VertexId v : candidates) {
            add(v);
            for (VertexId u : dom.neighbors(v)) add(u);
        }
    }

    // Literal evaluation of lap(g - chi_A) at v for the subset encoded by mask.
    auto lap_cut = [&](VertexId v, std::uint64_t mask) -> Value {
        auto cut = [&](VertexId w) -> Value {
            const int i = cand_index[static_cast<size_t>(w)];
            return (i >= 0 && (mask >> i) & 1u) ? 1 : 0;
        };
        Value s = -static_cast<Value>(dom.threshold(v)) * (g[v] - cut(v));
        for (VertexId u : dom.neighbors(v)) s += g[u] - cut(u);
        return s;
    };

    IntegerField best = g;
    if (k == 0) return best;

    std::uint64_t kept_union = 0;
    const std::uint64_t total = 1ull << k;
    for (std::uint64_t mask = 1; mask < total; ++mask) {
        if ((mask | kept_union) == kept_union) continue;  // subset of a known-feasible union
        bool feasible = true;
        for (VertexId v : affected) {
            if (lap_cut(v, mask) > 0) {
                feasible = false;
                break;
            }
        }
        if (!feasible) continue;
        kept_union |= mask;
        for (int i = 0; i < k; ++i) {
            if ((mask >> i) & 1u) {
                const VertexId v = candidates[i];
                best[v] = std::min(best[v], g[v] - 1);
            }
        }
    }
    return best;
}

RelaxationOutcome brute_relax(const SandpileState& phi, const OracleBudget& budget) {
    const Domain& dom = *phi.domain();
    RelaxationOutcome out;
    out.final = phi;
    out.odometer = IntegerField(phi.domain(), 0);
    out.budget = budget.max_steps ? budget.max_steps : default_budget(dom);

    IntegerField& f = out.final.field;
    for (;;) {
        VertexId next = -1;
        for (VertexId v : dom.interior_vertices()) {
            if (f[v] >= dom.threshold(v)) {
                next = v;
                break;
            }
        }
        if (next < 0) break;
        if (out.topplings + 1 > out.budget) {
            out.exhausted = true;
            break;
        }
        f[next] -= dom.threshold(next);
        for (VertexId u : dom.neighbors(next)) f[u] += 1;
        out.odometer[next] += 1;
        out.topplings += 1;
    }
    return out;
}

bool slicing_decomposition_check(const IntegerField& F, const IntegerField& G) {
    if (!is_superharmonic(F) || !is_superharmonic(G)) {
        throw PreconditionError("slicing: both fields must be superharmonic");
    }
    const DomainPtr& dom = F.domain();
    IntegerField H = F - G;
    Value m = 0;
    for (VertexId v = 0; v < dom->size(); ++v) {
        if (H[v] < 0) throw PreconditionError("slicing: F - G must be nonnegative");
        m = std::max(m, H[v]);
    }
    if (m == 0) return true;

    std::vector<IntegerField> slices;
    for (Value k = 1; k <= m; ++k) {
        IntegerField s(dom, 0);
        for (VertexId v = 0; v < dom->size(); ++v) s[v] = H[v] >= k ? 1 : 0;
        slices.push_back(std::move(s));
    }

    IntegerField sum(dom, 0);
    for (const auto& s : slices) sum += s;
    if (!(sum == H)) return false;

    // Nested supports: supp chi(H>=k+1) inside supp chi(H>=k).
    for (size_t i = 0; i + 1 < slices.size(); ++i) {
        if (!pointwise_le(slices[i + 1], slices[i])) return false;
    }

    // Peel from the top slice down; every partial must stay superharmonic.
    IntegerField cur = F;
    for (Value k = m; k >= 1; --k) {
        cur -= slices[static_cast<size_t>(k - 1)];
        if (!is_superharmonic(cur)) return false;
    }
    return cur == G;
}

}  // namespace oracle
}  // namespace smoothpile
