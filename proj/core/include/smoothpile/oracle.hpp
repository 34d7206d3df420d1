#pragma once

#include "smoothpile/sandpile.hpp"

namespace smoothpile {
namespace oracle {

struct OracleBudget {
    int max_vertices = 40;       // refuse subset enumeration above this
    std::uint64_t max_steps = 0;  // relaxation budget; 0 picks the default
};

/// Exhaustive reference for one smoothing step: enumerate subsets A of the
/// candidate vertices, keep those for which g - chi_A stays superharmonic
/// (checked by literal Laplacian evaluation), and return the pointwise
/// minimum of the kept fields. Masks contained in the union found so far are
/// skipped; feasible sets are closed under union, so nothing is lost.
IntegerField brute_min_superharmonic_step(const IntegerField& g,
                                          std::span<const VertexId> candidates,
                                          const OracleBudget& budget = {});

/// Reference relaxation: repeatedly topple the smallest-id unstable vertex,
/// one toppling at a time.
RelaxationOutcome brute_relax(const SandpileState& phi, const OracleBudget& budget = {});

/// Level-set decomposition of H = F - G (both superharmonic, H >= 0 and
/// bounded): slices chi(H >= k) must sum to H, every partial difference of F
/// must stay superharmonic, and slice supports must be nested.
bool slicing_decomposition_check(const IntegerField& F, const IntegerField& G);

}  // namespace oracle
}  // namespace smoothpile
