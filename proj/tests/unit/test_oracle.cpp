#include <doctest.h>

#include "helpers.hpp"

using namespace smoothpile;
using namespace smoothpile::oracle;
using testutil::random_plmin;

TEST_CASE("brute minimal cut basics") {
    const DomainPtr dom = Domain::box(-5, 5, -5, 5, 1);
    const PLMinFunction corner{{AffineForm{1, 0, 0}, AffineForm{0, 1, 0}, AffineForm{0, 0, 0}}};
    const IntegerField g = eval_on(corner, dom);

    // no candidates: nothing can move
    CHECK(brute_min_superharmonic_step(g, {}) == g);

    // a fixpoint stays fixed under full enumeration of a small patch
    std::vector<VertexId> patch;
    for (Value y = -2; y <= 2; ++y) {
        for (Value x = -2; x <= 2; ++x) patch.push_back(dom->vertex_at(Point{x, y}));
    }
    CHECK(brute_min_superharmonic_step(g, patch) == g);

    OracleBudget tight;
    tight.max_vertices = 3;
    CHECK_THROWS_AS(brute_min_superharmonic_step(g, patch, tight), TooLargeError);

    IntegerField pit(dom, 0);
    pit[dom->vertex_at(Point{0, 0})] = -1;
    CHECK_THROWS_AS(brute_min_superharmonic_step(pit, patch), NotSuperharmonicError);
}

TEST_CASE("brute relax basics") {
    const DomainPtr dom = Domain::box(0, 8, 0, 8, 1);
    std::mt19937_64 rng(21);
    const SandpileState stable = testutil::random_stable_state(rng, dom);
    const RelaxationOutcome none = brute_relax(stable);
    CHECK(none.topplings == 0);
    CHECK(none.final == stable);

    SandpileState four(dom, 0);
    const VertexId v = dom->vertex_at(Point{4, 4});
    four[v] = 4;
    const RelaxationOutcome one = brute_relax(four);
    CHECK(one.topplings == 1);
    CHECK(one.odometer[v] == 1);
    CHECK(one.final[v] == 0);
}

TEST_CASE("randomized agreement between fast and brute paths") {
    std::mt19937_64 rng(31);
    for (int it = 0; it < 40; ++it) {
        const DomainPtr dom = Domain::box(0, 5, 0, 5, 1);  // 4x4 interior
        IntegerField g = eval_on(random_plmin(rng), dom);
        if (rng() % 2 == 0) g = smooth_once(g).next;

        const SmoothStep fast = smooth_once(g);
        const IntegerField slow = brute_min_superharmonic_step(g, dom->interior_vertices());
        CHECK(fast.next == slow);
    }
    for (int it = 0; it < 40; ++it) {
        const DomainPtr dom = Domain::box(0, 8, 0, 8, 1);
        const SandpileState phi = testutil::random_state(rng, dom, 6);
        const RelaxationOutcome fast = relax(phi);
        const RelaxationOutcome slow = brute_relax(phi);
        CHECK(fast.final == slow.final);
        CHECK(fast.odometer == slow.odometer);
    }
}

TEST_CASE("level-set slicing of smoothing differences") {
    const DomainPtr cyl = Domain::cylinder(3, -2, -20, 20, 5);
    const PLMinFunction F = edge_function(2, 3);
    const IntegerField f0 = eval_on(F, cyl);

    CHECK(slicing_decomposition_check(f0, f0));

    const SmoothingResult s3 = smooth_n(F, cyl, 3);
    CHECK(slicing_decomposition_check(f0, s3.final));

    IntegerField above = f0;
    above[cyl->vertex_at(Point{0, 0})] += 1;  // F - G < 0 somewhere
    CHECK_THROWS_AS(slicing_decomposition_check(f0, above), PreconditionError);
}
