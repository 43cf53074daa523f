#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "frobmod/model.hpp"

using namespace frobmod;

namespace {

AlgebraPtr A2() {
    static AlgebraPtr a =
        CheckedAlgebra::validate(builtin_algebra("truncated_polynomial",
                                                 {2, 2}));
    return a;
}

AlgebraPtr A3() {
    static AlgebraPtr a =
        CheckedAlgebra::validate(builtin_algebra("truncated_polynomial",
                                                 {3, 3}));
    return a;
}

ModulePtr simple(const AlgebraPtr& alg) {
    return top(ModuleRep::regular(alg)).object;
}

} // namespace

TEST_CASE("classification of basic morphisms") {
    auto alg = A2();
    ModulePtr j1 = simple(alg);
    ModulePtr j2 = ModuleRep::regular(alg);

    MorphismClass id = classify(ModuleHom::identity(j1));
    CHECK(id.cofibration);
    CHECK(id.fibration);
    CHECK(id.weak_equivalence);
    CHECK(id.trivial_cofibration);
    CHECK(id.trivial_fibration);

    // The cover deflation of the simple: a fibration with non-projective
    // kernel, and not a weak equivalence.
    Conflation cov = projective_cover(j1);
    MorphismClass defl = classify(cov.deflation);
    CHECK(defl.fibration);
    CHECK_FALSE(defl.cofibration);
    CHECK_FALSE(defl.trivial_fibration);
    CHECK_FALSE(defl.weak_equivalence);

    // Zero into the regular module: a trivial cofibration that is not a
    // fibration.
    MorphismClass incl = classify(ModuleHom::zero(ModuleRep::zero(alg), j2));
    CHECK(incl.cofibration);
    CHECK(incl.trivial_cofibration);
    CHECK(incl.weak_equivalence);
    CHECK_FALSE(incl.fibration);

    // Zero endomorphism of the simple: neither mono, epi, nor a weak
    // equivalence.
    MorphismClass zero = classify(ModuleHom::zero(j1, j1));
    CHECK_FALSE(zero.cofibration);
    CHECK_FALSE(zero.fibration);
    CHECK_FALSE(zero.weak_equivalence);
}

TEST_CASE("factorizations verify and classify their legs") {
    auto alg = A3();
    InstanceSampler s(alg, 37, 6);
    for (int trial = 0; trial < 10; ++trial) {
        ModuleHom f = s.hom();
        FactorizationResult a = factor_trivcof_fib(f);
        CHECK(a.second.after(a.first).matrix() == f.matrix());
        CHECK(classify(a.first).trivial_cofibration);
        CHECK(classify(a.second).fibration);
        FactorizationResult b = factor_cof_trivfib(f);
        CHECK(b.second.after(b.first).matrix() == f.matrix());
        CHECK(classify(b.first).cofibration);
        CHECK(classify(b.second).trivial_fibration);
    }
}

TEST_CASE("lifting against a trivial fibration") {
    auto alg = A2();
    InstanceSampler s(alg, 41, 5);
    int solved = 0;
    while (solved < 8) {
        ModuleHom i = s.cofibration();
        ModuleHom p = s.trivial_fibration();
        ModuleHom g = s.hom(i.target(), p.target());
        auto fs = solve_hom_post_all(hom_space(i.source(), p.source()), p,
                                     g.after(i));
        REQUIRE(fs.has_value()); // guaranteed: the kernel of p is injective
        LiftProblem sq{i, fs->particular, g, p};
        LiftWitness w = lift(sq);
        CHECK(w.h.after(i).matrix() == sq.f.matrix());
        CHECK(p.after(w.h).matrix() == g.matrix());
        ++solved;
    }
}

TEST_CASE("lifting along a trivial cofibration") {
    auto alg = A3();
    InstanceSampler s(alg, 43, 5);
    int solved = 0;
    while (solved < 8) {
        ModuleHom i = s.trivial_cofibration();
        ModuleHom p = s.fibration();
        ModuleHom f = s.hom(i.source(), p.source());
        auto gs = solve_hom_pre_all(hom_space(i.target(), p.target()), i,
                                    p.after(f));
        REQUIRE(gs.has_value()); // guaranteed: i splits
        LiftProblem sq{i, f, gs->particular, p};
        LiftWitness w = lift(sq);
        CHECK(w.h.after(i).matrix() == f.matrix());
        CHECK(p.after(w.h).matrix() == sq.g.matrix());
        ++solved;
    }
}

TEST_CASE("lift rejects malformed problems") {
    auto alg = A2();
    ModulePtr j1 = simple(alg);
    ModulePtr j2 = ModuleRep::regular(alg);
    Conflation cov = projective_cover(j1);

    SUBCASE("non-commuting square") {
        // i = id, p = id, f = id, g = 0 on the simple: p f != g i.
        LiftProblem sq{ModuleHom::identity(j1), ModuleHom::identity(j1),
                       ModuleHom::zero(j1, j1), ModuleHom::identity(j1)};
        CHECK_THROWS_WITH_AS(lift(sq), doctest::Contains("commute"),
                             PreconditionError);
    }
    SUBCASE("no admissible leg pairing") {
        // Left leg is the cover deflation (not a cofibration); right leg
        // is a non-trivial fibration.
        LiftProblem sq{cov.deflation, ModuleHom::zero(j2, j2),
                       ModuleHom::zero(j1, j1), cov.deflation};
        CHECK_THROWS_WITH_AS(lift(sq),
                             doctest::Contains("not a cofibration"),
                             PreconditionError);
    }
}

TEST_CASE("path objects factor the diagonal") {
    for (auto alg : {A2(), A3()}) {
        ModulePtr x = simple(alg);
        PathObject path = path_object(x);
        CHECK(classify(path.section).trivial_cofibration);
        CHECK(path.projection0.after(path.section).matrix() ==
              ModuleHom::identity(x).matrix());
        CHECK(path.projection1.after(path.section).matrix() ==
              ModuleHom::identity(x).matrix());
        // The joint projection is a fibration onto X x X.
        Matrix joint =
            path.projection0.matrix().vcat(path.projection1.matrix());
        CHECK(rank(joint) == 2 * x->dim());
    }
}

TEST_CASE("right homotopy coincides with stable equality") {
    for (auto alg : {A2(), A3()}) {
        InstanceSampler s(alg, 47, 5);
        int agreements = 0;
        for (int trial = 0; trial < 40; ++trial) {
            ModulePtr x = s.module(), y = s.module();
            ModuleHom f = s.hom(x, y), g = s.hom(x, y);
            bool homotopic = right_homotopy(f, g).has_value();
            bool stably = stable_equal(f, g);
            CHECK(homotopic == stably);
            if (homotopic == stably) ++agreements;
        }
        CHECK(agreements == 40);
    }
}

TEST_CASE("left homotopy through the cylinder agrees as well") {
    auto alg = A2();
    InstanceSampler s(alg, 53, 5);
    for (int trial = 0; trial < 25; ++trial) {
        ModulePtr x = s.module(), y = s.module();
        ModuleHom f = s.hom(x, y), g = s.hom(x, y);
        CHECK(left_homotopy(f, g).has_value() == stable_equal(f, g));
    }
    ModulePtr x = simple(alg);
    CylinderObject cyl = cylinder_object(x);
    CHECK(classify(cyl.collapse).trivial_fibration);
    CHECK(cyl.collapse.after(cyl.end0).matrix() ==
          ModuleHom::identity(x).matrix());
    CHECK(cyl.collapse.after(cyl.end1).matrix() ==
          ModuleHom::identity(x).matrix());
    CHECK(rank(cyl.end0.matrix().hcat(cyl.end1.matrix())) == 2 * x->dim());
}

TEST_CASE("verified homotopies certify their endpoints") {
    auto alg = A3();
    ModulePtr j1 = simple(alg);
    ModuleHom f = ModuleHom::identity(j1);
    // f is right homotopic to itself; the witness hits both projections.
    PathObject path = path_object(j1);
    auto h = right_homotopy(f, f);
    REQUIRE(h.has_value());
    CHECK(path.projection0.after(*h).matrix() == f.matrix());
    CHECK(path.projection1.after(*h).matrix() == f.matrix());
    // id and 0 on the simple are not homotopic (it is not stably trivial).
    CHECK_FALSE(right_homotopy(f, ModuleHom::zero(j1, j1)).has_value());
}

TEST_CASE("axiom suite passes on small runs and is deterministic") {
    SamplerConfig cfg;
    cfg.samples_per_axiom = 30;
    for (auto alg : {A2(), A3()}) {
        AxiomReport r1 = verify_axioms(alg, cfg);
        CHECK(r1.all_passed());
        CHECK(r1.checks.size() == 6);
        for (const auto& c : r1.checks) CHECK(c.instances == 30);
        AxiomReport r2 = verify_axioms(alg, cfg);
        CHECK(r1.render() == r2.render());
    }
}

TEST_CASE("a corrupted classifier is caught by the harness") {
    SamplerConfig cfg;
    cfg.samples_per_axiom = 60;
    cfg.classifier = [](const ModuleHom& f) {
        MorphismClass c = classify(f);
        if (c.fibration) {
            c.trivial_fibration = true; // lie about triviality
            c.weak_equivalence = true;
        }
        return c;
    };
    AxiomReport report = verify_axioms(A2(), cfg);
    CHECK_FALSE(report.all_passed());
}

TEST_CASE("sampler pools are nontrivial and within bounds") {
    for (auto alg : {A2(), A3()}) {
        InstanceSampler s(alg, 0, 6);
        CHECK(s.pool().size() > 2);
        bool has_nonprojective = false;
        for (const auto& m : s.pool()) {
            CHECK(m->dim() <= 6);
            if (m->dim() > 0 && !detail::projective_via_minimal_cover(m))
                has_nonprojective = true;
        }
        CHECK(has_nonprojective);
    }
}
