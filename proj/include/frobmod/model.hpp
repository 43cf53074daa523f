#pragma once

// The model-structure layer: classification of morphisms into the five
// classes, both functorial factorizations, constructive lifts for the two
// lifting-problem shapes, path and cylinder objects with the induced
// homotopy relations, and a randomized axiom-verification harness with
// deterministic, reproducible reports.

#include "frobmod/frobcat.hpp"

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace frobmod {

// ---------------------------------------------------------------------------
// Classification
// ---------------------------------------------------------------------------

/// Membership of a morphism in the five distinguished classes.
/// Cofibrations are the inflations (monomorphisms here), fibrations the
/// deflations (epimorphisms); a cofibration is trivial iff its cokernel is
/// projective, a fibration iff its kernel is, and weak equivalences are the
/// stable isomorphisms.
struct MorphismClass {
    bool cofibration = false;
    bool fibration = false;
    bool weak_equivalence = false;
    bool trivial_cofibration = false;
    bool trivial_fibration = false;
};

inline MorphismClass classify(const ModuleHom& f) {
    MorphismClass c;
    c.cofibration = f.is_injective();
    c.fibration = f.is_surjective();
    if (c.cofibration)
        c.trivial_cofibration =
            detail::projective_via_minimal_cover(cokernel(f).object);
    if (c.fibration)
        c.trivial_fibration =
            detail::projective_via_minimal_cover(kernel(f).object);
    c.weak_equivalence = c.trivial_cofibration || c.trivial_fibration
                             ? true
                             : is_weak_equivalence(f);
    return c;
}

/// Hook type for swapping the classifier out (used by the harness self-test
/// to confirm that a corrupted classifier is caught as an axiom violation).
using Classifier = std::function<MorphismClass(const ModuleHom&)>;

// ---------------------------------------------------------------------------
// Factorizations
// ---------------------------------------------------------------------------

enum class FactorizationMode { trivcof_then_fib, cof_then_trivfib };

struct FactorizationResult {
    ModulePtr mid;
    ModuleHom first;  // X -> mid
    ModuleHom second; // mid -> Y
    FactorizationMode mode;
};

namespace detail {

inline void verify_factorization(const ModuleHom& f,
                                 const RawFactorization& raw,
                                 FactorizationMode mode) {
    if (!(raw.second.after(raw.first).matrix() == f.matrix()))
        throw ValidationError("factorization: composite differs from input");
    MorphismClass c1 = classify(raw.first);
    MorphismClass c2 = classify(raw.second);
    const bool ok = mode == FactorizationMode::trivcof_then_fib
                        ? c1.trivial_cofibration && c2.fibration
                        : c1.cofibration && c2.trivial_fibration;
    if (!ok) throw ValidationError("factorization: leg class check failed");
}

} // namespace detail

/// f = fibration after trivial cofibration, verified on construction.
inline FactorizationResult factor_trivcof_fib(const ModuleHom& f) {
    detail::RawFactorization raw = detail::factor_through_trivcof(f);
    detail::verify_factorization(f, raw, FactorizationMode::trivcof_then_fib);
    return {raw.mid, std::move(raw.first), std::move(raw.second),
            FactorizationMode::trivcof_then_fib};
}

/// f = trivial fibration after cofibration, verified on construction.
inline FactorizationResult factor_cof_trivfib(const ModuleHom& f) {
    detail::RawFactorization raw = detail::factor_through_trivfib(f);
    detail::verify_factorization(f, raw, FactorizationMode::cof_then_trivfib);
    return {raw.mid, std::move(raw.first), std::move(raw.second),
            FactorizationMode::cof_then_trivfib};
}

// ---------------------------------------------------------------------------
// Lifting
// ---------------------------------------------------------------------------

/// A commuting square p after f == g after i with i : A -> B down the left
/// and p : X -> Y down the right.
struct LiftProblem {
    ModuleHom i; // A -> B
    ModuleHom f; // A -> X
    ModuleHom g; // B -> Y
    ModuleHom p; // X -> Y
};

/// The square violates the preconditions of the lifting axiom (does not
/// commute, or neither leg pairing (cof, trivial fib) / (trivial cof, fib)
/// holds).
class PreconditionError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// The preconditions were asserted but a construction step failed; with a
/// correct classifier this never fires.
class LiftError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A diagonal h : B -> X with h i == f and p h == g, together with the
/// ingredients of the explicit recipe that produced it.  When the right leg
/// is the trivial fibration, h = splitting g + edge u where splitting
/// sections p and edge is the kernel inclusion; in the dual case
/// h = f splitting + w edge with splitting a retraction of i and edge the
/// cokernel projection.
struct LiftWitness {
    ModuleHom h;
    ModuleHom splitting;
    ModuleHom edge;
    ModuleHom correction;
};

namespace detail {

inline LiftWitness lift_against_trivfib(const LiftProblem& sq) {
    // h = lambda g + c u:  lambda sections p, c : K -> X includes ker p,
    // v measures f - lambda g i inside K, and u extends v along i using
    // injectivity of K.
    SubobjectData ker = kernel(sq.p);
    auto lambda = solve_hom_equation(
        hom_space(sq.p.target(), sq.p.source()), sq.p,
        ModuleHom::identity(sq.p.target()));
    if (!lambda)
        throw LiftError("lift: right leg admits no section");
    ModuleHom defect = sq.f - lambda->after(sq.g).after(sq.i); // lands in K
    auto into_kernel = solve(ker.inclusion.matrix(), defect.matrix());
    if (!into_kernel)
        throw LiftError("lift: defect escapes the kernel");
    ModuleHom v = ModuleHom::derived(sq.i.source(), ker.object,
                                     into_kernel->particular);
    auto u = solve_hom_equation_pre(hom_space(sq.i.target(), ker.object),
                                    sq.i, v);
    if (!u)
        throw LiftError("lift: kernel is not injective along the left leg");
    ModuleHom h = lambda->after(sq.g) + ker.inclusion.after(*u);
    return {std::move(h), std::move(*lambda), ker.inclusion, std::move(*u)};
}

inline LiftWitness lift_along_trivcof(const LiftProblem& sq) {
    // h = f rho + w d:  rho retracts i, d : B -> C is the cokernel
    // projection, t measures g - p f rho on C, and w lifts t through p
    // using projectivity of C.
    QuotientData cok = cokernel(sq.i);
    auto rho = solve_hom_equation_pre(
        hom_space(sq.i.target(), sq.i.source()), sq.i,
        ModuleHom::identity(sq.i.source()));
    if (!rho)
        throw LiftError("lift: left leg admits no retraction");
    ModuleHom defect = sq.g - sq.p.after(sq.f).after(*rho); // kills im i
    auto t = solve_hom_equation_pre(
        hom_space(cok.object, sq.g.target()), cok.projection, defect);
    if (!t)
        throw LiftError("lift: defect does not descend to the cokernel");
    auto w = solve_hom_equation(hom_space(cok.object, sq.p.source()), sq.p,
                                *t);
    if (!w)
        throw LiftError("lift: cokernel is not projective over the right leg");
    ModuleHom h = sq.f.after(*rho) + w->after(cok.projection);
    return {std::move(h), std::move(*rho), cok.projection, std::move(*w)};
}

} // namespace detail

/// Solve a lifting problem.  The classifier decides which leg pairing is
/// claimed; the construction then certifies it (or throws LiftError, which
/// the harness counts as a violation).
inline LiftWitness lift(const LiftProblem& sq,
                        const Classifier& classifier = classify) {
    if (!(sq.p.after(sq.f).matrix() == sq.g.after(sq.i).matrix()))
        throw PreconditionError("lift: square does not commute");
    MorphismClass ci = classifier(sq.i);
    MorphismClass cp = classifier(sq.p);
    LiftWitness w = [&] {
        if (ci.cofibration && cp.trivial_fibration)
            return detail::lift_against_trivfib(sq);
        if (ci.trivial_cofibration && cp.fibration)
            return detail::lift_along_trivcof(sq);
        std::string msg = "lift: no admissible leg pairing (left leg is ";
        msg += ci.cofibration ? "a cofibration" : "not a cofibration";
        msg += ", right leg is ";
        msg += cp.fibration ? "a fibration" : "not a fibration";
        msg += cp.trivial_fibration ? ", trivial" : ", not trivial";
        msg += ")";
        throw PreconditionError(msg);
    }();
    if (!(w.h.after(sq.i).matrix() == sq.f.matrix()) ||
        !(sq.p.after(w.h).matrix() == sq.g.matrix()))
        throw LiftError("lift: constructed diagonal fails the square");
    return w;
}

// ---------------------------------------------------------------------------
// Path and cylinder objects, homotopies
// ---------------------------------------------------------------------------

/// Path object X + P(X): section is the trivial cofibration X -> X + P(X),
/// and (projection0, projection1) is the fibration to X x X with
/// projection_k section == id.
struct PathObject {
    ModulePtr object;
    ModuleHom section;     // X -> object, trivial cofibration
    ModuleHom projection0; // object -> X
    ModuleHom projection1; // object -> X
};

inline PathObject path_object(const ModulePtr& x) {
    Conflation cov = projective_cover(x);
    BiproductData sum = direct_sum(x, cov.mid());
    ModuleHom s = sum.inj_left;
    ModuleHom p0 = sum.proj_left + cov.deflation.after(sum.proj_right);
    ModuleHom p1 = sum.proj_left;
    if (!(p0.after(s).matrix() == ModuleHom::identity(x).matrix()) ||
        !(p1.after(s).matrix() == ModuleHom::identity(x).matrix()))
        throw ValidationError("path_object: projections do not retract");
    if (rank(p0.matrix().vcat(p1.matrix())) != 2 * x->dim())
        throw ValidationError("path_object: joint projection not surjective");
    return {sum.object, std::move(s), std::move(p0), std::move(p1)};
}

/// Right homotopy f ~ g through the standard path object of the target:
/// a map H with projection0 H == f and projection1 H == g.  Two maps are
/// right homotopic here iff they are stably equal.
inline std::optional<ModuleHom> right_homotopy(const ModuleHom& f,
                                               const ModuleHom& g) {
    if (f.source().get() != g.source().get() ||
        f.target().get() != g.target().get())
        throw ValidationError("right_homotopy: endpoint mismatch");
    PathObject path = path_object(f.target());
    std::vector<ModuleHom> basis = hom_space(f.source(), path.object);
    const Residue p = f.matrix().modulus();
    const std::size_t cells = f.target()->dim() * f.source()->dim();
    Matrix sys(p, 2 * cells, basis.size());
    for (std::size_t j = 0; j < basis.size(); ++j) {
        Matrix top = path.projection0.matrix() * basis[j].matrix();
        Matrix bottom = path.projection1.matrix() * basis[j].matrix();
        for (std::size_t r = 0; r < top.rows(); ++r)
            for (std::size_t c = 0; c < top.cols(); ++c) {
                sys.at(r * top.cols() + c, j) = top.at(r, c);
                sys.at(cells + r * top.cols() + c, j) = bottom.at(r, c);
            }
    }
    Matrix rhs(p, 2 * cells, 1);
    for (std::size_t r = 0; r < f.matrix().rows(); ++r)
        for (std::size_t c = 0; c < f.matrix().cols(); ++c) {
            rhs.at(r * f.matrix().cols() + c, 0) = f.matrix().at(r, c);
            rhs.at(cells + r * f.matrix().cols() + c, 0) =
                g.matrix().at(r, c);
        }
    auto sol = solve(sys, rhs);
    if (!sol) return std::nullopt;
    ModuleHom h = ModuleHom::zero(f.source(), path.object);
    for (std::size_t j = 0; j < basis.size(); ++j)
        h = h + basis[j].scaled(sol->particular.at(j, 0));
    return h;
}

/// Cylinder object X + I(X): (end0, end1) is the cofibration X x X ->
/// cylinder componentwise, collapse the trivial fibration back to X.
struct CylinderObject {
    ModulePtr object;
    ModuleHom end0;     // X -> object
    ModuleHom end1;     // X -> object
    ModuleHom collapse; // object -> X, trivial fibration
};

inline CylinderObject cylinder_object(const ModulePtr& x) {
    Conflation hull = injective_hull(x);
    BiproductData sum = direct_sum(x, hull.mid());
    ModuleHom e0 = sum.inj_left + sum.inj_right.after(hull.inflation);
    ModuleHom e1 = sum.inj_left;
    ModuleHom collapse = sum.proj_left;
    if (!(collapse.after(e0).matrix() == ModuleHom::identity(x).matrix()) ||
        !(collapse.after(e1).matrix() == ModuleHom::identity(x).matrix()))
        throw ValidationError("cylinder_object: collapse does not retract");
    if (rank(e0.matrix().hcat(e1.matrix())) != 2 * x->dim())
        throw ValidationError("cylinder_object: joint end map not injective");
    return {sum.object, std::move(e0), std::move(e1), std::move(collapse)};
}

/// Left homotopy f ~ g through the standard cylinder of the source:
/// a map H with H end0 == f and H end1 == g.
inline std::optional<ModuleHom> left_homotopy(const ModuleHom& f,
                                              const ModuleHom& g) {
    if (f.source().get() != g.source().get() ||
        f.target().get() != g.target().get())
        throw ValidationError("left_homotopy: endpoint mismatch");
    CylinderObject cyl = cylinder_object(f.source());
    std::vector<ModuleHom> basis = hom_space(cyl.object, f.target());
    const Residue p = f.matrix().modulus();
    const std::size_t cells = f.target()->dim() * f.source()->dim();
    Matrix sys(p, 2 * cells, basis.size());
    for (std::size_t j = 0; j < basis.size(); ++j) {
        Matrix top = basis[j].matrix() * cyl.end0.matrix();
        Matrix bottom = basis[j].matrix() * cyl.end1.matrix();
        for (std::size_t r = 0; r < top.rows(); ++r)
            for (std::size_t c = 0; c < top.cols(); ++c) {
                sys.at(r * top.cols() + c, j) = top.at(r, c);
                sys.at(cells + r * top.cols() + c, j) = bottom.at(r, c);
            }
    }
    Matrix rhs(p, 2 * cells, 1);
    for (std::size_t r = 0; r < f.matrix().rows(); ++r)
        for (std::size_t c = 0; c < f.matrix().cols(); ++c) {
            rhs.at(r * f.matrix().cols() + c, 0) = f.matrix().at(r, c);
            rhs.at(cells + r * f.matrix().cols() + c, 0) =
                g.matrix().at(r, c);
        }
    auto sol = solve(sys, rhs);
    if (!sol) return std::nullopt;
    ModuleHom h = ModuleHom::zero(cyl.object, f.target());
    for (std::size_t j = 0; j < basis.size(); ++j)
        h = h + basis[j].scaled(sol->particular.at(j, 0));
    return h;
}

// ---------------------------------------------------------------------------
// Randomized instance sampling
// ---------------------------------------------------------------------------

struct SamplerConfig {
    std::uint64_t seed = 0;
    std::size_t samples_per_axiom = 200;
    std::size_t dim_bound = 6;
    Classifier classifier{}; // empty = the built-in classify
};

/// Seeded sampler of modules and morphisms over one algebra.  The module
/// pool is built deterministically from the seed catalog {top(A), A}
/// closed under syzygy and cosyzygy, deduplicated up to isomorphism, then
/// expanded to direct-sum combinations within the dimension bound; every
/// draw afterwards consumes the engine in a fixed order, so a (seed,
/// config) pair replays the identical instance stream.
class InstanceSampler {
public:
    InstanceSampler(AlgebraPtr alg, std::uint64_t seed, std::size_t dim_bound)
        : alg_(std::move(alg)), rng_(seed ^ 0x9e3779b97f4a7c15ull),
          dim_bound_(dim_bound) {
        build_pool();
    }

    const std::vector<ModulePtr>& pool() const { return pool_; }

    std::size_t below(std::size_t n) {
        return n == 0 ? 0 : std::size_t(rng_() % n);
    }

    ModulePtr module() { return pool_[below(pool_.size())]; }

    ModulePtr nonzero_module() {
        for (int tries = 0; tries < 64; ++tries) {
            ModulePtr m = module();
            if (m->dim() > 0) return m;
        }
        return ModuleRep::regular(alg_);
    }

    ModuleHom hom(const ModulePtr& x, const ModulePtr& y) {
        std::vector<ModuleHom> basis = hom_space(x, y);
        ModuleHom h = ModuleHom::zero(x, y);
        const Residue p = alg_->modulus();
        for (const auto& b : basis) {
            Residue c = Residue(rng_() % p);
            if (c != 0) h = h + b.scaled(c);
        }
        return h;
    }

    ModuleHom hom() {
        ModulePtr x = module();
        ModulePtr y = module();
        return hom(x, y);
    }

    /// Random automorphism; falls back to the identity if the draws miss.
    ModuleHom automorphism(const ModulePtr& x) {
        if (x->dim() == 0) return ModuleHom::identity(x);
        for (int tries = 0; tries < 32; ++tries) {
            ModuleHom h = hom(x, x);
            if (rank(h.matrix()) == x->dim()) return h;
        }
        return ModuleHom::identity(x);
    }

    ModuleHom inverse_of(const ModuleHom& phi) {
        return ModuleHom::derived(phi.target(), phi.source(),
                                  *inverse(phi.matrix()));
    }

    /// Structured inflation: a canonical summand inclusion conjugated by
    /// random automorphisms on both ends.
    ModuleHom inflation() {
        ModulePtr x = module();
        ModulePtr m = module();
        BiproductData& s = sum(x, m);
        return automorphism(s.object).after(s.inj_left).after(
            automorphism(x));
    }

    /// Structured deflation, dually.
    ModuleHom deflation() {
        ModulePtr x = module();
        ModulePtr m = module();
        BiproductData& s = sum(m, x);
        return automorphism(x).after(s.proj_right).after(
            automorphism(s.object));
    }

    /// General deflation: random surjective hom between pool modules
    /// (often non-split); falls back to a split projection.
    ModuleHom fibration() {
        for (int tries = 0; tries < 64; ++tries) {
            ModulePtr x = module();
            ModulePtr y = module();
            if (x->dim() < y->dim()) continue;
            ModuleHom h = hom(x, y);
            if (h.is_surjective()) return h;
        }
        return deflation();
    }

    /// General inflation: random injective hom between pool modules.
    ModuleHom cofibration() {
        for (int tries = 0; tries < 64; ++tries) {
            ModulePtr x = module();
            ModulePtr y = module();
            if (x->dim() > y->dim()) continue;
            ModuleHom h = hom(x, y);
            if (h.is_injective()) return h;
        }
        return inflation();
    }

    /// Inflation with free (hence projective) cokernel summand.
    ModuleHom trivial_cofibration() {
        ModulePtr x = module();
        ModulePtr m = random_free();
        BiproductData& s = sum(x, m);
        return automorphism(s.object).after(s.inj_left).after(
            automorphism(x));
    }

    /// Deflation with free kernel summand.
    ModuleHom trivial_fibration() {
        ModulePtr x = module();
        ModulePtr m = random_free();
        BiproductData& s = sum(m, x);
        return automorphism(x).after(s.proj_right).after(
            automorphism(s.object));
    }

    /// Particular solution of an affine hom system shifted by a random
    /// combination of the homogeneous solutions.
    ModuleHom randomized(const HomAffineSolutions& sols) {
        ModuleHom h = sols.particular;
        const Residue p = alg_->modulus();
        for (const auto& k : sols.homogeneous) {
            Residue c = Residue(rng_() % p);
            if (c != 0) h = h + k.scaled(c);
        }
        return h;
    }

    BiproductData& sum(const ModulePtr& x, const ModulePtr& y) {
        const auto key = std::make_pair(x->uid(), y->uid());
        auto it = sums_.find(key);
        if (it == sums_.end())
            it = sums_.emplace(key, direct_sum(x, y)).first;
        return it->second;
    }

private:
    ModulePtr random_free() {
        const std::size_t d = alg_->dim();
        const std::size_t max_copies = dim_bound_ / d;
        return ModuleRep::free(alg_, below(max_copies + 1));
    }

    void add_unique(std::vector<ModulePtr>& cat, const ModulePtr& m) {
        if (m->dim() == 0 || m->dim() > dim_bound_) return;
        for (const auto& seen : cat)
            if (seen->dim() == m->dim() && iso_search(seen, m)) return;
        cat.push_back(m);
    }

    void build_pool() {
        std::vector<ModulePtr> catalog;
        add_unique(catalog, top(ModuleRep::regular(alg_)).object);
        add_unique(catalog, ModuleRep::regular(alg_));
        for (std::size_t i = 0; i < catalog.size() && catalog.size() < 8;
             ++i) {
            add_unique(catalog, syzygy(catalog[i]));
            add_unique(catalog, cosyzygy(catalog[i]));
        }
        pool_.push_back(ModuleRep::zero(alg_));
        // Direct-sum combinations of catalog entries within the bound,
        // enumerated depth-first so the pool order is deterministic.
        expand_pool(catalog, 0, nullptr, 0);
    }

    void expand_pool(const std::vector<ModulePtr>& catalog, std::size_t from,
                     ModulePtr acc, std::size_t acc_dim) {
        if (pool_.size() >= 64) return;
        for (std::size_t i = from; i < catalog.size(); ++i) {
            std::size_t d = acc_dim + catalog[i]->dim();
            if (d > dim_bound_) continue;
            ModulePtr next =
                acc ? sum(acc, catalog[i]).object : catalog[i];
            pool_.push_back(next);
            expand_pool(catalog, i, next, d);
            if (pool_.size() >= 64) return;
        }
    }

    AlgebraPtr alg_;
    std::mt19937_64 rng_;
    std::size_t dim_bound_;
    std::vector<ModulePtr> pool_;
    std::map<std::pair<std::uint64_t, std::uint64_t>, BiproductData> sums_;
};

// ---------------------------------------------------------------------------
// Axiom verification
// ---------------------------------------------------------------------------

struct AxiomCheckResult {
    std::string name;
    std::size_t instances = 0;
    std::size_t failures = 0;
    std::string first_counterexample; // empty when all instances passed
    bool passed() const { return failures == 0; }
};

struct AxiomReport {
    std::string algebra_name;
    std::uint64_t seed = 0;
    std::size_t samples_per_axiom = 0;
    std::size_t dim_bound = 0;
    std::vector<AxiomCheckResult> checks;

    bool all_passed() const {
        for (const auto& c : checks)
            if (!c.passed()) return false;
        return true;
    }

    /// Deterministic line-oriented rendering; byte-identical across runs
    /// with the same configuration.
    std::string render() const {
        std::ostringstream out;
        out << "frobmod-axiom-report v1\n";
        out << "algebra " << algebra_name << "\n";
        out << "seed " << seed << "\n";
        out << "samples-per-axiom " << samples_per_axiom << "\n";
        out << "dim-bound " << dim_bound << "\n";
        for (const auto& c : checks) {
            out << "check " << c.name << " instances=" << c.instances
                << " failures=" << c.failures << " "
                << (c.passed() ? "pass" : "FAIL") << "\n";
            if (!c.first_counterexample.empty())
                out << "counterexample " << c.name << " "
                    << c.first_counterexample << "\n";
        }
        out << "result " << (all_passed() ? "pass" : "FAIL") << "\n";
        return out.str();
    }
};

namespace detail {

inline std::string describe_hom(const ModuleHom& f) {
    std::ostringstream out;
    out << "map " << f.source()->dim() << "->" << f.target()->dim() << " [";
    for (std::size_t r = 0; r < f.matrix().rows(); ++r) {
        if (r) out << ";";
        for (std::size_t c = 0; c < f.matrix().cols(); ++c) {
            if (c) out << ",";
            out << f.matrix().at(r, c);
        }
    }
    out << "]";
    return out.str();
}

class AxiomRecorder {
public:
    explicit AxiomRecorder(std::string name) { result_.name = std::move(name); }

    void record(bool ok, const std::function<std::string()>& describe) {
        ++result_.instances;
        if (!ok) {
            ++result_.failures;
            if (result_.first_counterexample.empty())
                result_.first_counterexample = describe();
        }
    }

    AxiomCheckResult take() { return std::move(result_); }

private:
    AxiomCheckResult result_;
};

} // namespace detail

/// Run the randomized verification of the model-structure axioms over one
/// algebra: isomorphisms land in every class (M0), structured lifting
/// problems are solvable (M1), the classes are closed under composition
/// and base/cobase change (M2), both factorizations exist with correctly
/// classified legs (M3), weak equivalences satisfy two-of-three (M4), and
/// every class is closed under retracts.
inline AxiomReport verify_axioms(const AlgebraPtr& alg,
                                 const SamplerConfig& cfg = {}) {
    Classifier cls = cfg.classifier ? cfg.classifier : Classifier(classify);
    AxiomReport report;
    report.algebra_name = alg->presentation().name;
    report.seed = cfg.seed;
    report.samples_per_axiom = cfg.samples_per_axiom;
    report.dim_bound = cfg.dim_bound;

    // M0: automorphisms belong to all five classes.
    {
        InstanceSampler s(alg, cfg.seed, cfg.dim_bound);
        detail::AxiomRecorder rec("M0-isomorphisms");
        for (std::size_t n = 0; n < cfg.samples_per_axiom; ++n) {
            ModuleHom phi = s.automorphism(s.module());
            MorphismClass c = cls(phi);
            bool ok = c.cofibration && c.fibration && c.weak_equivalence &&
                      c.trivial_cofibration && c.trivial_fibration;
            rec.record(ok, [&] { return detail::describe_hom(phi); });
        }
        report.checks.push_back(rec.take());
    }

    // M1: lifting.  Alternate the two leg pairings; the fourth side of the
    // square always exists for these pairings, and is sampled uniformly
    // from its affine solution set.
    {
        InstanceSampler s(alg, cfg.seed + 1, cfg.dim_bound);
        detail::AxiomRecorder rec("M1-lifting");
        for (std::size_t n = 0; n < cfg.samples_per_axiom; ++n) {
            const bool against_trivfib = n % 2 == 0;
            ModuleHom i = against_trivfib ? s.cofibration()
                                          : s.trivial_cofibration();
            ModuleHom p = against_trivfib ? s.trivial_fibration()
                                          : s.fibration();
            std::optional<LiftProblem> square;
            if (against_trivfib) {
                // Pick g, then solve p f = g i for f (solvable: ker p is
                // injective, so Hom(A, p) is onto).
                ModuleHom g = s.hom(i.target(), p.target());
                auto fs = solve_hom_post_all(
                    hom_space(i.source(), p.source()), p, g.after(i));
                if (fs)
                    square = LiftProblem{i, s.randomized(*fs), g, p};
            } else {
                // Pick f, then solve g i = p f for g (solvable: i splits).
                ModuleHom f = s.hom(i.source(), p.source());
                auto gs = solve_hom_pre_all(
                    hom_space(i.target(), p.target()), i, p.after(f));
                if (gs)
                    square = LiftProblem{i, f, s.randomized(*gs), p};
            }
            if (!square) {
                rec.record(false, [&] {
                    return "square completion missing for " +
                           detail::describe_hom(i) + " against " +
                           detail::describe_hom(p);
                });
                continue;
            }
            bool ok = true;
            std::string why;
            try {
                LiftWitness w = lift(*square, cls);
                ok = w.h.after(square->i).matrix() == square->f.matrix() &&
                     square->p.after(w.h).matrix() == square->g.matrix();
                if (!ok) why = "diagonal fails the square";
            } catch (const std::runtime_error& e) {
                ok = false;
                why = e.what();
            }
            rec.record(ok, [&] {
                return why + " for " + detail::describe_hom(square->i) +
                       " against " + detail::describe_hom(square->p);
            });
        }
        report.checks.push_back(rec.take());
    }

    // M2: closure under composition and under pullback/pushout.
    {
        InstanceSampler s(alg, cfg.seed + 2, cfg.dim_bound);
        detail::AxiomRecorder rec("M2-closure");
        for (std::size_t n = 0; n < cfg.samples_per_axiom; ++n) {
            bool ok = true;
            std::string why;
            switch (n % 6) {
            case 0: { // composition of fibrations
                ModuleHom p1 = s.deflation();
                ModulePtr mid = p1.source();
                BiproductData& sum2 = s.sum(s.module(), mid);
                ModuleHom q =
                    s.automorphism(mid).after(sum2.proj_right).after(
                        s.automorphism(sum2.object));
                ModuleHom comp = p1.after(q);
                ok = cls(comp).fibration;
                if (!ok) why = "composite of fibrations not a fibration";
                break;
            }
            case 1: { // composition of trivial fibrations
                ModuleHom p1 = s.trivial_fibration();
                ModulePtr mid = p1.source();
                const std::size_t d = alg->dim();
                ModulePtr fr = ModuleRep::free(alg, s.below(
                    cfg.dim_bound / d + 1));
                BiproductData& sum2 = s.sum(fr, mid);
                ModuleHom q =
                    s.automorphism(mid).after(sum2.proj_right).after(
                        s.automorphism(sum2.object));
                ModuleHom comp = p1.after(q);
                MorphismClass c = cls(comp);
                ok = c.trivial_fibration && c.weak_equivalence;
                if (!ok) why = "composite of trivial fibrations not trivial";
                break;
            }
            case 2: { // pullback of a (trivial) fibration
                ModuleHom p = n % 12 < 6 ? s.trivial_fibration()
                                         : s.fibration();
                ModulePtr z = s.module();
                ModuleHom g = s.hom(z, p.target());
                PullbackData pb = pullback(g, p);
                MorphismClass c = cls(pb.to_left);
                MorphismClass cp = cls(p);
                ok = c.fibration &&
                     (!cp.trivial_fibration || c.trivial_fibration);
                if (!ok) why = "pullback leg lost its fibration class";
                break;
            }
            case 3: { // composition of cofibrations
                ModuleHom i1 = s.inflation();
                ModulePtr mid = i1.target();
                BiproductData& sum2 = s.sum(mid, s.module());
                ModuleHom j =
                    s.automorphism(sum2.object).after(sum2.inj_left).after(
                        s.automorphism(mid));
                ModuleHom comp = j.after(i1);
                ok = cls(comp).cofibration;
                if (!ok) why = "composite of cofibrations not a cofibration";
                break;
            }
            case 4: { // composition of trivial cofibrations
                ModuleHom i1 = s.trivial_cofibration();
                ModulePtr mid = i1.target();
                const std::size_t d = alg->dim();
                ModulePtr fr = ModuleRep::free(alg, s.below(
                    cfg.dim_bound / d + 1));
                BiproductData& sum2 = s.sum(mid, fr);
                ModuleHom j =
                    s.automorphism(sum2.object).after(sum2.inj_left).after(
                        s.automorphism(mid));
                ModuleHom comp = j.after(i1);
                MorphismClass c = cls(comp);
                ok = c.trivial_cofibration && c.weak_equivalence;
                if (!ok) why = "composite of trivial cofibrations not trivial";
                break;
            }
            default: { // pushout of a (trivial) cofibration
                ModuleHom i = n % 12 < 6 ? s.trivial_cofibration()
                                         : s.cofibration();
                ModuleHom g = s.hom(i.source(), s.module());
                PushoutData po = pushout(i, g);
                MorphismClass c = cls(po.from_right);
                MorphismClass ci = cls(i);
                ok = c.cofibration &&
                     (!ci.trivial_cofibration || c.trivial_cofibration);
                if (!ok) why = "pushout leg lost its cofibration class";
                break;
            }
            }
            rec.record(ok, [&] { return why; });
        }
        report.checks.push_back(rec.take());
    }

    // M3: both factorizations, with the legs classified as claimed.
    {
        InstanceSampler s(alg, cfg.seed + 3, cfg.dim_bound);
        detail::AxiomRecorder rec("M3-factorization");
        for (std::size_t n = 0; n < cfg.samples_per_axiom; ++n) {
            ModuleHom f = s.hom();
            bool ok = true;
            std::string why;
            try {
                FactorizationResult a = factor_trivcof_fib(f);
                MorphismClass c1 = cls(a.first), c2 = cls(a.second);
                if (!(c1.trivial_cofibration && c1.weak_equivalence &&
                      c2.fibration)) {
                    ok = false;
                    why = "trivcof-fib legs misclassified";
                }
                FactorizationResult b = factor_cof_trivfib(f);
                MorphismClass d1 = cls(b.first), d2 = cls(b.second);
                if (!(d1.cofibration && d2.trivial_fibration &&
                      d2.weak_equivalence)) {
                    ok = false;
                    why = "cof-trivfib legs misclassified";
                }
            } catch (const std::runtime_error& e) {
                ok = false;
                why = e.what();
            }
            rec.record(ok, [&] {
                return why + " for " + detail::describe_hom(f);
            });
        }
        report.checks.push_back(rec.take());
    }

    // M4: two-of-three for weak equivalences.
    {
        InstanceSampler s(alg, cfg.seed + 4, cfg.dim_bound);
        detail::AxiomRecorder rec("M4-two-of-three");
        for (std::size_t n = 0; n < cfg.samples_per_axiom; ++n) {
            ModulePtr x = s.module(), y = s.module(), z = s.module();
            ModuleHom f = s.hom(x, y);
            ModuleHom g = s.hom(y, z);
            bool wf = cls(f).weak_equivalence;
            bool wg = cls(g).weak_equivalence;
            bool wc = cls(g.after(f)).weak_equivalence;
            int count = int(wf) + int(wg) + int(wc);
            bool ok = count != 2;
            rec.record(ok, [&] {
                return "exactly two of three for " +
                       detail::describe_hom(f) + " then " +
                       detail::describe_hom(g);
            });
        }
        report.checks.push_back(rec.take());
    }

    // Retract closure: f1 is exhibited as a retract of psi (f1 + g) phi^-1
    // and must inherit every class membership of the big map.
    {
        InstanceSampler s(alg, cfg.seed + 5, cfg.dim_bound);
        detail::AxiomRecorder rec("retract-closure");
        for (std::size_t n = 0; n < cfg.samples_per_axiom; ++n) {
            ModulePtr a = s.module(), b = s.module();
            ModulePtr m = s.module(), m2 = s.module();
            ModuleHom f1 = s.hom(a, b);
            ModuleHom g = s.hom(m, m2);
            BiproductData& sx = s.sum(a, m);
            BiproductData& sy = s.sum(b, m2);
            ModuleHom phi = s.automorphism(sx.object);
            ModuleHom psi = s.automorphism(sy.object);
            ModuleHom block = sy.inj_left.after(f1).after(sx.proj_left) +
                              sy.inj_right.after(g).after(sx.proj_right);
            ModuleHom big = psi.after(block).after(s.inverse_of(phi));
            MorphismClass cb = cls(big);
            MorphismClass c1 = cls(f1);
            bool ok = (!cb.cofibration || c1.cofibration) &&
                      (!cb.fibration || c1.fibration) &&
                      (!cb.weak_equivalence || c1.weak_equivalence) &&
                      (!cb.trivial_cofibration || c1.trivial_cofibration) &&
                      (!cb.trivial_fibration || c1.trivial_fibration);
            rec.record(ok, [&] {
                return "retract " + detail::describe_hom(f1) +
                       " escaped a class of " + detail::describe_hom(big);
            });
        }
        report.checks.push_back(rec.take());
    }

    return report;
}

} // namespace frobmod
