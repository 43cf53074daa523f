// Command-line front end: validate algebra files, run the axiom suite,
// compute stable hom spaces and loop orbits, and build/compare triangles.
//
// Exit codes: 0 success / all checks pass, 1 mathematical failure
// (validation or axiom violation), 2 usage or parse error.

#include "frobmod/io.hpp"
#include "frobmod/triangulated.hpp"

#include <CLI11.hpp>

#include <iostream>
#include <string>
#include <vector>

namespace {

using namespace frobmod;

constexpr int kExitPass = 0;
constexpr int kExitMathFailure = 1;
constexpr int kExitUsage = 2;

/// Module references accepted everywhere a module is needed: a file path,
/// or one of the derived forms "regular", "simple", "free:n".
ModulePtr resolve_module(const AlgebraPtr& alg, const std::string& ref) {
    if (ref == "regular") return ModuleRep::regular(alg);
    if (ref == "simple") return top(ModuleRep::regular(alg)).object;
    if (ref.rfind("free:", 0) == 0) {
        try {
            return ModuleRep::free(alg, std::stoul(ref.substr(5)));
        } catch (const std::exception&) {
            throw ParseError("module reference '" + ref +
                             "': copy count must be an integer");
        }
    }
    return load_module(ref, alg);
}

int cmd_check_algebra(const std::string& path) {
    try {
        AlgebraPtr alg = load_algebra(path);
        std::cout << "algebra " << alg->presentation().name << " valid: p="
                  << alg->modulus() << " dim=" << alg->dim() << "\n";
        return kExitPass;
    } catch (const ParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const ValidationError& e) {
        std::cerr << "validation failed: " << e.what() << "\n";
        return kExitMathFailure;
    }
}

int cmd_axioms(const std::string& algebra_ref, std::uint64_t seed,
               std::size_t samples, std::size_t dim_bound,
               const std::string& format) {
    AlgebraPtr alg = resolve_algebra(algebra_ref);
    SamplerConfig cfg;
    cfg.seed = seed;
    cfg.samples_per_axiom = samples;
    cfg.dim_bound = dim_bound;
    AxiomReport report = verify_axioms(alg, cfg);
    if (format == "structured") {
        std::cout << report.render();
    } else {
        std::cout << "model-structure axiom suite for "
                  << report.algebra_name << " (seed " << report.seed << ", "
                  << report.samples_per_axiom << " samples per axiom, "
                  << "dimension bound " << report.dim_bound << ")\n";
        for (const auto& c : report.checks) {
            std::cout << "  " << c.name << ": " << (c.passed() ? "pass"
                                                              : "FAIL")
                      << " (" << c.instances << " instances";
            if (c.failures > 0) std::cout << ", " << c.failures << " failures";
            std::cout << ")\n";
            if (!c.first_counterexample.empty())
                std::cout << "    counterexample: " << c.first_counterexample
                          << "\n";
        }
        std::cout << (report.all_passed() ? "all axioms verified"
                                          : "AXIOM VIOLATIONS FOUND")
                  << "\n";
    }
    return report.all_passed() ? kExitPass : kExitMathFailure;
}

int cmd_stable_hom(const std::string& algebra_ref, const std::string& x_ref,
                   const std::string& y_ref, const std::string& format) {
    AlgebraPtr alg = resolve_algebra(algebra_ref);
    ModulePtr x = resolve_module(alg, x_ref);
    ModulePtr y = resolve_module(alg, y_ref);
    std::vector<ModuleHom> homs = hom_space(x, y);
    std::size_t sdim = stable_hom_dim(x, y);
    if (format == "structured") {
        std::cout << "stable-hom dim=" << x->dim() << "x" << y->dim()
                  << " hom-dim=" << homs.size() << " stable-dim=" << sdim
                  << "\n";
    } else {
        std::cout << "Hom(" << x_ref << ", " << y_ref << ") has dimension "
                  << homs.size() << "; modulo maps through projectives: "
                  << sdim << "\n";
    }
    // Representatives of a basis of the stable quotient: start from the
    // subspace of maps factoring through the cover of the target and keep
    // the hom basis elements that enlarge the span.
    Conflation cov = projective_cover(y);
    const Residue p = alg->modulus();
    const std::size_t cells = y->dim() * x->dim();
    Matrix span(p, cells, 0);
    for (const auto& u : hom_space(x, cov.mid())) {
        Matrix col(p, cells, 1);
        Matrix m = cov.deflation.matrix() * u.matrix();
        for (std::size_t r = 0; r < m.rows(); ++r)
            for (std::size_t c = 0; c < m.cols(); ++c)
                col.at(r * m.cols() + c, 0) = m.at(r, c);
        span = span.hcat(col);
    }
    std::size_t current_rank = rank(span);
    for (const auto& h : homs) {
        Matrix col(p, cells, 1);
        for (std::size_t r = 0; r < h.matrix().rows(); ++r)
            for (std::size_t c = 0; c < h.matrix().cols(); ++c)
                col.at(r * h.matrix().cols() + c, 0) = h.matrix().at(r, c);
        Matrix grown = span.hcat(col);
        std::size_t grown_rank = rank(grown);
        if (grown_rank > current_rank) {
            std::cout << "representative " << detail::describe_hom(h) << "\n";
            span = std::move(grown);
            current_rank = grown_rank;
        }
    }
    return kExitPass;
}

int cmd_omega_orbit(const std::string& algebra_ref, const std::string& m_ref,
                    std::size_t steps, const std::string& format) {
    AlgebraPtr alg = resolve_algebra(algebra_ref);
    ModulePtr x = resolve_module(alg, m_ref);
    // Reference catalog for naming iso-classes: simple and regular modules
    // closed under syzygy/cosyzygy.
    std::vector<std::pair<std::string, ModulePtr>> catalog;
    auto add = [&](const std::string& label, const ModulePtr& m) {
        if (m->dim() == 0) return;
        for (const auto& [l, seen] : catalog)
            if (seen->dim() == m->dim() && iso_search(seen, m)) return;
        catalog.emplace_back(label, m);
    };
    add("simple", top(ModuleRep::regular(alg)).object);
    add("regular", ModuleRep::regular(alg));
    for (std::size_t i = 0; i < catalog.size() && catalog.size() < 8; ++i) {
        auto [label, m] = catalog[i];
        add("syzygy(" + label + ")", syzygy(m));
        add("cosyzygy(" + label + ")", cosyzygy(m));
    }
    auto describe = [&](const ModulePtr& m) -> std::string {
        if (m->dim() == 0) return "0";
        for (const auto& [label, c] : catalog)
            if (c->dim() == m->dim() && iso_search(c, m)) return label;
        return "dim-" + std::to_string(m->dim());
    };
    ModulePtr current = x;
    for (std::size_t k = 0; k <= steps; ++k) {
        if (format == "structured") {
            std::cout << "orbit step=" << k << " dim=" << current->dim()
                      << " class=" << describe(current) << "\n";
        } else {
            std::cout << "loop^" << k << ": dim " << current->dim() << " ("
                      << describe(current) << ")\n";
        }
        if (k < steps) current = syzygy(current);
    }
    return kExitPass;
}

void print_triangle(const TriangleData& t, const std::string& format) {
    if (format == "structured") {
        std::cout << "triangle provenance=" << t.provenance << " dims="
                  << t.loop->dim() << "," << t.cone->dim() << ","
                  << t.mid->dim() << "," << t.base->dim() << "\n";
        std::cout << "triangle-map first " << detail::describe_hom(t.first)
                  << "\n";
        std::cout << "triangle-map second " << detail::describe_hom(t.second)
                  << "\n";
        std::cout << "triangle-map third " << detail::describe_hom(t.third)
                  << "\n";
    } else {
        std::cout << t.provenance << " triangle: loop(base) dim "
                  << t.loop->dim() << " -> cone dim " << t.cone->dim()
                  << " -> mid dim " << t.mid->dim() << " -> base dim "
                  << t.base->dim() << "\n";
    }
    bool comp1 = stably_zero(t.second.after(t.first));
    bool comp2 = t.third.after(t.second).matrix().is_zero();
    std::cout << (format == "structured" ? "triangle-composites "
                                         : "consecutive composites vanish: ")
              << (comp1 && comp2 ? "zero" : "NONZERO") << "\n";
}

int cmd_triangle(const std::string& algebra_ref,
                 const std::string& morphism_path, const std::string& which,
                 const std::string& format) {
    (void)algebra_ref;
    MorphismFile mf = load_morphism(morphism_path);
    if (which == "quillen" || which == "compare") {
        TriangleData q = quillen_left_triangle(mf.hom);
        print_triangle(q, format);
        if (which == "compare") {
            TriangleData h = happel_left_triangle(mf.hom);
            print_triangle(h, format);
            bool match = triangles_match(q, h);
            std::cout << (format == "structured"
                              ? std::string("triangle-comparison ")
                              : std::string("triangles "))
                      << (match ? "isomorphic" : "NOT-isomorphic") << "\n";
            return match ? kExitPass : kExitMathFailure;
        }
        return kExitPass;
    }
    if (which == "happel") {
        print_triangle(happel_left_triangle(mf.hom), format);
        return kExitPass;
    }
    std::cerr << "triangle: unknown construction '" << which << "'\n";
    return kExitUsage;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Model structures on Frobenius-algebra module categories: "
                 "validation, axiom verification, and stable-category "
                 "reports"};
    app.require_subcommand(1);

    std::string algebra_ref, path_a, path_b, which = "compare";
    std::uint64_t seed = 0;
    std::size_t samples = 200, dim_bound = 6, steps = 4;
    std::string format = "text";

    auto add_format = [&](CLI::App* sub) {
        sub->add_option("--format", format, "Output format")
            ->check(CLI::IsMember({"text", "structured"}));
    };

    CLI::App* check = app.add_subcommand(
        "check-algebra", "Validate an algebra presentation file");
    check->add_option("path", path_a, "Algebra file")->required();

    CLI::App* axioms = app.add_subcommand(
        "axioms", "Run the randomized model-structure axiom suite");
    axioms->add_option("algebra", algebra_ref,
                       "Algebra reference (builtin spec or file)")
        ->required();
    axioms->add_option("--seed", seed, "Sampler seed");
    axioms->add_option("--samples", samples, "Instances per axiom");
    axioms->add_option("--dim-bound", dim_bound,
                       "Maximum module dimension sampled");
    add_format(axioms);

    CLI::App* shom = app.add_subcommand(
        "stable-hom", "Dimension and representatives of the stable hom");
    shom->add_option("algebra", algebra_ref, "Algebra reference")->required();
    shom->add_option("source", path_a, "Source module reference")->required();
    shom->add_option("target", path_b, "Target module reference")->required();
    add_format(shom);

    CLI::App* orbit = app.add_subcommand(
        "omega-orbit", "Iterated loop (syzygy) orbit of a module");
    orbit->add_option("algebra", algebra_ref, "Algebra reference")->required();
    orbit->add_option("module", path_a, "Module reference")->required();
    orbit->add_option("--steps", steps, "Number of loop steps");
    add_format(orbit);

    CLI::App* tri = app.add_subcommand(
        "triangle", "Build or compare the triangles of a fibration");
    tri->add_option("algebra", algebra_ref, "Algebra reference")->required();
    tri->add_option("morphism", path_a, "Morphism file")->required();
    tri->add_option("--which", which, "Construction to run")
        ->check(CLI::IsMember({"quillen", "happel", "compare"}));
    add_format(tri);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? kExitPass : kExitUsage;
    }

    try {
        if (check->parsed()) return cmd_check_algebra(path_a);
        if (axioms->parsed())
            return cmd_axioms(algebra_ref, seed, samples, dim_bound, format);
        if (shom->parsed())
            return cmd_stable_hom(algebra_ref, path_a, path_b, format);
        if (orbit->parsed())
            return cmd_omega_orbit(algebra_ref, path_a, steps, format);
        if (tri->parsed())
            return cmd_triangle(algebra_ref, path_a, which, format);
    } catch (const ParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitMathFailure;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitMathFailure;
    }
    return kExitUsage;
}
