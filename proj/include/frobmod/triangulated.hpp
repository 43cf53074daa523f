#pragma once

// The triangulated structure on the stable category: the loop functor from
// minimal projective covers, the left triangle a fibration induces, the
// Happel-style triangle built from the injective hull of the kernel, and a
// sign-sensitive comparison of left triangles.

#include "frobmod/model.hpp"

#include <optional>
#include <string>
#include <vector>

namespace frobmod {

/// Loop (syzygy) of an object, computed from the minimal cover; the result
/// is shared across calls because covers are memoized.
inline ModulePtr loop_on_object(const ModulePtr& x) { return syzygy(x); }

/// The loop of a morphism: a lift between the covers together with its
/// restriction to the syzygies.
struct LoopData {
    ModuleHom cover_lift; // P(X) -> P(Y), deflation-compatible
    ModuleHom on_loops;   // loop(X) -> loop(Y)
};

inline LoopData loop_on_morphism(const ModuleHom& f) {
    Conflation cx = projective_cover(f.source());
    Conflation cy = projective_cover(f.target());
    auto lift = solve_hom_equation(hom_space(cx.mid(), cy.mid()),
                                   cy.deflation, f.after(cx.deflation));
    if (!lift)
        throw ValidationError("loop_on_morphism: cover lift missing");
    // The lift maps ker p_X into ker p_Y; restrict.
    ModuleHom restricted = lift->after(cx.inflation);
    auto into = solve(cy.inflation.matrix(), restricted.matrix());
    if (!into)
        throw ValidationError("loop_on_morphism: lift escapes the syzygy");
    ModuleHom kappa = ModuleHom::derived(cx.sub(), cy.sub(),
                                         into->particular);
    return {std::move(*lift), std::move(kappa)};
}

/// A left triangle loop(base) -> cone -> mid -> base in the stable
/// category, tagged with the construction that produced it.
struct TriangleData {
    ModulePtr loop, cone, mid, base;
    ModuleHom first;  // loop -> cone
    ModuleHom second; // cone -> mid
    ModuleHom third;  // mid -> base
    std::string provenance; // "quillen" or "happel"
};

/// The left triangle a fibration f : X ->> Y induces directly: the kernel
/// conflation extended by -xi_f, where xi_f restricts a lift of the cover
/// deflation of Y through f.
inline TriangleData quillen_left_triangle(const ModuleHom& f) {
    if (!f.is_surjective())
        throw ValidationError("quillen_left_triangle: not a fibration");
    SubobjectData ker = kernel(f);
    Conflation cov = projective_cover(f.target());
    // delta: P(Y) -> X with f delta = p_Y (projectivity of the cover).
    auto delta = solve_hom_equation(hom_space(cov.mid(), f.source()), f,
                                    cov.deflation);
    if (!delta)
        throw ValidationError("quillen_left_triangle: cover lift missing");
    // On the syzygy, f delta = p_Y vanishes, so delta lands in ker f.
    ModuleHom restricted = delta->after(cov.inflation);
    auto into = solve(ker.inclusion.matrix(), restricted.matrix());
    if (!into)
        throw ValidationError("quillen_left_triangle: lift escapes kernel");
    ModuleHom xi = ModuleHom::derived(cov.sub(), ker.object,
                                      into->particular);
    return {cov.sub(), ker.object, f.source(), f.target(),
            -xi, ker.inclusion, f, "quillen"};
}

namespace detail {

/// Solve for a map out of a pushout (or any object presented by a
/// surjection with two legs) given its two components.
inline ModuleHom from_pushout(const PushoutData& po, const ModuleHom& left,
                              const ModuleHom& right,
                              const ModulePtr& target) {
    Matrix proj = po.from_left.matrix().hcat(po.from_right.matrix());
    Matrix want = left.matrix().hcat(right.matrix());
    auto sol = solve(proj.transposed(), want.transposed());
    if (!sol)
        throw ValidationError("from_pushout: components not compatible");
    return ModuleHom::derived(po.object, target,
                              sol->particular.transposed());
}

} // namespace detail

/// Deterministic search for a stable isomorphism x -> y over an affine set
/// of candidates (particular + span of slack directions), testing weak
/// equivalence.  Sweeps exhaustively when the set is small, otherwise draws
/// seeded samples.
inline std::optional<ModuleHom>
stable_iso_in_affine_set(const ModuleHom& particular,
                         const std::vector<ModuleHom>& directions) {
    const Residue p = particular.matrix().modulus();
    auto candidate = [&](const std::vector<Residue>& coeff)
        -> std::optional<ModuleHom> {
        ModuleHom h = particular;
        for (std::size_t j = 0; j < directions.size(); ++j)
            if (coeff[j] != 0) h = h + directions[j].scaled(coeff[j]);
        if (is_weak_equivalence(h)) return h;
        return std::nullopt;
    };
    std::vector<Residue> coeff(directions.size(), 0);
    double log_count = directions.size() * std::log2(double(p));
    if (log_count <= 12.0) {
        if (auto h = candidate(coeff)) return h;
        while (true) {
            std::size_t pos = 0;
            while (pos < coeff.size()) {
                if (++coeff[pos] < p) break;
                coeff[pos++] = 0;
            }
            if (pos == coeff.size()) break;
            if (auto h = candidate(coeff)) return h;
        }
        return std::nullopt;
    }
    std::mt19937_64 rng(kSamplingSeed);
    for (std::uint64_t it = 0; it < 4096; ++it) {
        if (auto h = candidate(coeff)) return h;
        for (auto& c : coeff) c = Residue(rng() % p);
    }
    return std::nullopt;
}

/// Stable isomorphism search across the whole hom space.
inline std::optional<ModuleHom> stable_iso_search(const ModulePtr& x,
                                                  const ModulePtr& y) {
    std::vector<ModuleHom> basis = hom_space(x, y);
    if (x->dim() == 0 && y->dim() == 0)
        return ModuleHom::zero(x, y);
    ModuleHom zero = ModuleHom::zero(x, y);
    return stable_iso_in_affine_set(zero, basis);
}

/// The Happel-style left triangle of a fibration: push the kernel out along
/// its injective hull to form the cone, identify the cone with the base by
/// the induced weak equivalence, pull the connecting map back, and loop it
/// down to the kernel.
inline TriangleData happel_left_triangle(const ModuleHom& f) {
    if (!f.is_surjective())
        throw ValidationError("happel_left_triangle: not a fibration");
    SubobjectData ker = kernel(f);
    Conflation hull = injective_hull(ker.object);
    PushoutData po = pushout(ker.inclusion, hull.inflation);
    const ModulePtr& sigma = hull.quot(); // suspension of the kernel
    // w : cone -> suspension, zero on the X leg, hull deflation on the
    // injective leg.
    ModuleHom w = detail::from_pushout(
        po, ModuleHom::zero(f.source(), sigma), hull.deflation, sigma);
    // phi : cone -> Y induced by (f, 0); a weak equivalence.
    ModuleHom phi = detail::from_pushout(
        po, f, ModuleHom::zero(hull.mid(), f.target()), f.target());
    auto psi = stable_inverse(phi);
    if (!psi)
        throw ValidationError("happel_left_triangle: cone comparison is not "
                              "a stable isomorphism");
    // Connecting morphism Y -> suspension and its loop down to the kernel.
    ModuleHom connecting = w.after(*psi);
    LoopData looped = loop_on_morphism(connecting);
    // Canonical identification of loop(suspension) with the kernel: lift
    // the hull deflation through the minimal cover of the suspension; the
    // induced map on the kernels of the two deflations is a stable
    // isomorphism, determined up to stable equality.
    Conflation cov_sigma = projective_cover(sigma);
    auto t = solve_hom_equation(hom_space(hull.mid(), cov_sigma.mid()),
                                cov_sigma.deflation, hull.deflation);
    if (!t)
        throw ValidationError("happel_left_triangle: hull does not lift "
                              "through the cover of the suspension");
    ModuleHom restricted = t->after(hull.inflation);
    auto into = solve(cov_sigma.inflation.matrix(), restricted.matrix());
    if (!into)
        throw ValidationError("happel_left_triangle: lifted hull escapes "
                              "the syzygy");
    ModuleHom alpha_inv = ModuleHom::derived(ker.object, cov_sigma.sub(),
                                             into->particular);
    auto alpha = stable_inverse(alpha_inv);
    if (!alpha)
        throw ValidationError("happel_left_triangle: canonical comparison "
                              "with the kernel is not invertible");
    // The orientation choices made in w, phi and the canonical
    // identification compose to one net sign; it is fixed here so that the
    // two constructions agree, and the comparison suite checks that the
    // opposite sign breaks the match in odd characteristic.
    ModuleHom first = alpha->after(looped.on_loops);
    return {loop_on_object(f.target()), ker.object, f.source(), f.target(),
            std::move(first), ker.inclusion, f, "happel"};
}

/// Decide whether two left triangles over the same mid and base objects are
/// isomorphic by a triangle morphism that is the identity on mid and base
/// (hence the identity on the loop slot, which the base determines).  Only
/// the cone component delta is searched: it must be a stable isomorphism
/// with second_b delta ~ second_a and delta first_a ~ first_b.  Fixing the
/// loop component keeps the comparison sensitive to the sign of the first
/// map.
inline bool triangles_match(const TriangleData& a, const TriangleData& b) {
    if (a.mid.get() != b.mid.get() || a.base.get() != b.base.get() ||
        a.loop.get() != b.loop.get())
        throw ValidationError("triangles_match: triangles must share mid, "
                              "base and loop objects");
    if (!stable_equal(a.third, b.third)) return false;
    const Residue p = a.first.matrix().modulus();
    std::vector<ModuleHom> delta_basis = hom_space(a.cone, b.cone);
    Conflation cov_mid = projective_cover(a.mid);
    Conflation cov_cone = projective_cover(b.cone);
    std::vector<ModuleHom> u_basis = hom_space(a.cone, cov_mid.mid());
    std::vector<ModuleHom> v_basis = hom_space(a.loop, cov_cone.mid());
    // Joint system: second_b delta - p_mid u = second_a   (na x nc cells)
    //               delta first_a - p_cone v = first_b    (nb x nl cells)
    const std::size_t cells1 = a.mid->dim() * a.cone->dim();
    const std::size_t cells2 = b.cone->dim() * a.loop->dim();
    const std::size_t cols =
        delta_basis.size() + u_basis.size() + v_basis.size();
    Matrix sys(p, cells1 + cells2, cols);
    auto put = [&](std::size_t col, const Matrix& top, std::size_t offset) {
        for (std::size_t r = 0; r < top.rows(); ++r)
            for (std::size_t c = 0; c < top.cols(); ++c)
                sys.at(offset + r * top.cols() + c, col) = top.at(r, c);
    };
    std::size_t col = 0;
    for (const auto& d : delta_basis) {
        put(col, b.second.matrix() * d.matrix(), 0);
        put(col, d.matrix() * a.first.matrix(), cells1);
        ++col;
    }
    for (const auto& u : u_basis)
        put(col++, -(cov_mid.deflation.matrix() * u.matrix()), 0);
    for (const auto& v : v_basis)
        put(col++, -(cov_cone.deflation.matrix() * v.matrix()), cells1);
    Matrix rhs(p, cells1 + cells2, 1);
    for (std::size_t r = 0; r < a.second.matrix().rows(); ++r)
        for (std::size_t c = 0; c < a.second.matrix().cols(); ++c)
            rhs.at(r * a.second.matrix().cols() + c, 0) =
                a.second.matrix().at(r, c);
    for (std::size_t r = 0; r < b.first.matrix().rows(); ++r)
        for (std::size_t c = 0; c < b.first.matrix().cols(); ++c)
            rhs.at(cells1 + r * b.first.matrix().cols() + c, 0) =
                b.first.matrix().at(r, c);
    auto sol = solve(sys, rhs);
    if (!sol) return false;
    auto project_delta = [&](const Matrix& coeff) {
        ModuleHom d = ModuleHom::zero(a.cone, b.cone);
        for (std::size_t j = 0; j < delta_basis.size(); ++j)
            d = d + delta_basis[j].scaled(coeff.at(j, 0));
        return d;
    };
    ModuleHom particular = project_delta(sol->particular);
    std::vector<ModuleHom> directions;
    for (const auto& k : sol->kernel_basis) {
        ModuleHom d = project_delta(k);
        if (!d.matrix().is_zero()) directions.push_back(std::move(d));
    }
    return stable_iso_in_affine_set(particular, directions).has_value();
}

} // namespace frobmod
