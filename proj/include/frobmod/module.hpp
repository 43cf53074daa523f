#pragma once

// Finite-dimensional left modules over a checked Frobenius algebra and the
// category-level constructions on them: hom spaces, kernels/cokernels,
// biproducts, pullbacks/pushouts, radicals, minimal projective covers,
// injective hulls, projectivity tests and isomorphism search.

#include "frobmod/algebra.hpp"

#include <atomic>
#include <cmath>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <random>
#include <vector>

namespace frobmod {

class ModuleRep;
using ModulePtr = std::shared_ptr<const ModuleRep>;

/// A left module given by one action matrix per algebra basis element.
/// Validated at construction; immutable afterwards.
class ModuleRep {
public:
    /// Full validation of the supplied action matrices; use for untrusted
    /// input (files, tests).
    static ModulePtr make(AlgebraPtr alg, std::vector<Matrix> action) {
        return ModulePtr(new ModuleRep(std::move(alg), std::move(action), true));
    }

    /// Shape checks only.  For actions derived by the constructions in
    /// this header, which are representations by construction.
    static ModulePtr make_derived(AlgebraPtr alg, std::vector<Matrix> action) {
        return ModulePtr(
            new ModuleRep(std::move(alg), std::move(action), false));
    }

    static ModulePtr zero(AlgebraPtr alg) {
        std::vector<Matrix> act(alg->dim(),
                                Matrix(alg->modulus(), 0, 0));
        return make_derived(std::move(alg), std::move(act));
    }

    /// Free module A^copies, basis indexed copy-major: (copy, algebra basis
    /// element) -> copy * d + element.
    static ModulePtr free(AlgebraPtr alg, std::size_t copies) {
        const std::size_t d = alg->dim();
        std::vector<Matrix> act;
        act.reserve(d);
        for (std::size_t i = 0; i < d; ++i) {
            Matrix m(alg->modulus(), 0, 0);
            for (std::size_t c = 0; c < copies; ++c)
                m = block_diag(m, alg->left_regular(i));
            act.push_back(std::move(m));
        }
        return make_derived(std::move(alg), std::move(act));
    }

    static ModulePtr regular(AlgebraPtr alg) { return free(std::move(alg), 1); }

    const AlgebraPtr& algebra() const { return alg_; }
    Residue modulus() const { return alg_->modulus(); }
    std::size_t dim() const { return dim_; }
    std::uint64_t uid() const { return uid_; }

    const Matrix& action(std::size_t i) const { return action_[i]; }

    /// Action of an arbitrary algebra element given by its coordinate
    /// column vector.
    Matrix action_of(const Matrix& coords) const {
        Matrix m(modulus(), dim_, dim_);
        for (std::size_t i = 0; i < alg_->dim(); ++i) {
            Residue c = coords.at(i, 0);
            if (c != 0) m = m + action_[i].scaled(c);
        }
        return m;
    }

    bool same_representation(const ModuleRep& o) const {
        return alg_.get() == o.alg_.get() && dim_ == o.dim_ &&
               action_ == o.action_;
    }

    /// Full validation (used by the checked factory and available to
    /// property tests for derived modules).
public:
    void validate_representation() const {
        const std::size_t d = alg_->dim();
        // action(1) = identity.
        Matrix unit_act(alg_->modulus(), dim_, dim_);
        for (std::size_t i = 0; i < d; ++i) {
            Residue c = alg_->presentation().unit[i];
            if (c != 0) unit_act = unit_act + action_[i].scaled(c);
        }
        if (!(unit_act == Matrix::identity(alg_->modulus(), dim_)))
            throw ValidationError("ModuleRep: unit does not act as identity");
        // Structure constants respected.
        for (std::size_t i = 0; i < d; ++i)
            for (std::size_t j = 0; j < d; ++j) {
                Matrix lhs = action_[i] * action_[j];
                Matrix rhs(alg_->modulus(), dim_, dim_);
                for (std::size_t k = 0; k < d; ++k) {
                    Residue c = alg_->presentation().c(i, j, k);
                    if (c != 0) rhs = rhs + action_[k].scaled(c);
                }
                if (!(lhs == rhs))
                    throw ValidationError(
                        "ModuleRep: action violates structure constants at (" +
                        std::to_string(i) + "," + std::to_string(j) + ")");
            }
    }

private:
    ModuleRep(AlgebraPtr alg, std::vector<Matrix> action, bool full_check)
        : alg_(std::move(alg)), action_(std::move(action)),
          uid_(next_uid()++) {
        const std::size_t d = alg_->dim();
        if (action_.size() != d)
            throw ValidationError("ModuleRep: need one action matrix per "
                                  "algebra basis element");
        dim_ = action_.empty() ? 0 : action_[0].rows();
        for (const auto& m : action_)
            if (m.rows() != dim_ || m.cols() != dim_ ||
                m.modulus() != alg_->modulus())
                throw ValidationError("ModuleRep: action matrix shape mismatch");
        if (full_check) validate_representation();
    }

    static std::atomic<std::uint64_t>& next_uid() {
        static std::atomic<std::uint64_t> c{1};
        return c;
    }

    AlgebraPtr alg_;
    std::vector<Matrix> action_;
    std::size_t dim_ = 0;
    std::uint64_t uid_;
};

/// A module homomorphism: matrix of size target.dim x source.dim with the
/// intertwining property, verified at construction.
class ModuleHom {
    struct derived_t {};

public:
    ModuleHom(ModulePtr source, ModulePtr target, Matrix matrix)
        : ModuleHom(derived_t{}, std::move(source), std::move(target),
                    std::move(matrix)) {
        // Intertwining with the algebra generators implies intertwining
        // with every element.
        for (std::size_t i : source_->algebra()->generator_indices())
            if (!(mat_ * source_->action(i) == target_->action(i) * mat_))
                throw ValidationError(
                    "ModuleHom: matrix does not intertwine the actions "
                    "(basis element " +
                    std::to_string(i) + ")");
    }

    /// Shape checks only; for matrices that intertwine by construction
    /// (solutions of the intertwining system, composites, sums).
    static ModuleHom derived(ModulePtr source, ModulePtr target,
                             Matrix matrix) {
        return ModuleHom(derived_t{}, std::move(source), std::move(target),
                         std::move(matrix));
    }

    static ModuleHom identity(const ModulePtr& x) {
        return ModuleHom(x, x, Matrix::identity(x->modulus(), x->dim()));
    }

    static ModuleHom zero(const ModulePtr& x, const ModulePtr& y) {
        return ModuleHom(x, y, Matrix(x->modulus(), y->dim(), x->dim()));
    }

    const ModulePtr& source() const { return source_; }
    const ModulePtr& target() const { return target_; }
    const Matrix& matrix() const { return mat_; }

    bool is_injective() const { return rank(mat_) == source_->dim(); }
    bool is_surjective() const { return rank(mat_) == target_->dim(); }
    bool is_zero() const { return mat_.is_zero(); }

    /// Composition: (*this) after g.
    ModuleHom after(const ModuleHom& g) const {
        if (!source_->same_representation(*g.target_))
            throw ValidationError("ModuleHom::after: domain mismatch");
        return derived(g.source_, target_, mat_ * g.mat_);
    }

    ModuleHom operator+(const ModuleHom& o) const {
        require_parallel(o);
        return derived(source_, target_, mat_ + o.mat_);
    }
    ModuleHom operator-(const ModuleHom& o) const {
        require_parallel(o);
        return derived(source_, target_, mat_ - o.mat_);
    }
    ModuleHom operator-() const { return derived(source_, target_, -mat_); }
    ModuleHom scaled(Residue c) const {
        return derived(source_, target_, mat_.scaled(c));
    }

private:
    ModuleHom(derived_t, ModulePtr source, ModulePtr target, Matrix matrix)
        : source_(std::move(source)), target_(std::move(target)),
          mat_(std::move(matrix)) {
        if (source_->algebra().get() != target_->algebra().get())
            throw ValidationError("ModuleHom: algebra mismatch");
        if (mat_.rows() != target_->dim() || mat_.cols() != source_->dim())
            throw ValidationError("ModuleHom: matrix shape mismatch");
    }

    void require_parallel(const ModuleHom& o) const {
        if (!source_->same_representation(*o.source_) ||
            !target_->same_representation(*o.target_))
            throw ValidationError("ModuleHom: not parallel");
    }

    ModulePtr source_, target_;
    Matrix mat_;
};

/// A verified kernel-cokernel pair: inflation injective, deflation
/// surjective, image(inflation) = kernel(deflation), all exact.
struct Conflation {
    ModuleHom inflation; // A -> B
    ModuleHom deflation; // B -> C

    Conflation(ModuleHom i, ModuleHom d)
        : inflation(std::move(i)), deflation(std::move(d)) {
        if (!inflation.target()->same_representation(*deflation.source()))
            throw ValidationError("Conflation: middle object mismatch");
        if (!inflation.is_injective())
            throw ValidationError("Conflation: inflation not injective");
        if (!deflation.is_surjective())
            throw ValidationError("Conflation: deflation not surjective");
        if (!(deflation.matrix() * inflation.matrix()).is_zero())
            throw ValidationError("Conflation: composite nonzero");
        // Exactness in the middle by rank count.
        if (rank(inflation.matrix()) + rank(deflation.matrix()) !=
            inflation.target()->dim())
            throw ValidationError("Conflation: not exact in the middle");
    }

    const ModulePtr& sub() const { return inflation.source(); }
    const ModulePtr& mid() const { return inflation.target(); }
    const ModulePtr& quot() const { return deflation.target(); }
};

// ---------------------------------------------------------------------------
// Hom spaces
// ---------------------------------------------------------------------------

/// Basis of Hom_A(x, y), as the solution space of the intertwining
/// equations M a_x(g) = a_y(g) M over the algebra generators.
/// Deterministic basis order (kernel of the vectorized system in rref
/// parametrization); memoized per module-instance pair.
inline std::vector<ModuleHom> hom_space(const ModulePtr& x,
                                        const ModulePtr& y) {
    if (x->algebra().get() != y->algebra().get())
        throw ValidationError("hom_space: algebra mismatch");

    static std::mutex cache_mutex;
    static std::map<std::pair<std::uint64_t, std::uint64_t>,
                    std::vector<ModuleHom>>
        cache;
    const auto key = std::make_pair(x->uid(), y->uid());
    {
        std::scoped_lock lk(cache_mutex);
        if (auto it = cache.find(key); it != cache.end()) return it->second;
    }

    const Residue p = x->modulus();
    const std::size_t nx = x->dim(), ny = y->dim();
    const auto& gens = x->algebra()->generator_indices();
    const std::size_t unknowns = nx * ny; // M[a][c] at index a*nx + c
    Matrix sys(p, gens.size() * unknowns, unknowns);
    for (std::size_t gi = 0; gi < gens.size(); ++gi) {
        const Matrix& ax = x->action(gens[gi]);
        const Matrix& ay = y->action(gens[gi]);
        for (std::size_t a = 0; a < ny; ++a)
            for (std::size_t b = 0; b < nx; ++b) {
                const std::size_t row = (gi * ny + a) * nx + b;
                // (M ax)[a][b] = sum_c M[a][c] ax[c][b]
                for (std::size_t c = 0; c < nx; ++c)
                    sys.at(row, a * nx + c) =
                        fp::add(sys.at(row, a * nx + c), ax.at(c, b), p);
                // -(ay M)[a][b] = -sum_r ay[a][r] M[r][b]
                for (std::size_t r = 0; r < ny; ++r)
                    sys.at(row, r * nx + b) = fp::sub(
                        sys.at(row, r * nx + b), ay.at(a, r), p);
            }
    }
    std::vector<ModuleHom> basis;
    for (const auto& v : kernel_basis(sys)) {
        Matrix m(p, ny, nx);
        for (std::size_t a = 0; a < ny; ++a)
            for (std::size_t b = 0; b < nx; ++b) m.at(a, b) = v.at(a * nx + b, 0);
        basis.push_back(ModuleHom::derived(x, y, std::move(m)));
    }
    std::scoped_lock lk(cache_mutex);
    return cache.emplace(key, std::move(basis)).first->second;
}

// ---------------------------------------------------------------------------
// Kernels, cokernels, biproducts, pullbacks, pushouts
// ---------------------------------------------------------------------------

struct SubobjectData {
    ModulePtr object;
    ModuleHom inclusion;
};

struct QuotientData {
    ModulePtr object;
    ModuleHom projection;
};

namespace detail {

/// Module structure on the span of the columns of basis (columns linearly
/// independent, span invariant under the ambient action).
inline SubobjectData submodule_from_basis(const ModulePtr& ambient,
                                          const Matrix& basis) {
    const std::size_t d = ambient->algebra()->dim();
    std::vector<Matrix> act;
    act.reserve(d);
    for (std::size_t i = 0; i < d; ++i) {
        auto s = solve(basis, ambient->action(i) * basis);
        if (!s)
            throw ValidationError("submodule_from_basis: span not invariant");
        act.push_back(s->particular);
    }
    ModulePtr sub = ModuleRep::make_derived(ambient->algebra(), std::move(act));
    return {sub, ModuleHom(sub, ambient, basis)};
}

/// Extend the (independent) columns of basis to a full basis of F_p^n by
/// greedily appending standard basis vectors.
inline Matrix extend_to_full_basis(const Matrix& basis, std::size_t n) {
    Matrix full = basis;
    std::size_t r = rank(full);
    for (std::size_t j = 0; j < n && r < n; ++j) {
        Matrix e(basis.modulus(), n, 1);
        e.at(j, 0) = 1;
        Matrix cand = full.hcat(e);
        if (rank(cand) > r) {
            full = std::move(cand);
            ++r;
        }
    }
    return full;
}

} // namespace detail

inline SubobjectData kernel(const ModuleHom& f) {
    const Matrix basis = columns_to_matrix(
        f.matrix().modulus(), f.source()->dim(), kernel_basis(f.matrix()));
    return detail::submodule_from_basis(f.source(), basis);
}

inline QuotientData cokernel(const ModuleHom& f) {
    const ModulePtr& y = f.target();
    const Residue p = f.matrix().modulus();
    const std::size_t n = y->dim();
    Matrix img = columns_to_matrix(p, n, image_basis(f.matrix()));
    const std::size_t r = img.cols();
    Matrix full = detail::extend_to_full_basis(img, n); // [img | W]
    Matrix inv = *inverse(full);
    Matrix q = inv.submatrix(r, 0, n - r, n);       // quotient coordinates
    Matrix w = full.submatrix(0, r, n, n - r);      // right inverse of q
    const std::size_t d = y->algebra()->dim();
    std::vector<Matrix> act;
    act.reserve(d);
    for (std::size_t i = 0; i < d; ++i) act.push_back(q * y->action(i) * w);
    ModulePtr c = ModuleRep::make_derived(y->algebra(), std::move(act));
    return {c, ModuleHom(y, c, q)};
}

struct BiproductData {
    ModulePtr object;
    ModuleHom inj_left, inj_right;
    ModuleHom proj_left, proj_right;
};

inline BiproductData direct_sum(const ModulePtr& x, const ModulePtr& y) {
    if (x->algebra().get() != y->algebra().get())
        throw ValidationError("direct_sum: algebra mismatch");
    const Residue p = x->modulus();
    const std::size_t d = x->algebra()->dim();
    std::vector<Matrix> act;
    act.reserve(d);
    for (std::size_t i = 0; i < d; ++i)
        act.push_back(block_diag(x->action(i), y->action(i)));
    ModulePtr s = ModuleRep::make_derived(x->algebra(), std::move(act));
    const std::size_t nx = x->dim(), ny = y->dim();
    Matrix il(p, nx + ny, nx), ir(p, nx + ny, ny);
    Matrix pl(p, nx, nx + ny), pr(p, ny, nx + ny);
    for (std::size_t i = 0; i < nx; ++i) {
        il.at(i, i) = 1;
        pl.at(i, i) = 1;
    }
    for (std::size_t i = 0; i < ny; ++i) {
        ir.at(nx + i, i) = 1;
        pr.at(i, nx + i) = 1;
    }
    return {s, ModuleHom(x, s, il), ModuleHom(y, s, ir), ModuleHom(s, x, pl),
            ModuleHom(s, y, pr)};
}

struct PullbackData {
    ModulePtr object;
    ModuleHom to_left;  // W -> X
    ModuleHom to_right; // W -> Y
};

/// Pullback of f: X -> Z, g: Y -> Z, realized as ker((f, -g): X + Y -> Z).
inline PullbackData pullback(const ModuleHom& f, const ModuleHom& g) {
    if (!f.target()->same_representation(*g.target()))
        throw ValidationError("pullback: codomain mismatch");
    BiproductData sum = direct_sum(f.source(), g.source());
    ModuleHom joint = f.after(sum.proj_left) - g.after(sum.proj_right);
    SubobjectData k = kernel(joint);
    return {k.object, sum.proj_left.after(k.inclusion),
            sum.proj_right.after(k.inclusion)};
}

struct PushoutData {
    ModulePtr object;
    ModuleHom from_left;  // X -> W
    ModuleHom from_right; // Y -> W
};

/// Pushout of f: Z -> X, g: Z -> Y, realized as cok((f, -g)^T: Z -> X + Y).
inline PushoutData pushout(const ModuleHom& f, const ModuleHom& g) {
    if (!f.source()->same_representation(*g.source()))
        throw ValidationError("pushout: domain mismatch");
    BiproductData sum = direct_sum(f.target(), g.target());
    ModuleHom joint = sum.inj_left.after(f) - sum.inj_right.after(g);
    QuotientData c = cokernel(joint);
    return {c.object, c.projection.after(sum.inj_left),
            c.projection.after(sum.inj_right)};
}

// ---------------------------------------------------------------------------
// Radical, top, covers, hulls
// ---------------------------------------------------------------------------

inline SubobjectData radical_submodule(const ModulePtr& x) {
    const Residue p = x->modulus();
    const std::size_t n = x->dim();
    Matrix span(p, n, 0);
    for (const auto& r : x->algebra()->radical())
        span = span.hcat(x->action_of(r));
    Matrix basis = columns_to_matrix(p, n, image_basis(span));
    return detail::submodule_from_basis(x, basis);
}

inline QuotientData top(const ModulePtr& x) {
    SubobjectData rad = radical_submodule(x);
    ModuleHom incl = rad.inclusion;
    return cokernel(incl);
}

/// Minimal projective cover conflation  Omega(X) -> P(X) -> X  with
/// P(X) = A^g, g = dim top(X).  The deflation sends the generators of the
/// free module to lifts of a basis of top(X); minimality (ker p inside
/// rad P) is verified and holds whenever the algebra is local, which covers
/// all builtin families.
inline Conflation projective_cover(const ModulePtr& x) {
    static std::mutex cache_mutex;
    static std::map<std::uint64_t, Conflation> cache;
    {
        std::scoped_lock lk(cache_mutex);
        if (auto it = cache.find(x->uid()); it != cache.end())
            return it->second;
    }
    const AlgebraPtr& alg = x->algebra();
    const Residue p = x->modulus();
    const std::size_t d = alg->dim();
    QuotientData t = top(x);
    const std::size_t g = t.object->dim();
    ModulePtr cover = ModuleRep::free(alg, g);
    // Generators x_t: lifts of the standard basis of top(X).
    Matrix defl(p, x->dim(), g * d);
    for (std::size_t tcol = 0; tcol < g; ++tcol) {
        Matrix e(p, g, 1);
        e.at(tcol, 0) = 1;
        auto sol = solve(t.projection.matrix(), e);
        if (!sol)
            throw ValidationError("projective_cover: top projection not "
                                  "surjective");
        Matrix gen = sol->particular;
        for (std::size_t i = 0; i < d; ++i) {
            Matrix col = x->action(i) * gen;
            for (std::size_t r = 0; r < x->dim(); ++r)
                defl.at(r, tcol * d + i) = col.at(r, 0);
        }
    }
    ModuleHom pmap(cover, x, defl);
    if (!pmap.is_surjective())
        throw ValidationError("projective_cover: deflation not surjective");
    SubobjectData syz = kernel(pmap);
    // Minimality: ker p inside rad(P) = (rad A)^g.
    if (syz.object->dim() > 0) {
        Matrix rad_p(p, cover->dim(), 0);
        for (const auto& r : alg->radical())
            rad_p = rad_p.hcat(cover->action_of(r));
        if (!column_space_contains(rad_p, syz.inclusion.matrix()))
            throw ValidationError(
                "projective_cover: kernel escapes the radical; the free "
                "cover is minimal only over local algebras");
    }
    Conflation result(syz.inclusion, pmap);
    std::scoped_lock lk(cache_mutex);
    return cache.emplace(x->uid(), std::move(result)).first->second;
}

inline ModulePtr syzygy(const ModulePtr& x) {
    return projective_cover(x).sub();
}

/// The dual vector space of x as a module over the opposite algebra
/// (actions transpose).
inline ModulePtr dual_module(const ModulePtr& x) {
    AlgebraPtr op = x->algebra()->opposite();
    std::vector<Matrix> act;
    act.reserve(op->dim());
    for (std::size_t i = 0; i < op->dim(); ++i)
        act.push_back(x->action(i).transposed());
    return ModuleRep::make_derived(std::move(op), std::move(act));
}

/// Injective hull conflation  X -> I(X) -> Sigma(X), computed by taking the
/// projective cover of the dual module over the opposite algebra and
/// dualizing back.  The middle term is injective (= projective) because the
/// algebra is Frobenius.
inline Conflation injective_hull(const ModulePtr& x) {
    ModulePtr xop = dual_module(x);
    Conflation cov = projective_cover(xop);
    ModulePtr hull = dual_module(cov.mid());      // over (A^op)^op = A
    ModulePtr cosyz = dual_module(cov.sub());
    // Dual of the cover deflation P -> X^op is the inclusion X -> I(X);
    // dual of the cover inflation is the deflation I(X) -> Sigma(X).
    ModuleHom incl(x, hull, cov.deflation.matrix().transposed());
    ModuleHom defl(hull, cosyz, cov.inflation.matrix().transposed());
    return Conflation(std::move(incl), std::move(defl));
}

inline ModulePtr cosyzygy(const ModulePtr& x) {
    return injective_hull(x).quot();
}

// ---------------------------------------------------------------------------
// Projectivity and isomorphism search
// ---------------------------------------------------------------------------

/// Affine solution set of a linear hom equation over a hom basis:
/// particular solution plus a basis of the homogeneous solutions.
struct HomAffineSolutions {
    ModuleHom particular;
    std::vector<ModuleHom> homogeneous;
};

namespace detail {

inline void vectorize_into(Matrix& sys, std::size_t col, const Matrix& m) {
    for (std::size_t r = 0; r < m.rows(); ++r)
        for (std::size_t c = 0; c < m.cols(); ++c)
            sys.at(r * m.cols() + c, col) = m.at(r, c);
}

/// Core solver: find coefficients a with sum_j a_j transformed_j == want
/// and assemble the solutions over the original basis.
inline std::optional<HomAffineSolutions>
solve_over_basis(const std::vector<ModuleHom>& basis,
                 const std::vector<Matrix>& transformed,
                 const ModuleHom& want, const ModulePtr& sol_source,
                 const ModulePtr& sol_target) {
    const Residue p = want.matrix().modulus();
    const std::size_t rows = want.matrix().rows() * want.matrix().cols();
    Matrix sys(p, rows, basis.size());
    for (std::size_t j = 0; j < basis.size(); ++j)
        vectorize_into(sys, j, transformed[j]);
    Matrix rhs(p, rows, 1);
    for (std::size_t r = 0; r < want.matrix().rows(); ++r)
        for (std::size_t c = 0; c < want.matrix().cols(); ++c)
            rhs.at(r * want.matrix().cols() + c, 0) = want.matrix().at(r, c);
    auto sol = solve(sys, rhs);
    if (!sol) return std::nullopt;
    auto assemble = [&](const Matrix& coeff) {
        ModuleHom h = ModuleHom::zero(sol_source, sol_target);
        for (std::size_t j = 0; j < basis.size(); ++j)
            h = h + basis[j].scaled(coeff.at(j, 0));
        return h;
    };
    HomAffineSolutions out{assemble(sol->particular), {}};
    out.homogeneous.reserve(sol->kernel_basis.size());
    for (const auto& k : sol->kernel_basis) out.homogeneous.push_back(assemble(k));
    return out;
}

} // namespace detail

/// All solutions of (post after h) == want with h over the given basis.
inline std::optional<HomAffineSolutions>
solve_hom_post_all(const std::vector<ModuleHom>& basis, const ModuleHom& post,
                   const ModuleHom& want) {
    std::vector<Matrix> transformed;
    transformed.reserve(basis.size());
    for (const auto& b : basis) transformed.push_back(post.matrix() * b.matrix());
    ModulePtr src = basis.empty() ? want.source() : basis[0].source();
    ModulePtr tgt = basis.empty() ? post.source() : basis[0].target();
    return detail::solve_over_basis(basis, transformed, want, src, tgt);
}

/// All solutions of (h after pre) == want with h over the given basis.
inline std::optional<HomAffineSolutions>
solve_hom_pre_all(const std::vector<ModuleHom>& basis, const ModuleHom& pre,
                  const ModuleHom& want) {
    std::vector<Matrix> transformed;
    transformed.reserve(basis.size());
    for (const auto& b : basis) transformed.push_back(b.matrix() * pre.matrix());
    ModulePtr src = basis.empty() ? pre.target() : basis[0].source();
    ModulePtr tgt = basis.empty() ? want.target() : basis[0].target();
    return detail::solve_over_basis(basis, transformed, want, src, tgt);
}

/// One solution of (post after h) == want, or absent.
inline std::optional<ModuleHom>
solve_hom_equation(const std::vector<ModuleHom>& basis, const ModuleHom& post,
                   const ModuleHom& want) {
    auto all = solve_hom_post_all(basis, post, want);
    if (!all) return std::nullopt;
    return all->particular;
}

/// One solution of (h after pre) == want, or absent.
inline std::optional<ModuleHom>
solve_hom_equation_pre(const std::vector<ModuleHom>& basis,
                       const ModuleHom& pre, const ModuleHom& want) {
    auto all = solve_hom_pre_all(basis, pre, want);
    if (!all) return std::nullopt;
    return all->particular;
}

/// True iff the cover deflation P(X) -> X splits (searched by linear
/// solve); for a Frobenius algebra this decides both projectivity and
/// injectivity.
inline bool is_projective(const ModulePtr& x) {
    if (x->dim() == 0) return true;
    Conflation cov = projective_cover(x);
    auto section = solve_hom_equation(hom_space(x, cov.mid()), cov.deflation,
                                      ModuleHom::identity(x));
    return section.has_value();
}

namespace detail {

/// Fast projectivity test: with minimal covers, X is projective iff its
/// syzygy vanishes.  Agreement with the splitting search is asserted by
/// the property suite.
inline bool projective_via_minimal_cover(const ModulePtr& x) {
    return projective_cover(x).sub()->dim() == 0;
}

} // namespace detail

/// Exhaustion threshold for coefficient sweeps; above it a seeded sample is
/// used instead (seed below, recorded here so reports stay reproducible).
inline constexpr std::uint64_t kSweepThreshold = 1u << 16;
inline constexpr std::uint64_t kSamplingSeed = 0x5eed2024u;

/// Deterministic search for an invertible intertwiner x -> y.  Sweeps the
/// whole hom-space coefficient cube when |F_p|^dim <= 2^16, otherwise draws
/// 2^16 seeded samples.
inline std::optional<ModuleHom> iso_search(const ModulePtr& x,
                                           const ModulePtr& y) {
    if (x->algebra().get() != y->algebra().get())
        throw ValidationError("iso_search: algebra mismatch");
    if (x->dim() != y->dim()) return std::nullopt;
    const std::size_t n = x->dim();
    if (n == 0) return ModuleHom::zero(x, y);
    std::vector<ModuleHom> basis = hom_space(x, y);
    if (basis.empty()) return std::nullopt;
    const Residue p = x->modulus();
    double log_count = basis.size() * std::log2(double(p));
    auto candidate = [&](const std::vector<Residue>& coeff)
        -> std::optional<ModuleHom> {
        Matrix m(p, n, n);
        for (std::size_t j = 0; j < basis.size(); ++j)
            if (coeff[j] != 0) m = m + basis[j].matrix().scaled(coeff[j]);
        if (rank(m) == n) return ModuleHom(x, y, std::move(m));
        return std::nullopt;
    };
    std::vector<Residue> coeff(basis.size(), 0);
    if (log_count <= 16.0) {
        // Odometer sweep over all coefficient vectors.
        while (true) {
            std::size_t pos = 0;
            while (pos < coeff.size()) {
                if (++coeff[pos] < p) break;
                coeff[pos++] = 0;
            }
            if (pos == coeff.size()) break; // wrapped around: swept everything
            if (auto h = candidate(coeff)) return h;
        }
        return std::nullopt;
    }
    std::mt19937_64 rng(kSamplingSeed);
    for (std::uint64_t it = 0; it < kSweepThreshold; ++it) {
        for (auto& c : coeff) c = Residue(rng() % p);
        if (auto h = candidate(coeff)) return h;
    }
    return std::nullopt;
}

} // namespace frobmod
