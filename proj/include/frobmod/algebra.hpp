#pragma once

// Finite-dimensional Frobenius algebras over prime fields: presentation by
// structure constants, validation (associativity, unit, nondegeneracy of
// the Frobenius form), Jacobson radical, and the builtin families used by
// the verification suites.

#include "frobmod/linalg.hpp"

#include <cstdint>
#include <memory>
#include <mutex>
#include <string>
#include <vector>

namespace frobmod {

class ValidationError : public std::runtime_error {
public:
    explicit ValidationError(const std::string& what)
        : std::runtime_error(what) {}
};

/// Structure constants of a unital algebra of dimension d over F_p,
/// together with a candidate Frobenius functional lambda.
/// e_i * e_j = sum_k c[i][j][k] e_k, stored flat as c[(i*d + j)*d + k].
struct AlgebraPresentation {
    Residue p = 2;
    std::size_t dim = 0;
    std::vector<Residue> structure_constants; // d^3 residues
    std::vector<Residue> unit;                // coordinates of 1
    std::vector<Residue> frobenius_functional;
    std::vector<std::string> basis_names; // optional; empty or size dim
    std::string name;                     // optional display name

    Residue c(std::size_t i, std::size_t j, std::size_t k) const {
        return structure_constants[(i * dim + j) * dim + k];
    }
    Residue& c(std::size_t i, std::size_t j, std::size_t k) {
        return structure_constants[(i * dim + j) * dim + k];
    }

    /// Presentation of the opposite algebra (c^op_{ijk} = c_{jik}).
    AlgebraPresentation opposite() const {
        AlgebraPresentation o = *this;
        o.name = name.empty() ? "" : name + "^op";
        for (std::size_t i = 0; i < dim; ++i)
            for (std::size_t j = 0; j < dim; ++j)
                for (std::size_t k = 0; k < dim; ++k) o.c(i, j, k) = c(j, i, k);
        return o;
    }
};

class CheckedAlgebra;
using AlgebraPtr = std::shared_ptr<const CheckedAlgebra>;

namespace detail {

inline Matrix left_regular_matrix(const AlgebraPresentation& a,
                                  std::size_t i) {
    Matrix m(a.p, a.dim, a.dim);
    for (std::size_t j = 0; j < a.dim; ++j)
        for (std::size_t k = 0; k < a.dim; ++k) m.at(k, j) = a.c(i, j, k);
    return m;
}

/// Left multiplication by an arbitrary element (coordinate column vector).
inline Matrix left_mult_matrix(const AlgebraPresentation& a, const Matrix& v) {
    Matrix m(a.p, a.dim, a.dim);
    for (std::size_t i = 0; i < a.dim; ++i) {
        Residue ci = v.at(i, 0);
        if (ci == 0) continue;
        m = m + left_regular_matrix(a, i).scaled(ci);
    }
    return m;
}

// Square integer matrices modulo p^(i+1), used only by the radical
// computation below.
struct LiftMatrix {
    std::size_t n;
    std::uint64_t mod;
    std::vector<std::uint64_t> e; // row-major

    static LiftMatrix zero(std::size_t n, std::uint64_t mod) {
        return {n, mod, std::vector<std::uint64_t>(n * n, 0)};
    }
    std::uint64_t& at(std::size_t r, std::size_t c) { return e[r * n + c]; }
    std::uint64_t at(std::size_t r, std::size_t c) const { return e[r * n + c]; }

    LiftMatrix mul(const LiftMatrix& o) const {
        LiftMatrix r = zero(n, mod);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t k = 0; k < n; ++k) {
                std::uint64_t a = at(i, k);
                if (a == 0) continue;
                for (std::size_t j = 0; j < n; ++j)
                    r.at(i, j) = (r.at(i, j) + a * o.at(k, j)) % mod;
            }
        return r;
    }

    LiftMatrix pow(std::uint64_t exp) const {
        LiftMatrix acc = zero(n, mod);
        for (std::size_t i = 0; i < n; ++i) acc.at(i, i) = 1 % mod;
        LiftMatrix base = *this;
        while (exp > 0) {
            if (exp & 1) acc = acc.mul(base);
            base = base.mul(base);
            exp >>= 1;
        }
        return acc;
    }

    std::uint64_t trace() const {
        std::uint64_t t = 0;
        for (std::size_t i = 0; i < n; ++i) t = (t + at(i, i)) % mod;
        return t;
    }
};

/// Jacobson radical over the prime field by the Friedl-Ronyai p-adic trace
/// criterion.  Starting from the whole algebra, for i = 0, 1, ... while
/// p^i <= dim, intersect with
///   { x : Tr((L_x L_y)^(p^i)) == 0  (mod p^(i+1))  for all y in the
///     current space },
/// where L denotes the canonical integer lift of the left regular
/// representation (faithful, since the algebra is unital).  On the current
/// space the trace is divisible by p^i and the condition is F_p-linear in
/// x; the final space is the radical.
inline std::vector<Matrix> radical_basis(const AlgebraPresentation& a) {
    const Residue p = a.p;
    const std::size_t d = a.dim;
    // Current subspace, as a list of coordinate column vectors over F_p.
    std::vector<Matrix> space;
    space.reserve(d);
    for (std::size_t i = 0; i < d; ++i) {
        Matrix v(p, d, 1);
        v.at(i, 0) = 1;
        space.push_back(std::move(v));
    }
    std::uint64_t q = 1; // p^i
    std::uint64_t mod = p;
    while (q <= d && !space.empty()) {
        auto lift = [&](const Matrix& coords) {
            LiftMatrix m = LiftMatrix::zero(d, mod);
            for (std::size_t i = 0; i < d; ++i) {
                std::uint64_t c = coords.at(i, 0);
                if (c == 0) continue;
                const Matrix li = left_regular_matrix(a, i);
                for (std::size_t r = 0; r < d; ++r)
                    for (std::size_t s = 0; s < d; ++s)
                        m.at(r, s) = (m.at(r, s) + c * li.at(r, s)) % mod;
            }
            return m;
        };
        // Rows: one linear condition per basis element y of the current
        // space.  Columns: coefficients over the current space basis.
        Matrix cond(p, space.size(), space.size());
        for (std::size_t col = 0; col < space.size(); ++col) {
            LiftMatrix lx = lift(space[col]);
            for (std::size_t row = 0; row < space.size(); ++row) {
                LiftMatrix ly = lift(space[row]);
                std::uint64_t t = lx.mul(ly).pow(q).trace(); // mod p^(i+1)
                if (t % q != 0)
                    throw ValidationError(
                        "radical computation: trace divisibility fails");
                cond.at(row, col) = Residue((t / q) % p);
            }
        }
        std::vector<Matrix> coeffs = kernel_basis(cond);
        std::vector<Matrix> next;
        next.reserve(coeffs.size());
        for (const auto& cvec : coeffs) {
            Matrix v(p, d, 1);
            for (std::size_t t = 0; t < space.size(); ++t)
                v = v + space[t].scaled(cvec.at(t, 0));
            next.push_back(std::move(v));
        }
        space = std::move(next);
        q *= p;
        mod *= p;
    }
    return space;
}

} // namespace detail

/// A validated Frobenius algebra with cached derived data.  Immutable;
/// share via AlgebraPtr.
class CheckedAlgebra : public std::enable_shared_from_this<CheckedAlgebra> {
public:
    /// Validates associativity, the unit law and nondegeneracy of the
    /// bilinear form lambda(ab); throws ValidationError naming the failing
    /// triple or index otherwise.
    static AlgebraPtr validate(const AlgebraPresentation& pres) {
        check_presentation(pres);
        return AlgebraPtr(new CheckedAlgebra(pres));
    }

    const AlgebraPresentation& presentation() const { return pres_; }
    Residue modulus() const { return pres_.p; }
    std::size_t dim() const { return pres_.dim; }

    /// Matrix of left multiplication by basis element e_i on the regular
    /// module.
    const Matrix& left_regular(std::size_t i) const { return left_reg_[i]; }

    const std::vector<Matrix>& radical() const { return radical_; }

    /// Indices of a (greedy, deterministic) set of basis elements that
    /// generate the algebra together with the unit.  Intertwining with the
    /// generators' actions implies intertwining with the whole algebra,
    /// which keeps hom-space systems small.
    const std::vector<std::size_t>& generator_indices() const {
        return generators_;
    }

    /// Gram matrix G_{ij} = lambda(e_i e_j) of the Frobenius form, and its
    /// inverse (the Nakayama data).
    const Matrix& gram() const { return gram_; }
    const Matrix& gram_inverse() const { return gram_inv_; }

    /// The opposite algebra, validated lazily on first use and cached.
    /// Involutive: opposite()->opposite() is this algebra again.
    AlgebraPtr opposite() const {
        std::scoped_lock lk(op_mutex_);
        if (!op_) {
            op_ = validate(pres_.opposite());
            std::scoped_lock lk2(op_->op_mutex_);
            op_->op_ = shared_from_this();
        }
        return op_;
    }

    Matrix unit_vector() const {
        Matrix u(pres_.p, pres_.dim, 1);
        for (std::size_t i = 0; i < pres_.dim; ++i)
            u.at(i, 0) = pres_.unit[i];
        return u;
    }

private:
    explicit CheckedAlgebra(const AlgebraPresentation& pres) : pres_(pres) {
        left_reg_.reserve(pres_.dim);
        for (std::size_t i = 0; i < pres_.dim; ++i)
            left_reg_.push_back(detail::left_regular_matrix(pres_, i));
        radical_ = detail::radical_basis(pres_);
        gram_ = compute_gram(pres_);
        gram_inv_ = *inverse(gram_); // nondegeneracy already validated
        check_radical_is_nilpotent_ideal();
        compute_generators();
    }

    void compute_generators() {
        const std::size_t d = pres_.dim;
        const Residue p = pres_.p;
        Matrix span = unit_vector_of(pres_);
        while (rank(span) < d) {
            // Close the current span under left multiplication by the
            // generators found so far.
            bool grew = true;
            while (grew) {
                grew = false;
                for (auto gi : generators_) {
                    Matrix cand = span.hcat(left_reg_[gi] * span);
                    Matrix reduced =
                        columns_to_matrix(p, d, image_basis(cand));
                    if (reduced.cols() > span.cols()) {
                        span = std::move(reduced);
                        grew = true;
                    }
                }
            }
            if (span.cols() == d) break;
            // Adjoin the first basis vector outside the span.
            for (std::size_t i = 0; i < d; ++i) {
                Matrix e(p, d, 1);
                e.at(i, 0) = 1;
                if (!column_space_contains(span, e)) {
                    generators_.push_back(i);
                    span = span.hcat(e);
                    break;
                }
            }
        }
    }

    static Matrix unit_vector_of(const AlgebraPresentation& a) {
        Matrix u(a.p, a.dim, 1);
        for (std::size_t i = 0; i < a.dim; ++i) u.at(i, 0) = a.unit[i];
        return u;
    }

    static Matrix compute_gram(const AlgebraPresentation& a) {
        Matrix g(a.p, a.dim, a.dim);
        for (std::size_t i = 0; i < a.dim; ++i)
            for (std::size_t j = 0; j < a.dim; ++j) {
                Residue s = 0;
                for (std::size_t k = 0; k < a.dim; ++k)
                    s = fp::add(
                        s, fp::mul(a.c(i, j, k), a.frobenius_functional[k], a.p),
                        a.p);
                g.at(i, j) = s;
            }
        return g;
    }

    static void check_presentation(const AlgebraPresentation& a) {
        if (!fp::is_prime(a.p))
            throw ValidationError("modulus " + std::to_string(a.p) +
                                  " is not prime");
        if (a.dim == 0) throw ValidationError("algebra dimension must be >= 1");
        if (a.structure_constants.size() != a.dim * a.dim * a.dim)
            throw ValidationError("structure constant count mismatch");
        if (a.unit.size() != a.dim)
            throw ValidationError("unit vector length mismatch");
        if (a.frobenius_functional.size() != a.dim)
            throw ValidationError("frobenius functional length mismatch");
        for (auto v : a.structure_constants)
            if (v >= a.p) throw ValidationError("structure constant not reduced mod p");
        for (auto v : a.unit)
            if (v >= a.p) throw ValidationError("unit entry not reduced mod p");
        for (auto v : a.frobenius_functional)
            if (v >= a.p) throw ValidationError("functional entry not reduced mod p");

        // Associativity on basis triples: (e_i e_j) e_k = e_i (e_j e_k).
        for (std::size_t i = 0; i < a.dim; ++i)
            for (std::size_t j = 0; j < a.dim; ++j)
                for (std::size_t k = 0; k < a.dim; ++k)
                    for (std::size_t m = 0; m < a.dim; ++m) {
                        Residue lhs = 0, rhs = 0;
                        for (std::size_t t = 0; t < a.dim; ++t) {
                            lhs = fp::add(
                                lhs, fp::mul(a.c(i, j, t), a.c(t, k, m), a.p),
                                a.p);
                            rhs = fp::add(
                                rhs, fp::mul(a.c(j, k, t), a.c(i, t, m), a.p),
                                a.p);
                        }
                        if (lhs != rhs)
                            throw ValidationError(
                                "associativity fails at basis triple (" +
                                std::to_string(i) + "," + std::to_string(j) +
                                "," + std::to_string(k) + ")");
                    }

        // Unit law: 1 * e_j = e_j * 1 = e_j.
        for (std::size_t j = 0; j < a.dim; ++j)
            for (std::size_t m = 0; m < a.dim; ++m) {
                Residue lhs = 0, rhs = 0;
                for (std::size_t i = 0; i < a.dim; ++i) {
                    lhs = fp::add(lhs, fp::mul(a.unit[i], a.c(i, j, m), a.p),
                                  a.p);
                    rhs = fp::add(rhs, fp::mul(a.unit[i], a.c(j, i, m), a.p),
                                  a.p);
                }
                Residue want = (m == j) ? 1 : 0;
                if (lhs != want || rhs != want)
                    throw ValidationError("unit law fails at basis index " +
                                          std::to_string(j));
            }

        // Frobenius condition: the form (a,b) -> lambda(ab) has full rank.
        Matrix g = compute_gram(a);
        if (rank(g) != a.dim)
            throw ValidationError(
                "frobenius form degenerate: Gram matrix has rank " +
                std::to_string(rank(g)) + " < " + std::to_string(a.dim));
    }

    void check_radical_is_nilpotent_ideal() const {
        const std::size_t d = pres_.dim;
        if (radical_.empty()) return;
        Matrix rad = columns_to_matrix(pres_.p, d, radical_);
        // Two-sided ideal: e_i * r and r * e_i stay inside.
        for (std::size_t i = 0; i < d; ++i) {
            if (!column_space_contains(rad, left_reg_[i] * rad))
                throw ValidationError("radical computation: not a left ideal");
            // Right multiplication by e_i in coordinates.
            Matrix ri(pres_.p, d, d);
            for (std::size_t j = 0; j < d; ++j)
                for (std::size_t k = 0; k < d; ++k)
                    ri.at(k, j) = pres_.c(j, i, k);
            if (!column_space_contains(rad, ri * rad))
                throw ValidationError("radical computation: not a right ideal");
        }
        // Nilpotency: products of dim radical elements vanish.
        std::vector<Matrix> layer = radical_;
        for (std::size_t step = 0; step < d && !layer.empty(); ++step) {
            std::vector<Matrix> next;
            for (const auto& r : radical_)
                for (const auto& x : layer) {
                    Matrix prod = detail::left_mult_matrix(pres_, r) * x;
                    if (!prod.is_zero()) next.push_back(prod);
                }
            if (next.empty()) return;
            // Reduce to a basis to keep the layer small.
            Matrix span = columns_to_matrix(pres_.p, d, next);
            layer = image_basis(span);
        }
        throw ValidationError("radical computation: candidate not nilpotent");
    }

    AlgebraPresentation pres_;
    std::vector<Matrix> left_reg_;
    std::vector<Matrix> radical_;
    std::vector<std::size_t> generators_;
    Matrix gram_, gram_inv_;
    mutable std::mutex op_mutex_;
    mutable AlgebraPtr op_;
};

// ---------------------------------------------------------------------------
// Builtin families
// ---------------------------------------------------------------------------

/// F_p[x]/(x^n) with lambda = coefficient of x^(n-1).
inline AlgebraPresentation truncated_polynomial(Residue p, std::size_t n) {
    if (n < 1) throw ValidationError("truncated_polynomial: n must be >= 1");
    AlgebraPresentation a;
    a.p = p;
    a.dim = n;
    a.name = "truncated_polynomial(" + std::to_string(p) + "," +
             std::to_string(n) + ")";
    a.structure_constants.assign(n * n * n, 0);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (i + j < n) a.c(i, j, i + j) = 1;
    a.unit.assign(n, 0);
    a.unit[0] = 1;
    a.frobenius_functional.assign(n, 0);
    a.frobenius_functional[n - 1] = 1;
    a.basis_names.reserve(n);
    for (std::size_t i = 0; i < n; ++i)
        a.basis_names.push_back(i == 0 ? "1" : "x^" + std::to_string(i));
    return a;
}

/// Group algebra F_p[(Z/p)^k], basis indexed by exponent tuples in base p,
/// lambda = coefficient of the identity element.
inline AlgebraPresentation group_algebra_elementary_abelian(Residue p,
                                                            std::size_t k) {
    std::size_t d = 1;
    for (std::size_t i = 0; i < k; ++i) {
        if (d > 4096 / p)
            throw ValidationError("group_algebra_elementary_abelian: too large");
        d *= p;
    }
    AlgebraPresentation a;
    a.p = p;
    a.dim = d;
    a.name = "group_algebra_elementary_abelian(" + std::to_string(p) + "," +
             std::to_string(k) + ")";
    a.structure_constants.assign(d * d * d, 0);
    // Index i encodes the exponent tuple of a group element in base p;
    // multiplication adds tuples componentwise mod p.
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j) {
            std::size_t prod = 0, mult = 1, ii = i, jj = j;
            for (std::size_t t = 0; t < k; ++t) {
                prod += ((ii % p + jj % p) % p) * mult;
                ii /= p;
                jj /= p;
                mult *= p;
            }
            a.c(i, j, prod) = 1;
        }
    a.unit.assign(d, 0);
    a.unit[0] = 1;
    a.frobenius_functional.assign(d, 0);
    a.frobenius_functional[0] = 1;
    return a;
}

/// The base field F_p as a one-dimensional algebra.
inline AlgebraPresentation field_algebra(Residue p) {
    AlgebraPresentation a;
    a.p = p;
    a.dim = 1;
    a.name = "field(" + std::to_string(p) + ")";
    a.structure_constants = {1};
    a.unit = {1};
    a.frobenius_functional = {1};
    a.basis_names = {"1"};
    return a;
}

/// Builtin lookup by family name, e.g. "truncated_polynomial" with params
/// {2, 2}.  Throws ValidationError on unknown family or bad parameters.
inline AlgebraPresentation builtin_algebra(const std::string& family,
                                           const std::vector<std::int64_t>& params) {
    auto need = [&](std::size_t n) {
        if (params.size() != n)
            throw ValidationError("builtin_algebra: family '" + family +
                                  "' expects " + std::to_string(n) +
                                  " parameter(s)");
    };
    auto as_prime = [&](std::int64_t v) {
        if (v < 2 || !fp::is_prime(static_cast<Residue>(v)))
            throw ValidationError("builtin_algebra: " + std::to_string(v) +
                                  " is not prime");
        return static_cast<Residue>(v);
    };
    if (family == "truncated_polynomial") {
        need(2);
        if (params[1] < 1)
            throw ValidationError("builtin_algebra: n must be >= 1");
        return truncated_polynomial(as_prime(params[0]),
                                    static_cast<std::size_t>(params[1]));
    }
    if (family == "group_algebra_elementary_abelian") {
        need(2);
        if (params[1] < 0)
            throw ValidationError("builtin_algebra: k must be >= 0");
        return group_algebra_elementary_abelian(
            as_prime(params[0]), static_cast<std::size_t>(params[1]));
    }
    if (family == "field") {
        need(1);
        return field_algebra(as_prime(params[0]));
    }
    throw ValidationError("builtin_algebra: unknown family '" + family + "'");
}

} // namespace frobmod
