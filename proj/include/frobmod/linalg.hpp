#pragma once

// Exact dense linear algebra over prime fields F_p.
//
// Everything downstream (hom spaces, kernels, covers, lifting recipes)
// reduces to rref/solve on these matrices.  Arithmetic is exact; there are
// no tolerances anywhere in this library.

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace frobmod {

/// Residues are stored reduced in [0, p).  Products are computed in 64-bit
/// intermediates, so p may be any prime up to 2^31 - 1.
using Residue = std::uint32_t;

namespace fp {

inline Residue reduce(std::int64_t v, Residue p) {
    std::int64_t r = v % static_cast<std::int64_t>(p);
    if (r < 0) r += p;
    return static_cast<Residue>(r);
}

inline Residue add(Residue a, Residue b, Residue p) {
    std::uint64_t s = std::uint64_t(a) + b;
    return s >= p ? Residue(s - p) : Residue(s);
}

inline Residue sub(Residue a, Residue b, Residue p) {
    return a >= b ? a - b : Residue(std::uint64_t(a) + p - b);
}

inline Residue mul(Residue a, Residue b, Residue p) {
    return Residue((std::uint64_t(a) * b) % p);
}

inline Residue neg(Residue a, Residue p) { return a == 0 ? 0 : p - a; }

/// Modular inverse by extended Euclid.  Throws on non-invertible input,
/// which for prime p means a == 0.
inline Residue inv(Residue a, Residue p) {
    if (a == 0) throw std::domain_error("fp::inv: zero is not invertible");
    std::int64_t t = 0, new_t = 1;
    std::int64_t r = p, new_r = a;
    while (new_r != 0) {
        std::int64_t q = r / new_r;
        t = std::exchange(new_t, t - q * new_t);
        r = std::exchange(new_r, r - q * new_r);
    }
    if (r != 1) throw std::domain_error("fp::inv: modulus is not prime");
    return reduce(t, p);
}

inline bool is_prime(Residue p) {
    if (p < 2) return false;
    for (std::uint64_t d = 2; d * d <= p; ++d)
        if (p % d == 0) return false;
    return true;
}

} // namespace fp

/// Dense row-major matrix over F_p.  Immutable by convention once built
/// (all operations return fresh values); entries always reduced mod p.
class Matrix {
public:
    Matrix() : p_(2), rows_(0), cols_(0) {}

    Matrix(Residue p, std::size_t rows, std::size_t cols)
        : p_(p), rows_(rows), cols_(cols), e_(rows * cols, 0) {
        check_modulus(p);
    }

    /// Build from row-major signed data; entries are reduced mod p.
    Matrix(Residue p, std::size_t rows, std::size_t cols,
           std::initializer_list<std::int64_t> data)
        : p_(p), rows_(rows), cols_(cols) {
        check_modulus(p);
        if (data.size() != rows * cols)
            throw std::invalid_argument("Matrix: initializer size mismatch");
        e_.reserve(data.size());
        for (auto v : data) e_.push_back(fp::reduce(v, p));
    }

    static Matrix identity(Residue p, std::size_t n) {
        Matrix m(p, n, n);
        for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1;
        return m;
    }

    static Matrix zero(Residue p, std::size_t rows, std::size_t cols) {
        return Matrix(p, rows, cols);
    }

    Residue modulus() const { return p_; }
    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    Residue& at(std::size_t r, std::size_t c) { return e_[r * cols_ + c]; }
    Residue at(std::size_t r, std::size_t c) const { return e_[r * cols_ + c]; }

    const std::vector<Residue>& entries() const { return e_; }

    bool operator==(const Matrix& o) const {
        return p_ == o.p_ && rows_ == o.rows_ && cols_ == o.cols_ && e_ == o.e_;
    }

    bool is_zero() const {
        for (auto v : e_)
            if (v != 0) return false;
        return true;
    }

    Matrix operator+(const Matrix& o) const {
        require_same_shape(o, "operator+");
        Matrix r(p_, rows_, cols_);
        for (std::size_t i = 0; i < e_.size(); ++i)
            r.e_[i] = fp::add(e_[i], o.e_[i], p_);
        return r;
    }

    Matrix operator-(const Matrix& o) const {
        require_same_shape(o, "operator-");
        Matrix r(p_, rows_, cols_);
        for (std::size_t i = 0; i < e_.size(); ++i)
            r.e_[i] = fp::sub(e_[i], o.e_[i], p_);
        return r;
    }

    Matrix operator-() const { return scaled(p_ - 1); }

    Matrix scaled(Residue c) const {
        Matrix r(p_, rows_, cols_);
        for (std::size_t i = 0; i < e_.size(); ++i)
            r.e_[i] = fp::mul(e_[i], c % p_, p_);
        return r;
    }

    Matrix operator*(const Matrix& o) const {
        if (p_ != o.p_)
            throw std::invalid_argument("Matrix::operator*: modulus mismatch");
        if (cols_ != o.rows_)
            throw std::invalid_argument("Matrix::operator*: shape mismatch");
        Matrix r(p_, rows_, o.cols_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t k = 0; k < cols_; ++k) {
                Residue a = at(i, k);
                if (a == 0) continue;
                for (std::size_t j = 0; j < o.cols_; ++j) {
                    r.at(i, j) = Residue(
                        (std::uint64_t(a) * o.at(k, j) + r.at(i, j)) % p_);
                }
            }
        return r;
    }

    Matrix transposed() const {
        Matrix r(p_, cols_, rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) r.at(j, i) = at(i, j);
        return r;
    }

    Matrix power(std::uint64_t e) const {
        if (rows_ != cols_)
            throw std::invalid_argument("Matrix::power: square required");
        Matrix acc = identity(p_, rows_);
        Matrix base = *this;
        while (e > 0) {
            if (e & 1) acc = acc * base;
            base = base * base;
            e >>= 1;
        }
        return acc;
    }

    Residue trace() const {
        if (rows_ != cols_)
            throw std::invalid_argument("Matrix::trace: square required");
        Residue t = 0;
        for (std::size_t i = 0; i < rows_; ++i) t = fp::add(t, at(i, i), p_);
        return t;
    }

    /// Horizontal concatenation [this | o].
    Matrix hcat(const Matrix& o) const {
        if (p_ != o.p_ || rows_ != o.rows_)
            throw std::invalid_argument("Matrix::hcat: shape mismatch");
        Matrix r(p_, rows_, cols_ + o.cols_);
        for (std::size_t i = 0; i < rows_; ++i) {
            for (std::size_t j = 0; j < cols_; ++j) r.at(i, j) = at(i, j);
            for (std::size_t j = 0; j < o.cols_; ++j)
                r.at(i, cols_ + j) = o.at(i, j);
        }
        return r;
    }

    /// Vertical concatenation [this ; o].
    Matrix vcat(const Matrix& o) const {
        if (p_ != o.p_ || cols_ != o.cols_)
            throw std::invalid_argument("Matrix::vcat: shape mismatch");
        Matrix r(p_, rows_ + o.rows_, cols_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) r.at(i, j) = at(i, j);
        for (std::size_t i = 0; i < o.rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j)
                r.at(rows_ + i, j) = o.at(i, j);
        return r;
    }

    Matrix submatrix(std::size_t r0, std::size_t c0, std::size_t nr,
                     std::size_t nc) const {
        if (r0 + nr > rows_ || c0 + nc > cols_)
            throw std::invalid_argument("Matrix::submatrix: out of range");
        Matrix r(p_, nr, nc);
        for (std::size_t i = 0; i < nr; ++i)
            for (std::size_t j = 0; j < nc; ++j) r.at(i, j) = at(r0 + i, c0 + j);
        return r;
    }

    Matrix column(std::size_t c) const { return submatrix(0, c, rows_, 1); }

private:
    static void check_modulus(Residue p) {
        if (p < 2) throw std::invalid_argument("Matrix: modulus must be >= 2");
    }

    void require_same_shape(const Matrix& o, const char* who) const {
        if (p_ != o.p_)
            throw std::invalid_argument(std::string("Matrix::") + who +
                                        ": modulus mismatch");
        if (rows_ != o.rows_ || cols_ != o.cols_)
            throw std::invalid_argument(std::string("Matrix::") + who +
                                        ": shape mismatch");
    }

    Residue p_;
    std::size_t rows_, cols_;
    std::vector<Residue> e_;
};

/// Block-diagonal assembly diag(a, b).
inline Matrix block_diag(const Matrix& a, const Matrix& b) {
    if (a.modulus() != b.modulus())
        throw std::invalid_argument("block_diag: modulus mismatch");
    Matrix r(a.modulus(), a.rows() + b.rows(), a.cols() + b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) r.at(i, j) = a.at(i, j);
    for (std::size_t i = 0; i < b.rows(); ++i)
        for (std::size_t j = 0; j < b.cols(); ++j)
            r.at(a.rows() + i, a.cols() + j) = b.at(i, j);
    return r;
}

struct RrefResult {
    Matrix reduced;
    std::vector<std::size_t> pivots; // strictly increasing column indices
};

/// Reduced row echelon form with deterministic pivoting: for each column,
/// the first row (top to bottom) with a nonzero entry is chosen.  Output is
/// the unique RREF, so results are reproducible bit for bit.
inline RrefResult rref(const Matrix& m) {
    Matrix a = m;
    const Residue p = a.modulus();
    std::vector<std::size_t> pivots;
    std::size_t row = 0;
    for (std::size_t col = 0; col < a.cols() && row < a.rows(); ++col) {
        std::size_t pr = row;
        while (pr < a.rows() && a.at(pr, col) == 0) ++pr;
        if (pr == a.rows()) continue;
        if (pr != row)
            for (std::size_t j = 0; j < a.cols(); ++j)
                std::swap(a.at(row, j), a.at(pr, j));
        Residue piv_inv = fp::inv(a.at(row, col), p);
        for (std::size_t j = col; j < a.cols(); ++j)
            a.at(row, j) = fp::mul(a.at(row, j), piv_inv, p);
        for (std::size_t i = 0; i < a.rows(); ++i) {
            if (i == row) continue;
            Residue f = a.at(i, col);
            if (f == 0) continue;
            for (std::size_t j = col; j < a.cols(); ++j)
                a.at(i, j) =
                    fp::sub(a.at(i, j), fp::mul(f, a.at(row, j), p), p);
        }
        pivots.push_back(col);
        ++row;
    }
    return {std::move(a), std::move(pivots)};
}

inline std::size_t rank(const Matrix& m) { return rref(m).pivots.size(); }

/// Basis of ker(a) as column vectors, in the standard rref parametrization
/// (one vector per free column, deterministic order).
inline std::vector<Matrix> kernel_basis(const Matrix& a) {
    RrefResult r = rref(a);
    const Residue p = a.modulus();
    std::vector<bool> is_pivot(a.cols(), false);
    for (auto c : r.pivots) is_pivot[c] = true;
    std::vector<Matrix> basis;
    for (std::size_t free_col = 0; free_col < a.cols(); ++free_col) {
        if (is_pivot[free_col]) continue;
        Matrix v(p, a.cols(), 1);
        v.at(free_col, 0) = 1;
        for (std::size_t i = 0; i < r.pivots.size(); ++i)
            v.at(r.pivots[i], 0) = fp::neg(r.reduced.at(i, free_col), p);
        basis.push_back(std::move(v));
    }
    return basis;
}

/// Columns of a spanning its column space: the columns at rref pivot
/// positions of a (so a deterministic subset of the input columns).
inline std::vector<Matrix> image_basis(const Matrix& a) {
    RrefResult r = rref(a);
    std::vector<Matrix> basis;
    basis.reserve(r.pivots.size());
    for (auto c : r.pivots) basis.push_back(a.column(c));
    return basis;
}

/// Assemble column vectors into one matrix (n x k).  Empty list gives n x 0.
inline Matrix columns_to_matrix(Residue p, std::size_t n,
                                const std::vector<Matrix>& cols) {
    Matrix m(p, n, cols.size());
    for (std::size_t j = 0; j < cols.size(); ++j) {
        if (cols[j].rows() != n || cols[j].cols() != 1)
            throw std::invalid_argument("columns_to_matrix: bad column shape");
        for (std::size_t i = 0; i < n; ++i) m.at(i, j) = cols[j].at(i, 0);
    }
    return m;
}

struct SolveResult {
    Matrix particular;                // a * particular == b exactly
    std::vector<Matrix> kernel_basis; // basis of ker a (column vectors)
};

/// Solve a * X = b for X (b may have several columns).  Returns the
/// particular solution with zeros in all free coordinates, plus a kernel
/// basis of a.  Absent iff the system is inconsistent.
inline std::optional<SolveResult> solve(const Matrix& a, const Matrix& b) {
    if (a.modulus() != b.modulus())
        throw std::invalid_argument("solve: modulus mismatch");
    if (a.rows() != b.rows())
        throw std::invalid_argument("solve: row count mismatch");
    RrefResult r = rref(a.hcat(b));
    // Any pivot in the b-block means an inconsistent row.
    for (auto c : r.pivots)
        if (c >= a.cols()) return std::nullopt;
    Matrix x(a.modulus(), a.cols(), b.cols());
    for (std::size_t i = 0; i < r.pivots.size(); ++i)
        for (std::size_t j = 0; j < b.cols(); ++j)
            x.at(r.pivots[i], j) = r.reduced.at(i, a.cols() + j);
    return SolveResult{std::move(x), kernel_basis(a)};
}

/// Inverse of a square matrix, or absent if singular.
inline std::optional<Matrix> inverse(const Matrix& a) {
    if (a.rows() != a.cols()) return std::nullopt;
    auto s = solve(a, Matrix::identity(a.modulus(), a.rows()));
    if (!s || !s->kernel_basis.empty()) return std::nullopt;
    return s->particular;
}

/// True iff the columns of sub lie in the column space of space.
inline bool column_space_contains(const Matrix& space, const Matrix& sub) {
    return solve(space, sub).has_value();
}

} // namespace frobmod
