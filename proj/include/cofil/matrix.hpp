#ifndef COFIL_MATRIX_HPP
#define COFIL_MATRIX_HPP

#include <cstdint>
#include <optional>
#include <vector>

#include "cofil/field.hpp"

namespace cofil {

using Vec = std::vector<FVal>;

// Dense row-major matrix over a fixed finite field.  Entries are stored as
// packed FVal representatives; all arithmetic is exact.
class Matrix {
public:
    Matrix(Field f, size_t rows, size_t cols)
        : field_(std::move(f)), rows_(rows), cols_(cols), e_(rows * cols, 0) {}
    static Matrix identity(const Field& f, size_t n);
    static Matrix from_rows(const Field& f, const std::vector<Vec>& rows);

    size_t rows() const { return rows_; }
    size_t cols() const { return cols_; }
    const Field& field() const { return field_; }

    FVal at(size_t i, size_t j) const { return e_[i * cols_ + j]; }
    FVal& at(size_t i, size_t j) { return e_[i * cols_ + j]; }
    Vec row(size_t i) const { return Vec(e_.begin() + i * cols_, e_.begin() + (i + 1) * cols_); }

    Matrix mul(const Matrix& o) const;
    Matrix add(const Matrix& o) const;
    Matrix sub(const Matrix& o) const;
    Matrix scale(FVal c) const;
    Matrix transpose() const;
    Matrix pow(uint32_t e) const;
    Vec apply(const Vec& v) const;  // matrix * column vector
    bool is_zero() const;
    bool operator==(const Matrix& o) const { return rows_ == o.rows_ && cols_ == o.cols_ && e_ == o.e_; }

private:
    Field field_;
    size_t rows_, cols_;
    std::vector<FVal> e_;
};

// Incremental row echelon form.  Rows are inserted one at a time and either
// extend the span (returning true) or reduce to zero.  With back_eliminate
// (the default) stored rows are kept fully reduced, so the row set is the
// canonical rref basis of the span and two spans are equal iff their solver
// rows agree.  With back_eliminate = false rows are frozen as inserted
// (forward reduction only); coordinates() then expresses vectors over the
// inserted rows themselves, which the GL_N basis construction relies on.
// Over F_2 rows are bit-packed, which is what makes the larger GL_N and U_3
// eliminations cheap.
class EchelonSolver {
public:
    EchelonSolver(Field f, size_t cols, bool back_eliminate = true);

    bool insert(const Vec& row);           // true if the span grew
    // reduce v against the current rows; returns the residual
    Vec reduce(const Vec& v) const;
    bool contains(const Vec& v) const;
    // coefficients expressing v over the stored rref rows, if v is in the span
    std::optional<Vec> coordinates(const Vec& v) const;

    size_t dim() const { return pivots_.size(); }
    size_t cols() const { return cols_; }
    const std::vector<size_t>& pivots() const { return pivots_; }
    Vec row(size_t i) const;
    std::vector<Vec> rows() const;
    const Field& field() const { return field_; }

private:
    bool f2() const { return field_.q() == 2; }
    Field field_;
    size_t cols_;
    size_t words_;                        // F_2 packing width
    bool back_eliminate_;
    std::vector<size_t> pivots_;          // strictly increasing pivot columns
    std::vector<Vec> rows_;               // generic storage, reduced
    std::vector<std::vector<uint64_t>> bits_;  // F_2 storage, reduced
};

size_t rank(const Matrix& a);
// basis of the right null space {v : A v = 0}, rows in rref
std::vector<Vec> kernel_basis(const Matrix& a);

// A subspace of k^n held in reduced echelon form; representational equality
// is subspace equality.
class Subspace {
public:
    Subspace(Field f, size_t ambient_dim);
    static Subspace span(const Field& f, size_t ambient_dim, const std::vector<Vec>& vectors);
    static Subspace full(const Field& f, size_t ambient_dim);

    size_t dim() const { return solver_.dim(); }
    size_t ambient_dim() const { return solver_.cols(); }
    bool contains(const Vec& v) const { return solver_.contains(v); }
    bool contains(const Subspace& other) const;
    std::vector<Vec> basis() const { return solver_.rows(); }
    const std::vector<size_t>& pivots() const { return solver_.pivots(); }
    Vec reduce(const Vec& v) const { return solver_.reduce(v); }
    const Field& field() const { return solver_.field(); }

    bool add_vector(const Vec& v) { return solver_.insert(v); }
    Subspace sum(const Subspace& other) const;
    bool operator==(const Subspace& o) const;

private:
    EchelonSolver solver_;
};

// basis of the intersection of two spans given by equal-length vectors
std::vector<Vec> intersect_subspaces(const Field& f, const std::vector<Vec>& u,
                                     const std::vector<Vec>& v);
Subspace intersect(const Subspace& a, const Subspace& b);

}  // namespace cofil

#endif
