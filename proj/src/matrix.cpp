#include "cofil/matrix.hpp"

#include <algorithm>

#include "cofil/errors.hpp"

namespace cofil {

Matrix Matrix::identity(const Field& f, size_t n) {
    Matrix m(f, n, n);
    for (size_t i = 0; i < n; ++i) m.at(i, i) = f.one();
    return m;
}

Matrix Matrix::from_rows(const Field& f, const std::vector<Vec>& rows) {
    size_t nc = rows.empty() ? 0 : rows[0].size();
    Matrix m(f, rows.size(), nc);
    for (size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].size() != nc) throw ValidationError("ragged rows");
        for (size_t j = 0; j < nc; ++j) m.at(i, j) = rows[i][j];
    }
    return m;
}

Matrix Matrix::mul(const Matrix& o) const {
    if (cols_ != o.rows_) throw ValidationError("matrix dimension mismatch");
    Matrix r(field_, rows_, o.cols_);
    for (size_t i = 0; i < rows_; ++i)
        for (size_t k = 0; k < cols_; ++k) {
            FVal a = at(i, k);
            if (!a) continue;
            for (size_t j = 0; j < o.cols_; ++j) {
                FVal b = o.at(k, j);
                if (b) r.at(i, j) = field_.add(r.at(i, j), field_.mul(a, b));
            }
        }
    return r;
}

Matrix Matrix::add(const Matrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) throw ValidationError("matrix dimension mismatch");
    Matrix r(field_, rows_, cols_);
    for (size_t i = 0; i < e_.size(); ++i) r.e_[i] = field_.add(e_[i], o.e_[i]);
    return r;
}

Matrix Matrix::sub(const Matrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) throw ValidationError("matrix dimension mismatch");
    Matrix r(field_, rows_, cols_);
    for (size_t i = 0; i < e_.size(); ++i) r.e_[i] = field_.sub(e_[i], o.e_[i]);
    return r;
}

Matrix Matrix::scale(FVal c) const {
    Matrix r(field_, rows_, cols_);
    for (size_t i = 0; i < e_.size(); ++i) r.e_[i] = field_.mul(e_[i], c);
    return r;
}

Matrix Matrix::transpose() const {
    Matrix r(field_, cols_, rows_);
    for (size_t i = 0; i < rows_; ++i)
        for (size_t j = 0; j < cols_; ++j) r.at(j, i) = at(i, j);
    return r;
}

Matrix Matrix::pow(uint32_t e) const {
    if (rows_ != cols_) throw ValidationError("pow of non-square matrix");
    Matrix r = identity(field_, rows_);
    Matrix b = *this;
    while (e) {
        if (e & 1) r = r.mul(b);
        b = b.mul(b);
        e >>= 1;
    }
    return r;
}

Vec Matrix::apply(const Vec& v) const {
    if (v.size() != cols_) throw ValidationError("matrix/vector dimension mismatch");
    Vec r(rows_, 0);
    for (size_t i = 0; i < rows_; ++i) {
        FVal s = 0;
        for (size_t j = 0; j < cols_; ++j) {
            FVal a = at(i, j);
            if (a && v[j]) s = field_.add(s, field_.mul(a, v[j]));
        }
        r[i] = s;
    }
    return r;
}

bool Matrix::is_zero() const {
    return std::all_of(e_.begin(), e_.end(), [](FVal x) { return x == 0; });
}

EchelonSolver::EchelonSolver(Field f, size_t cols, bool back_eliminate)
    : field_(std::move(f)), cols_(cols), words_((cols + 63) / 64),
      back_eliminate_(back_eliminate) {}

bool EchelonSolver::insert(const Vec& row) {
    if (row.size() != cols_) throw ValidationError("row length mismatch");
    if (f2()) {
        std::vector<uint64_t> r(words_, 0);
        for (size_t j = 0; j < cols_; ++j)
            if (row[j]) r[j >> 6] |= (uint64_t)1 << (j & 63);
        // reduce against existing rows
        for (size_t k = 0; k < pivots_.size(); ++k) {
            size_t pc = pivots_[k];
            if (r[pc >> 6] & ((uint64_t)1 << (pc & 63)))
                for (size_t w = 0; w < words_; ++w) r[w] ^= bits_[k][w];
        }
        size_t lead = cols_;
        for (size_t w = 0; w < words_; ++w)
            if (r[w]) { lead = (w << 6) + (size_t)__builtin_ctzll(r[w]); break; }
        if (lead == cols_) return false;
        if (back_eliminate_)
            for (size_t k = 0; k < pivots_.size(); ++k)
                if (bits_[k][lead >> 6] & ((uint64_t)1 << (lead & 63)))
                    for (size_t w = 0; w < words_; ++w) bits_[k][w] ^= r[w];
        size_t pos = (size_t)(std::lower_bound(pivots_.begin(), pivots_.end(), lead) - pivots_.begin());
        pivots_.insert(pivots_.begin() + pos, lead);
        bits_.insert(bits_.begin() + pos, std::move(r));
        return true;
    }
    Vec r = reduce(row);
    size_t lead = cols_;
    for (size_t j = 0; j < cols_; ++j)
        if (r[j]) { lead = j; break; }
    if (lead == cols_) return false;
    FVal inv = field_.inv(r[lead]);
    for (auto& x : r) x = field_.mul(x, inv);
    if (back_eliminate_) {
        for (size_t k = 0; k < pivots_.size(); ++k) {
            FVal c = rows_[k][lead];
            if (!c) continue;
            for (size_t j = 0; j < cols_; ++j)
                rows_[k][j] = field_.sub(rows_[k][j], field_.mul(c, r[j]));
        }
    }
    size_t pos = (size_t)(std::lower_bound(pivots_.begin(), pivots_.end(), lead) - pivots_.begin());
    pivots_.insert(pivots_.begin() + pos, lead);
    rows_.insert(rows_.begin() + pos, std::move(r));
    return true;
}

Vec EchelonSolver::reduce(const Vec& v) const {
    if (v.size() != cols_) throw ValidationError("vector length mismatch");
    Vec r = v;
    if (f2()) {
        for (size_t k = 0; k < pivots_.size(); ++k) {
            size_t pc = pivots_[k];
            if (r[pc]) {
                const auto& b = bits_[k];
                for (size_t j = 0; j < cols_; ++j)
                    if (b[j >> 6] & ((uint64_t)1 << (j & 63))) r[j] ^= 1;
            }
        }
        return r;
    }
    for (size_t k = 0; k < pivots_.size(); ++k) {
        FVal c = r[pivots_[k]];
        if (!c) continue;
        for (size_t j = 0; j < cols_; ++j)
            r[j] = field_.sub(r[j], field_.mul(c, rows_[k][j]));
    }
    return r;
}

bool EchelonSolver::contains(const Vec& v) const {
    Vec r = reduce(v);
    return std::all_of(r.begin(), r.end(), [](FVal x) { return x == 0; });
}

std::optional<Vec> EchelonSolver::coordinates(const Vec& v) const {
    Vec r = v;
    Vec coeff(pivots_.size(), 0);
    if (f2()) {
        for (size_t k = 0; k < pivots_.size(); ++k) {
            size_t pc = pivots_[k];
            if (r[pc]) {
                coeff[k] = 1;
                const auto& b = bits_[k];
                for (size_t j = 0; j < cols_; ++j)
                    if (b[j >> 6] & ((uint64_t)1 << (j & 63))) r[j] ^= 1;
            }
        }
    } else {
        for (size_t k = 0; k < pivots_.size(); ++k) {
            FVal c = r[pivots_[k]];
            if (!c) continue;
            coeff[k] = c;
            for (size_t j = 0; j < cols_; ++j)
                r[j] = field_.sub(r[j], field_.mul(c, rows_[k][j]));
        }
    }
    if (!std::all_of(r.begin(), r.end(), [](FVal x) { return x == 0; })) return std::nullopt;
    return coeff;
}

Vec EchelonSolver::row(size_t i) const {
    if (f2()) {
        Vec r(cols_, 0);
        for (size_t j = 0; j < cols_; ++j)
            if (bits_[i][j >> 6] & ((uint64_t)1 << (j & 63))) r[j] = 1;
        return r;
    }
    return rows_[i];
}

std::vector<Vec> EchelonSolver::rows() const {
    std::vector<Vec> out;
    out.reserve(dim());
    for (size_t i = 0; i < dim(); ++i) out.push_back(row(i));
    return out;
}

size_t rank(const Matrix& a) {
    EchelonSolver s(a.field(), a.cols());
    for (size_t i = 0; i < a.rows(); ++i) s.insert(a.row(i));
    return s.dim();
}

std::vector<Vec> kernel_basis(const Matrix& a) {
    const Field& f = a.field();
    EchelonSolver s(f, a.cols());
    for (size_t i = 0; i < a.rows(); ++i) s.insert(a.row(i));
    std::vector<Vec> rref = s.rows();
    const auto& piv = s.pivots();
    std::vector<bool> is_pivot(a.cols(), false);
    for (size_t p : piv) is_pivot[p] = true;
    std::vector<Vec> basis;
    for (size_t free_col = 0; free_col < a.cols(); ++free_col) {
        if (is_pivot[free_col]) continue;
        Vec v(a.cols(), 0);
        v[free_col] = f.one();
        for (size_t k = 0; k < piv.size(); ++k)
            v[piv[k]] = f.neg(rref[k][free_col]);
        basis.push_back(std::move(v));
    }
    // already echelon in the free columns; normalize order deterministically
    return basis;
}

Subspace::Subspace(Field f, size_t ambient_dim) : solver_(std::move(f), ambient_dim) {}

Subspace Subspace::span(const Field& f, size_t ambient_dim, const std::vector<Vec>& vectors) {
    Subspace s(f, ambient_dim);
    for (const auto& v : vectors) s.solver_.insert(v);
    return s;
}

Subspace Subspace::full(const Field& f, size_t ambient_dim) {
    Subspace s(f, ambient_dim);
    for (size_t i = 0; i < ambient_dim; ++i) {
        Vec v(ambient_dim, 0);
        v[i] = f.one();
        s.solver_.insert(v);
    }
    return s;
}

bool Subspace::contains(const Subspace& other) const {
    for (size_t i = 0; i < other.dim(); ++i)
        if (!contains(other.solver_.row(i))) return false;
    return true;
}

Subspace Subspace::sum(const Subspace& other) const {
    Subspace s = *this;
    for (size_t i = 0; i < other.dim(); ++i) s.solver_.insert(other.solver_.row(i));
    return s;
}

bool Subspace::operator==(const Subspace& o) const {
    return dim() == o.dim() && contains(o);
}

std::vector<Vec> intersect_subspaces(const Field& f, const std::vector<Vec>& u,
                                     const std::vector<Vec>& v) {
    size_t n = u.empty() ? (v.empty() ? 0 : v[0].size()) : u[0].size();
    for (const auto& x : u)
        if (x.size() != n) throw ValidationError("intersect_subspaces: dimension mismatch");
    for (const auto& x : v)
        if (x.size() != n) throw ValidationError("intersect_subspaces: dimension mismatch");
    if (u.empty() || v.empty()) return {};
    // solve sum a_i u_i - sum b_j v_j = 0; columns are (a, b)
    Matrix m(f, n, u.size() + v.size());
    for (size_t c = 0; c < u.size(); ++c)
        for (size_t r = 0; r < n; ++r) m.at(r, c) = u[c][r];
    for (size_t c = 0; c < v.size(); ++c)
        for (size_t r = 0; r < n; ++r) m.at(r, u.size() + c) = f.neg(v[c][r]);
    EchelonSolver out(f, n);
    for (const auto& k : kernel_basis(m)) {
        Vec x(n, 0);
        for (size_t c = 0; c < u.size(); ++c)
            if (k[c])
                for (size_t r = 0; r < n; ++r) x[r] = f.add(x[r], f.mul(k[c], u[c][r]));
        out.insert(x);
    }
    return out.rows();
}

Subspace intersect(const Subspace& a, const Subspace& b) {
    if (a.ambient_dim() != b.ambient_dim())
        throw ValidationError("intersect: ambient dimension mismatch");
    auto rows = intersect_subspaces(a.field(), a.basis(), b.basis());
    return Subspace::span(a.field(), a.ambient_dim(), rows);
}

}  // namespace cofil
