#include "torsionlab/matrix.hpp"

#include <algorithm>

namespace torsionlab {

Matrix::Matrix(Field f, int rows, int cols)
    : field_(f), rows_(rows), cols_(cols),
      e_(static_cast<size_t>(rows) * cols, scalar_zero(f)) {}

Matrix Matrix::identity(Field f, int n) {
    Matrix m(f, n, n);
    for (int i = 0; i < n; ++i) m.at(i, i) = scalar_one(f);
    return m;
}

Matrix Matrix::from_rows(Field f, const std::vector<std::vector<long long>>& rows) {
    int r = static_cast<int>(rows.size());
    int c = r == 0 ? 0 : static_cast<int>(rows[0].size());
    Matrix m(f, r, c);
    for (int i = 0; i < r; ++i) {
        if (static_cast<int>(rows[i].size()) != c) throw error("ragged matrix literal");
        for (int j = 0; j < c; ++j) m.at(i, j) = Scalar::of(f, rows[i][j]);
    }
    return m;
}

Matrix Matrix::operator+(const Matrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_ || field_ != o.field_)
        throw error("matrix shape/field mismatch in +");
    Matrix r = *this;
    for (size_t i = 0; i < e_.size(); ++i) r.e_[i] = e_[i] + o.e_[i];
    return r;
}

Matrix Matrix::operator-(const Matrix& o) const { return *this + (-o); }

Matrix Matrix::operator-() const {
    Matrix r = *this;
    for (auto& x : r.e_) x = -x;
    return r;
}

Matrix Matrix::scaled(const Scalar& c) const {
    Matrix r = *this;
    for (auto& x : r.e_) x = x * c;
    return r;
}

Matrix Matrix::operator*(const Matrix& o) const {
    if (cols_ != o.rows_ || field_ != o.field_) throw error("matrix shape/field mismatch in *");
    Matrix r(field_, rows_, o.cols_);
    for (int i = 0; i < rows_; ++i)
        for (int k = 0; k < cols_; ++k) {
            const Scalar& a = at(i, k);
            if (a.is_zero()) continue;
            for (int j = 0; j < o.cols_; ++j) r.at(i, j) = r.at(i, j) + a * o.at(k, j);
        }
    return r;
}

Matrix Matrix::transpose() const {
    Matrix r(field_, cols_, rows_);
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j) r.at(j, i) = at(i, j);
    return r;
}

bool Matrix::is_zero() const {
    return std::all_of(e_.begin(), e_.end(), [](const Scalar& s) { return s.is_zero(); });
}

Matrix Matrix::row(int r) const {
    Matrix m(field_, 1, cols_);
    for (int j = 0; j < cols_; ++j) m.at(0, j) = at(r, j);
    return m;
}

Matrix Matrix::col(int c) const {
    Matrix m(field_, rows_, 1);
    for (int i = 0; i < rows_; ++i) m.at(i, 0) = at(i, c);
    return m;
}

Matrix Matrix::vstack(const Matrix& top, const Matrix& bottom) {
    if (top.cols_ != bottom.cols_ || top.field_ != bottom.field_)
        throw error("vstack mismatch");
    Matrix r(top.field_, top.rows_ + bottom.rows_, top.cols_);
    for (int i = 0; i < top.rows_; ++i)
        for (int j = 0; j < top.cols_; ++j) r.at(i, j) = top.at(i, j);
    for (int i = 0; i < bottom.rows_; ++i)
        for (int j = 0; j < top.cols_; ++j) r.at(top.rows_ + i, j) = bottom.at(i, j);
    return r;
}

Matrix Matrix::hstack(const Matrix& left, const Matrix& right) {
    if (left.rows_ != right.rows_ || left.field_ != right.field_) throw error("hstack mismatch");
    Matrix r(left.field_, left.rows_, left.cols_ + right.cols_);
    for (int i = 0; i < left.rows_; ++i) {
        for (int j = 0; j < left.cols_; ++j) r.at(i, j) = left.at(i, j);
        for (int j = 0; j < right.cols_; ++j) r.at(i, left.cols_ + j) = right.at(i, j);
    }
    return r;
}

RrefResult rref(const Matrix& m) {
    Matrix a = m;
    std::vector<int> pivots;
    int r = 0;
    for (int c = 0; c < a.cols() && r < a.rows(); ++c) {
        int p = -1;
        for (int i = r; i < a.rows(); ++i)
            if (!a.at(i, c).is_zero()) {
                p = i;
                break;
            }
        if (p < 0) continue;
        if (p != r)
            for (int j = 0; j < a.cols(); ++j) std::swap(a.at(p, j), a.at(r, j));
        Scalar inv = a.at(r, c).inverse();
        for (int j = 0; j < a.cols(); ++j) a.at(r, j) = a.at(r, j) * inv;
        for (int i = 0; i < a.rows(); ++i) {
            if (i == r || a.at(i, c).is_zero()) continue;
            Scalar factor = a.at(i, c);
            for (int j = 0; j < a.cols(); ++j)
                a.at(i, j) = a.at(i, j) - factor * a.at(r, j);
        }
        pivots.push_back(c);
        ++r;
    }
    return {std::move(a), std::move(pivots)};
}

int rank(const Matrix& m) { return static_cast<int>(rref(m).pivots.size()); }

Matrix kernel_basis(const Matrix& m) {
    RrefResult rr = rref(m);
    const auto& piv = rr.pivots;
    std::vector<int> free_cols;
    {
        size_t pi = 0;
        for (int c = 0; c < m.cols(); ++c) {
            if (pi < piv.size() && piv[pi] == c)
                ++pi;
            else
                free_cols.push_back(c);
        }
    }
    Matrix basis(m.field(), m.cols(), static_cast<int>(free_cols.size()));
    for (size_t k = 0; k < free_cols.size(); ++k) {
        int fc = free_cols[k];
        basis.at(fc, static_cast<int>(k)) = scalar_one(m.field());
        for (size_t i = 0; i < piv.size(); ++i)
            basis.at(piv[i], static_cast<int>(k)) = -rr.mat.at(static_cast<int>(i), fc);
    }
    return basis;
}

std::optional<Matrix> solve(const Matrix& m, const Matrix& b) {
    if (m.rows() != b.rows() || m.field() != b.field()) throw error("solve shape/field mismatch");
    RrefResult rr = rref(Matrix::hstack(m, b));
    // Inconsistent iff some pivot lands in the b block.
    for (int p : rr.pivots)
        if (p >= m.cols()) return std::nullopt;
    Matrix x(m.field(), m.cols(), b.cols());
    for (size_t i = 0; i < rr.pivots.size(); ++i)
        for (int j = 0; j < b.cols(); ++j)
            x.at(rr.pivots[i], j) = rr.mat.at(static_cast<int>(i), m.cols() + j);
    return x;
}

Matrix row_space(const Matrix& m) {
    RrefResult rr = rref(m);
    int r = static_cast<int>(rr.pivots.size());
    Matrix out(m.field(), r, m.cols());
    for (int i = 0; i < r; ++i)
        for (int j = 0; j < m.cols(); ++j) out.at(i, j) = rr.mat.at(i, j);
    return out;
}

Matrix col_space(const Matrix& m) { return row_space(m.transpose()); }

bool row_space_contains(const Matrix& space, const Matrix& vecs) {
    if (vecs.rows() == 0) return true;
    return rank(Matrix::vstack(space, vecs)) == rank(space);
}

Matrix row_space_sum(const Matrix& a, const Matrix& b) {
    if (a.rows() == 0) return row_space(b);
    if (b.rows() == 0) return row_space(a);
    return row_space(Matrix::vstack(a, b));
}

Matrix row_space_quotient_proj(const Matrix& space, int dim) {
    Matrix u = row_space(space);
    RrefResult rr = rref(u);
    std::vector<bool> is_piv(dim, false);
    for (int p : rr.pivots) is_piv[p] = true;
    Matrix pi(space.field(), dim - u.rows(), dim);
    int r = 0;
    for (int c = 0; c < dim; ++c) {
        if (is_piv[c]) continue;
        pi.at(r, c) = scalar_one(space.field());
        for (size_t k = 0; k < rr.pivots.size(); ++k)
            pi.at(r, rr.pivots[k]) = pi.at(r, rr.pivots[k]) - u.at(static_cast<int>(k), c);
        ++r;
    }
    return pi;
}

bool is_invertible(const Matrix& m) { return m.rows() == m.cols() && rank(m) == m.rows(); }

Matrix inverse(const Matrix& m) {
    if (m.rows() != m.cols()) throw error("inverse of non-square matrix");
    auto x = solve(m, Matrix::identity(m.field(), m.rows()));
    if (!x || !((m * *x) == Matrix::identity(m.field(), m.rows())))
        throw error("matrix is singular");
    return *x;
}

std::vector<Matrix> enumerate_subspaces(const Field& f, int dim, int bound) {
    if (!f.is_finite()) throw size_error("subspace enumeration requires a finite field");
    if (dim > bound)
        throw size_error("subspace enumeration bound exceeded: dim " + std::to_string(dim) +
                         " > " + std::to_string(bound));
    std::vector<Matrix> out;
    out.push_back(Matrix(f, 0, dim));  // zero space
    auto elems = field_elements(f);
    for (int r = 1; r <= dim; ++r) {
        // Choose pivot columns p_0 < ... < p_{r-1}, then fill free entries:
        // entry (i, j) is free iff j > p_i and j is not a pivot column.
        std::vector<int> piv(r);
        for (int i = 0; i < r; ++i) piv[i] = i;
        while (true) {
            std::vector<std::pair<int, int>> free_pos;
            std::vector<bool> is_piv(dim, false);
            for (int p : piv) is_piv[p] = true;
            for (int i = 0; i < r; ++i)
                for (int j = piv[i] + 1; j < dim; ++j)
                    if (!is_piv[j]) free_pos.emplace_back(i, j);
            std::vector<size_t> idx(free_pos.size(), 0);
            while (true) {
                Matrix m(f, r, dim);
                for (int i = 0; i < r; ++i) m.at(i, piv[i]) = scalar_one(f);
                for (size_t k = 0; k < free_pos.size(); ++k)
                    m.at(free_pos[k].first, free_pos[k].second) = elems[idx[k]];
                out.push_back(std::move(m));
                size_t k = 0;
                while (k < idx.size() && idx[k] + 1 == elems.size()) idx[k++] = 0;
                if (k == idx.size()) break;
                ++idx[k];
            }
            // next pivot combination
            int i = r - 1;
            while (i >= 0 && piv[i] == dim - r + i) --i;
            if (i < 0) break;
            ++piv[i];
            for (int j = i + 1; j < r; ++j) piv[j] = piv[j - 1] + 1;
        }
    }
    return out;
}

}  // namespace torsionlab
