#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "torsionlab/scalar.hpp"

namespace torsionlab {

// Dense matrix over an exact field, row-major. Immutable in spirit: all
// operations return fresh values.
class Matrix {
  public:
    Matrix() : field_{0}, rows_(0), cols_(0) {}
    Matrix(Field f, int rows, int cols);  // zero matrix

    static Matrix identity(Field f, int n);
    static Matrix from_rows(Field f, const std::vector<std::vector<long long>>& rows);

    const Field& field() const { return field_; }
    int rows() const { return rows_; }
    int cols() const { return cols_; }

    const Scalar& at(int r, int c) const { return e_[static_cast<size_t>(r) * cols_ + c]; }
    Scalar& at(int r, int c) { return e_[static_cast<size_t>(r) * cols_ + c]; }

    Matrix operator+(const Matrix& o) const;
    Matrix operator-(const Matrix& o) const;
    Matrix operator*(const Matrix& o) const;
    Matrix operator-() const;
    Matrix scaled(const Scalar& c) const;
    Matrix transpose() const;
    bool is_zero() const;

    Matrix row(int r) const;
    Matrix col(int c) const;

    // Stacked matrices; fields and the shared dimension must agree.
    static Matrix vstack(const Matrix& top, const Matrix& bottom);
    static Matrix hstack(const Matrix& left, const Matrix& right);

    friend bool operator==(const Matrix&, const Matrix&) = default;

  private:
    Field field_;
    int rows_, cols_;
    std::vector<Scalar> e_;
};

struct RrefResult {
    Matrix mat;
    std::vector<int> pivots;
};

// Reduced row echelon form with pivot column list. rank == pivots.size().
RrefResult rref(const Matrix& m);
int rank(const Matrix& m);

// Basis of the right null space { v : m v = 0 }, as matrix columns.
// Column count == cols(m) - rank(m).
Matrix kernel_basis(const Matrix& m);

// One solution x of m x = b (b may have several columns), or nullopt if the
// system is inconsistent. Free variables are set to zero.
std::optional<Matrix> solve(const Matrix& m, const Matrix& b);

// Canonical subspace representative: RREF row basis with zero rows dropped.
// Two subspaces are equal iff their canonical matrices are equal.
Matrix row_space(const Matrix& m);
Matrix col_space(const Matrix& m);

// Does row_space(space) contain every row of vecs?
bool row_space_contains(const Matrix& space, const Matrix& vecs);

// Sum of row spaces, canonical form.
Matrix row_space_sum(const Matrix& a, const Matrix& b);

// Projection F^dim -> F^(dim - rank) whose kernel is exactly row_space(space).
Matrix row_space_quotient_proj(const Matrix& space, int dim);

bool is_invertible(const Matrix& m);
Matrix inverse(const Matrix& m);

// All subspaces of F_p^dim as canonical RREF row-basis matrices, ordered by
// dimension then lexicographically. The count is the Gaussian binomial sum.
// dim above the bound is refused.
std::vector<Matrix> enumerate_subspaces(const Field& f, int dim, int bound = 4);

}  // namespace torsionlab
