#pragma once

#include "gk/scalar.hpp"

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace gk {

using Vec = std::vector<Scalar>;

Vec zero_vec(std::size_t n);
Vec unit_vec(std::size_t n, std::size_t k);
bool is_zero(const Vec& v);
Vec add(const Vec& a, const Vec& b);
Vec sub(const Vec& a, const Vec& b);
Vec scale(const Scalar& c, const Vec& v);
// y += c * x
void axpy(Vec& y, const Scalar& c, const Vec& x);
Vec concat(const Vec& a, const Vec& b);
Vec slice(const Vec& v, std::size_t from, std::size_t len);
std::string to_string(const Vec& v);

// Dense row-major matrix of exact scalars.
class Mat {
public:
    Mat() = default;
    Mat(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), a_(rows * cols) {}

    static Mat identity(std::size_t n);
    static Mat zero(std::size_t rows, std::size_t cols) { return Mat(rows, cols); }
    static Mat from_cols(std::size_t rows, const std::vector<Vec>& cols);
    static Mat from_rows(std::size_t cols, const std::vector<Vec>& rows);
    static Mat block_diag(const Mat& a, const Mat& b);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    Scalar& operator()(std::size_t r, std::size_t c) { return a_[r * cols_ + c]; }
    const Scalar& operator()(std::size_t r, std::size_t c) const { return a_[r * cols_ + c]; }

    Vec col(std::size_t c) const;
    Vec row(std::size_t r) const;
    void set_col(std::size_t c, const Vec& v);
    Mat transpose() const;

    Vec apply(const Vec& x) const;
    bool is_zero() const;
    bool is_identity() const;

    // Row-major flattening, used when operators are treated as vectors.
    Vec flatten() const { return a_; }
    static Mat unflatten(std::size_t rows, std::size_t cols, const Vec& v);

    friend bool operator==(const Mat& a, const Mat& b) {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.a_ == b.a_;
    }
    friend bool operator!=(const Mat& a, const Mat& b) { return !(a == b); }

    Mat& operator+=(const Mat& o);
    Mat& operator-=(const Mat& o);
    friend Mat operator+(Mat a, const Mat& b) { return a += b; }
    friend Mat operator-(Mat a, const Mat& b) { return a -= b; }
    friend Mat operator*(const Mat& a, const Mat& b);
    friend Mat operator*(const Scalar& c, Mat a);

    std::string to_string() const;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Scalar> a_;
};

// Kronecker product a (x) b.
Mat kron(const Mat& a, const Mat& b);

struct Rref {
    Mat reduced;
    std::vector<std::size_t> pivots;  // pivot column of each nonzero row
};

// Reduced row echelon form with canonical (reduced-fraction) entries.
Rref rref(Mat m);
std::size_t rank(const Mat& m);
// Basis of the null space, one vector per free column, in column order.
std::vector<Vec> kernel(const Mat& m);

struct LinearSolution {
    bool consistent = false;
    Vec particular;           // free variables set to zero
    std::vector<Vec> kernel;  // basis of the homogeneous solutions
};

// Throws std::invalid_argument on dimension mismatch.
LinearSolution solve_linear(const Mat& a, const Vec& b);

struct SpanResult {
    bool in_span = false;
    Vec coords;  // v = sum coords[k] * basis[k] when in_span
};

// Exact inverse of a square matrix, nullopt when singular.
std::optional<Mat> inverse(const Mat& m);

// Throws std::invalid_argument on dimension mismatch.
SpanResult span_membership(const Vec& v, const std::vector<Vec>& basis);

// Incrementally maintained subspace of K^n. Keeps the independent generators
// in insertion order and a semi-echelon copy for fast reduction, together
// with the change of basis back to the kept generators.
class Subspace {
public:
    explicit Subspace(std::size_t ambient_dim = 0) : n_(ambient_dim) {}
    Subspace(std::size_t ambient_dim, const std::vector<Vec>& gens);

    std::size_t ambient_dim() const { return n_; }
    std::size_t dim() const { return basis_.size(); }
    const std::vector<Vec>& basis() const { return basis_; }

    // Returns true when v was independent and got appended.
    bool add(const Vec& v);
    bool contains(const Vec& v) const;
    // Coordinates with respect to basis(), or nullopt when v is outside.
    std::optional<Vec> coords(const Vec& v) const;
    // Residual after reduction; zero exactly when v is in the span.
    Vec residual(const Vec& v) const;
    Vec combine(const Vec& coords) const;

private:
    Vec reduce(const Vec& v, Vec* coeffs) const;

    std::size_t n_;
    std::vector<Vec> basis_;
    std::vector<Vec> echelon_;
    std::vector<std::size_t> pivot_;
    std::vector<Vec> transform_;  // echelon_[k] = sum transform_[k][j] * basis_[j]
};

}  // namespace gk
