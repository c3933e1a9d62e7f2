#include "gk/linalg.hpp"

#include <sstream>
#include <stdexcept>

namespace gk {

Vec zero_vec(std::size_t n) { return Vec(n); }

Vec unit_vec(std::size_t n, std::size_t k) {
    Vec v(n);
    v.at(k) = 1;
    return v;
}

bool is_zero(const Vec& v) {
    for (const auto& x : v)
        if (!x.is_zero()) return false;
    return true;
}

Vec add(const Vec& a, const Vec& b) {
    if (a.size() != b.size()) throw std::invalid_argument("vector size mismatch");
    Vec r = a;
    for (std::size_t k = 0; k < r.size(); ++k) r[k] += b[k];
    return r;
}

Vec sub(const Vec& a, const Vec& b) {
    if (a.size() != b.size()) throw std::invalid_argument("vector size mismatch");
    Vec r = a;
    for (std::size_t k = 0; k < r.size(); ++k) r[k] -= b[k];
    return r;
}

Vec scale(const Scalar& c, const Vec& v) {
    Vec r(v.size());
    if (c.is_zero()) return r;
    for (std::size_t k = 0; k < v.size(); ++k)
        if (!v[k].is_zero()) r[k] = c * v[k];
    return r;
}

void axpy(Vec& y, const Scalar& c, const Vec& x) {
    if (y.size() != x.size()) throw std::invalid_argument("vector size mismatch");
    if (c.is_zero()) return;
    for (std::size_t k = 0; k < y.size(); ++k)
        if (!x[k].is_zero()) y[k] += c * x[k];
}

Vec concat(const Vec& a, const Vec& b) {
    Vec r = a;
    r.insert(r.end(), b.begin(), b.end());
    return r;
}

Vec slice(const Vec& v, std::size_t from, std::size_t len) {
    if (from + len > v.size()) throw std::out_of_range("slice out of range");
    return Vec(v.begin() + static_cast<std::ptrdiff_t>(from),
               v.begin() + static_cast<std::ptrdiff_t>(from + len));
}

std::string to_string(const Vec& v) {
    std::string s = "(";
    for (std::size_t k = 0; k < v.size(); ++k) {
        if (k) s += ", ";
        s += v[k].str();
    }
    return s + ")";
}

Mat Mat::identity(std::size_t n) {
    Mat m(n, n);
    for (std::size_t k = 0; k < n; ++k) m(k, k) = 1;
    return m;
}

Mat Mat::from_cols(std::size_t rows, const std::vector<Vec>& cols) {
    Mat m(rows, cols.size());
    for (std::size_t c = 0; c < cols.size(); ++c) {
        if (cols[c].size() != rows) throw std::invalid_argument("column size mismatch");
        for (std::size_t r = 0; r < rows; ++r) m(r, c) = cols[c][r];
    }
    return m;
}

Mat Mat::from_rows(std::size_t cols, const std::vector<Vec>& rows) {
    Mat m(rows.size(), cols);
    for (std::size_t r = 0; r < rows.size(); ++r) {
        if (rows[r].size() != cols) throw std::invalid_argument("row size mismatch");
        for (std::size_t c = 0; c < cols; ++c) m(r, c) = rows[r][c];
    }
    return m;
}

Mat Mat::block_diag(const Mat& a, const Mat& b) {
    Mat m(a.rows() + b.rows(), a.cols() + b.cols());
    for (std::size_t r = 0; r < a.rows(); ++r)
        for (std::size_t c = 0; c < a.cols(); ++c) m(r, c) = a(r, c);
    for (std::size_t r = 0; r < b.rows(); ++r)
        for (std::size_t c = 0; c < b.cols(); ++c) m(a.rows() + r, a.cols() + c) = b(r, c);
    return m;
}

Vec Mat::col(std::size_t c) const {
    Vec v(rows_);
    for (std::size_t r = 0; r < rows_; ++r) v[r] = (*this)(r, c);
    return v;
}

Vec Mat::row(std::size_t r) const {
    return Vec(a_.begin() + static_cast<std::ptrdiff_t>(r * cols_),
               a_.begin() + static_cast<std::ptrdiff_t>((r + 1) * cols_));
}

void Mat::set_col(std::size_t c, const Vec& v) {
    if (v.size() != rows_) throw std::invalid_argument("column size mismatch");
    for (std::size_t r = 0; r < rows_; ++r) (*this)(r, c) = v[r];
}

Mat Mat::transpose() const {
    Mat t(cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r)
        for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
    return t;
}

Vec Mat::apply(const Vec& x) const {
    if (x.size() != cols_) throw std::invalid_argument("apply: dimension mismatch");
    Vec y(rows_);
    for (std::size_t c = 0; c < cols_; ++c) {
        if (x[c].is_zero()) continue;
        for (std::size_t r = 0; r < rows_; ++r) {
            const Scalar& m = (*this)(r, c);
            if (!m.is_zero()) y[r] += m * x[c];
        }
    }
    return y;
}

bool Mat::is_zero() const {
    for (const auto& x : a_)
        if (!x.is_zero()) return false;
    return true;
}

bool Mat::is_identity() const {
    if (rows_ != cols_) return false;
    for (std::size_t r = 0; r < rows_; ++r)
        for (std::size_t c = 0; c < cols_; ++c) {
            const Scalar& x = (*this)(r, c);
            if (r == c ? !x.is_one() : !x.is_zero()) return false;
        }
    return true;
}

Mat Mat::unflatten(std::size_t rows, std::size_t cols, const Vec& v) {
    if (v.size() != rows * cols) throw std::invalid_argument("unflatten: size mismatch");
    Mat m(rows, cols);
    m.a_ = v;
    return m;
}

Mat& Mat::operator+=(const Mat& o) {
    if (rows_ != o.rows_ || cols_ != o.cols_) throw std::invalid_argument("matrix size mismatch");
    for (std::size_t k = 0; k < a_.size(); ++k)
        if (!o.a_[k].is_zero()) a_[k] += o.a_[k];
    return *this;
}

Mat& Mat::operator-=(const Mat& o) {
    if (rows_ != o.rows_ || cols_ != o.cols_) throw std::invalid_argument("matrix size mismatch");
    for (std::size_t k = 0; k < a_.size(); ++k)
        if (!o.a_[k].is_zero()) a_[k] -= o.a_[k];
    return *this;
}

Mat operator*(const Mat& a, const Mat& b) {
    if (a.cols_ != b.rows_) throw std::invalid_argument("matrix product: dimension mismatch");
    Mat c(a.rows_, b.cols_);
    for (std::size_t r = 0; r < a.rows_; ++r)
        for (std::size_t k = 0; k < a.cols_; ++k) {
            const Scalar& x = a(r, k);
            if (x.is_zero()) continue;
            for (std::size_t col = 0; col < b.cols_; ++col) {
                const Scalar& y = b(k, col);
                if (!y.is_zero()) c(r, col) += x * y;
            }
        }
    return c;
}

Mat operator*(const Scalar& s, Mat a) {
    for (auto& x : a.a_)
        if (!x.is_zero()) x *= s;
    return a;
}

std::string Mat::to_string() const {
    std::ostringstream os;
    os << "[";
    for (std::size_t r = 0; r < rows_; ++r) {
        if (r) os << "; ";
        for (std::size_t c = 0; c < cols_; ++c) {
            if (c) os << ", ";
            os << (*this)(r, c).str();
        }
    }
    os << "]";
    return os.str();
}

Mat kron(const Mat& a, const Mat& b) {
    Mat m(a.rows() * b.rows(), a.cols() * b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) {
            const Scalar& x = a(i, j);
            if (x.is_zero()) continue;
            for (std::size_t k = 0; k < b.rows(); ++k)
                for (std::size_t l = 0; l < b.cols(); ++l)
                    if (!b(k, l).is_zero()) m(i * b.rows() + k, j * b.cols() + l) = x * b(k, l);
        }
    return m;
}

Rref rref(Mat m) {
    Rref out;
    std::size_t lead_row = 0;
    for (std::size_t c = 0; c < m.cols() && lead_row < m.rows(); ++c) {
        std::size_t p = lead_row;
        while (p < m.rows() && m(p, c).is_zero()) ++p;
        if (p == m.rows()) continue;
        if (p != lead_row)
            for (std::size_t k = 0; k < m.cols(); ++k) std::swap(m(p, k), m(lead_row, k));
        Scalar inv = m(lead_row, c).inverse();
        for (std::size_t k = c; k < m.cols(); ++k)
            if (!m(lead_row, k).is_zero()) m(lead_row, k) *= inv;
        for (std::size_t r = 0; r < m.rows(); ++r) {
            if (r == lead_row || m(r, c).is_zero()) continue;
            Scalar f = m(r, c);
            for (std::size_t k = c; k < m.cols(); ++k)
                if (!m(lead_row, k).is_zero()) m(r, k) -= f * m(lead_row, k);
        }
        out.pivots.push_back(c);
        ++lead_row;
    }
    out.reduced = std::move(m);
    return out;
}

std::size_t rank(const Mat& m) { return rref(m).pivots.size(); }

std::vector<Vec> kernel(const Mat& m) {
    Rref r = rref(m);
    std::vector<bool> is_pivot(m.cols(), false);
    for (auto p : r.pivots) is_pivot[p] = true;
    std::vector<Vec> basis;
    for (std::size_t free = 0; free < m.cols(); ++free) {
        if (is_pivot[free]) continue;
        Vec v(m.cols());
        v[free] = 1;
        for (std::size_t k = 0; k < r.pivots.size(); ++k) v[r.pivots[k]] = -r.reduced(k, free);
        basis.push_back(std::move(v));
    }
    return basis;
}

LinearSolution solve_linear(const Mat& a, const Vec& b) {
    if (b.size() != a.rows()) throw std::invalid_argument("solve_linear: dimension mismatch");
    Mat aug(a.rows(), a.cols() + 1);
    for (std::size_t r = 0; r < a.rows(); ++r) {
        for (std::size_t c = 0; c < a.cols(); ++c) aug(r, c) = a(r, c);
        aug(r, a.cols()) = b[r];
    }
    Rref red = rref(aug);
    LinearSolution sol;
    if (!red.pivots.empty() && red.pivots.back() == a.cols()) return sol;
    sol.consistent = true;
    sol.particular = Vec(a.cols());
    for (std::size_t k = 0; k < red.pivots.size(); ++k)
        sol.particular[red.pivots[k]] = red.reduced(k, a.cols());
    sol.kernel = kernel(a);
    return sol;
}

std::optional<Mat> inverse(const Mat& m) {
    if (m.rows() != m.cols()) throw std::invalid_argument("inverse: matrix is not square");
    const std::size_t n = m.rows();
    Mat aug(n, 2 * n);
    for (std::size_t r = 0; r < n; ++r) {
        for (std::size_t c = 0; c < n; ++c) aug(r, c) = m(r, c);
        aug(r, n + r) = 1;
    }
    Rref red = rref(std::move(aug));
    if (red.pivots.size() < n || (n > 0 && red.pivots[n - 1] != n - 1)) return std::nullopt;
    Mat inv(n, n);
    for (std::size_t r = 0; r < n; ++r)
        for (std::size_t c = 0; c < n; ++c) inv(r, c) = red.reduced(r, n + c);
    return inv;
}

SpanResult span_membership(const Vec& v, const std::vector<Vec>& basis) {
    for (const auto& b : basis)
        if (b.size() != v.size()) throw std::invalid_argument("span_membership: dimension mismatch");
    SpanResult res;
    if (basis.empty()) {
        res.in_span = is_zero(v);
        return res;
    }
    LinearSolution s = solve_linear(Mat::from_cols(v.size(), basis), v);
    res.in_span = s.consistent;
    if (s.consistent) res.coords = std::move(s.particular);
    return res;
}

Subspace::Subspace(std::size_t ambient_dim, const std::vector<Vec>& gens) : n_(ambient_dim) {
    for (const auto& g : gens) add(g);
}

Vec Subspace::reduce(const Vec& v, Vec* coeffs) const {
    if (v.size() != n_) throw std::invalid_argument("Subspace: dimension mismatch");
    Vec r = v;
    if (coeffs) *coeffs = Vec(echelon_.size());
    for (std::size_t k = 0; k < echelon_.size(); ++k) {
        const Scalar c = r[pivot_[k]];
        if (c.is_zero()) continue;
        axpy(r, -c, echelon_[k]);
        if (coeffs) (*coeffs)[k] = c;
    }
    return r;
}

bool Subspace::add(const Vec& v) {
    Vec coeffs;
    Vec r = reduce(v, &coeffs);
    std::size_t p = 0;
    while (p < n_ && r[p].is_zero()) ++p;
    if (p == n_) return false;
    // r = v - sum coeffs[k] echelon_[k]; normalize so r[p] = 1.
    Scalar inv = r[p].inverse();
    r = scale(inv, r);
    std::size_t m = basis_.size();
    Vec t(m + 1);
    t[m] = inv;
    for (std::size_t k = 0; k < echelon_.size(); ++k) {
        if (coeffs[k].is_zero()) continue;
        Scalar f = -coeffs[k] * inv;
        for (std::size_t j = 0; j < m; ++j)
            if (!transform_[k][j].is_zero()) t[j] += f * transform_[k][j];
    }
    for (auto& row : transform_) row.emplace_back();
    basis_.push_back(v);
    echelon_.push_back(std::move(r));
    pivot_.push_back(p);
    transform_.push_back(std::move(t));
    return true;
}

bool Subspace::contains(const Vec& v) const { return is_zero(reduce(v, nullptr)); }

Vec Subspace::residual(const Vec& v) const { return reduce(v, nullptr); }

std::optional<Vec> Subspace::coords(const Vec& v) const {
    Vec c;
    Vec r = reduce(v, &c);
    if (!is_zero(r)) return std::nullopt;
    Vec out(basis_.size());
    for (std::size_t k = 0; k < c.size(); ++k) {
        if (c[k].is_zero()) continue;
        for (std::size_t j = 0; j < out.size(); ++j)
            if (!transform_[k][j].is_zero()) out[j] += c[k] * transform_[k][j];
    }
    return out;
}

Vec Subspace::combine(const Vec& coords) const {
    if (coords.size() != basis_.size()) throw std::invalid_argument("Subspace::combine size mismatch");
    Vec v(n_);
    for (std::size_t k = 0; k < coords.size(); ++k) axpy(v, coords[k], basis_[k]);
    return v;
}

}  // namespace gk
