#include "melcert/imatrix.hpp"

#include <stdexcept>

namespace melcert {

IntervalMatrix::IntervalMatrix(std::initializer_list<std::initializer_list<Interval>> rows)
{
    rows_ = rows.size();
    cols_ = rows_ ? rows.begin()->size() : 0;
    e_.reserve(rows_ * cols_);
    for (const auto& r : rows) {
        if (r.size() != cols_) throw std::invalid_argument("ragged interval matrix");
        e_.insert(e_.end(), r.begin(), r.end());
    }
}

IntervalMatrix IntervalMatrix::identity(std::size_t n)
{
    IntervalMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = Interval(1.0);
    return m;
}

IntervalMatrix IntervalMatrix::from_point(const Eigen::MatrixXd& p)
{
    IntervalMatrix m(p.rows(), p.cols());
    for (Eigen::Index i = 0; i < p.rows(); ++i)
        for (Eigen::Index j = 0; j < p.cols(); ++j) m(i, j) = Interval(p(i, j), p(i, j));
    return m;
}

Eigen::MatrixXd IntervalMatrix::mid() const
{
    Eigen::MatrixXd m(rows_, cols_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) m(i, j) = (*this)(i, j).mid();
    return m;
}

Eigen::MatrixXd IntervalMatrix::rad() const
{
    Eigen::MatrixXd m(rows_, cols_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) m(i, j) = (*this)(i, j).rad();
    return m;
}

Eigen::MatrixXd IntervalMatrix::mag() const
{
    Eigen::MatrixXd m(rows_, cols_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) m(i, j) = (*this)(i, j).mag();
    return m;
}

IntervalMatrix IntervalMatrix::transpose() const
{
    IntervalMatrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
}

IntervalMatrix IntervalMatrix::block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const
{
    if (r0 + nr > rows_ || c0 + nc > cols_) throw std::out_of_range("matrix block out of range");
    IntervalMatrix b(nr, nc);
    for (std::size_t i = 0; i < nr; ++i)
        for (std::size_t j = 0; j < nc; ++j) b(i, j) = (*this)(r0 + i, c0 + j);
    return b;
}

void IntervalMatrix::set_block(std::size_t r0, std::size_t c0, const IntervalMatrix& b)
{
    if (r0 + b.rows() > rows_ || c0 + b.cols() > cols_) throw std::out_of_range("matrix block out of range");
    for (std::size_t i = 0; i < b.rows(); ++i)
        for (std::size_t j = 0; j < b.cols(); ++j) (*this)(r0 + i, c0 + j) = b(i, j);
}

IntervalBox IntervalMatrix::column(std::size_t j) const
{
    IntervalBox c(rows_);
    for (std::size_t i = 0; i < rows_; ++i) c[i] = (*this)(i, j);
    return c;
}

IntervalBox IntervalMatrix::row(std::size_t i) const
{
    IntervalBox r(cols_);
    for (std::size_t j = 0; j < cols_; ++j) r[j] = (*this)(i, j);
    return r;
}

bool IntervalMatrix::contains(const IntervalMatrix& o) const
{
    if (o.rows_ != rows_ || o.cols_ != cols_) throw std::invalid_argument("matrix dimension mismatch");
    for (std::size_t k = 0; k < e_.size(); ++k)
        if (!e_[k].contains(o.e_[k])) return false;
    return true;
}

bool IntervalMatrix::contains(const Eigen::MatrixXd& m) const
{
    if (std::size_t(m.rows()) != rows_ || std::size_t(m.cols()) != cols_)
        throw std::invalid_argument("matrix dimension mismatch");
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j)
            if (!(*this)(i, j).contains(m(i, j))) return false;
    return true;
}

double IntervalMatrix::max_width() const
{
    double w = 0;
    for (const auto& x : e_) w = std::fmax(w, x.width());
    return w;
}

IntervalBox imat_apply(const IntervalMatrix& m, const IntervalBox& v)
{
    if (m.cols() != v.size()) throw std::invalid_argument("matrix-vector dimension mismatch");
    IntervalBox r(m.rows());
    for (std::size_t i = 0; i < m.rows(); ++i) {
        Interval s(0.0);
        for (std::size_t j = 0; j < m.cols(); ++j) s += m(i, j) * v[j];
        r[i] = s;
    }
    return r;
}

IntervalMatrix imat_mul(const IntervalMatrix& a, const IntervalMatrix& b)
{
    if (a.cols() != b.rows()) throw std::invalid_argument("matrix product dimension mismatch");
    IntervalMatrix r(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < b.cols(); ++j) {
            Interval s(0.0);
            for (std::size_t k = 0; k < a.cols(); ++k) s += a(i, k) * b(k, j);
            r(i, j) = s;
        }
    return r;
}

IntervalMatrix operator+(const IntervalMatrix& a, const IntervalMatrix& b)
{
    if (a.rows() != b.rows() || a.cols() != b.cols()) throw std::invalid_argument("matrix dimension mismatch");
    IntervalMatrix r(a.rows(), a.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) r(i, j) = a(i, j) + b(i, j);
    return r;
}

IntervalMatrix operator-(const IntervalMatrix& a, const IntervalMatrix& b)
{
    if (a.rows() != b.rows() || a.cols() != b.cols()) throw std::invalid_argument("matrix dimension mismatch");
    IntervalMatrix r(a.rows(), a.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) r(i, j) = a(i, j) - b(i, j);
    return r;
}

IntervalMatrix operator*(const Interval& s, const IntervalMatrix& a)
{
    IntervalMatrix r(a.rows(), a.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) r(i, j) = s * a(i, j);
    return r;
}

IntervalMatrix hull(const IntervalMatrix& a, const IntervalMatrix& b)
{
    if (a.rows() != b.rows() || a.cols() != b.cols()) throw std::invalid_argument("matrix dimension mismatch");
    IntervalMatrix r(a.rows(), a.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) r(i, j) = hull(a(i, j), b(i, j));
    return r;
}

std::optional<IntervalMatrix> intersect(const IntervalMatrix& a, const IntervalMatrix& b)
{
    if (a.rows() != b.rows() || a.cols() != b.cols()) throw std::invalid_argument("matrix dimension mismatch");
    IntervalMatrix r(a.rows(), a.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) {
            auto x = intersect(a(i, j), b(i, j));
            if (!x) return std::nullopt;
            r(i, j) = *x;
        }
    return r;
}

} // namespace melcert
