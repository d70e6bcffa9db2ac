#ifndef MELCERT_IMATRIX_HPP
#define MELCERT_IMATRIX_HPP

#include <initializer_list>
#include <vector>

#include <Eigen/Dense>

#include "melcert/box.hpp"

namespace melcert {

class IntervalMatrix {
public:
    IntervalMatrix() = default;
    IntervalMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), e_(rows * cols) {}
    IntervalMatrix(std::initializer_list<std::initializer_list<Interval>> rows);
    static IntervalMatrix identity(std::size_t n);
    static IntervalMatrix from_point(const Eigen::MatrixXd& m);

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    Interval& operator()(std::size_t i, std::size_t j) { return e_[i * cols_ + j]; }
    const Interval& operator()(std::size_t i, std::size_t j) const { return e_[i * cols_ + j]; }

    Eigen::MatrixXd mid() const;
    // entrywise upper bounds of |a_ij - mid_ij|
    Eigen::MatrixXd rad() const;
    // entrywise magnitudes
    Eigen::MatrixXd mag() const;
    IntervalMatrix transpose() const;
    IntervalMatrix block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const;
    void set_block(std::size_t r0, std::size_t c0, const IntervalMatrix& b);
    IntervalBox column(std::size_t j) const;
    IntervalBox row(std::size_t i) const;
    bool contains(const IntervalMatrix& o) const;
    bool contains(const Eigen::MatrixXd& m) const;
    double max_width() const;

    friend bool operator==(const IntervalMatrix& a, const IntervalMatrix& b)
    {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.e_ == b.e_;
    }

private:
    std::size_t rows_ = 0, cols_ = 0;
    std::vector<Interval> e_;
};

IntervalBox imat_apply(const IntervalMatrix& m, const IntervalBox& v);
IntervalMatrix imat_mul(const IntervalMatrix& a, const IntervalMatrix& b);
IntervalMatrix operator+(const IntervalMatrix& a, const IntervalMatrix& b);
IntervalMatrix operator-(const IntervalMatrix& a, const IntervalMatrix& b);
IntervalMatrix operator*(const Interval& s, const IntervalMatrix& a);
inline IntervalMatrix operator*(const IntervalMatrix& a, const IntervalMatrix& b) { return imat_mul(a, b); }
inline IntervalBox operator*(const IntervalMatrix& a, const IntervalBox& v) { return imat_apply(a, v); }
IntervalMatrix hull(const IntervalMatrix& a, const IntervalMatrix& b);
std::optional<IntervalMatrix> intersect(const IntervalMatrix& a, const IntervalMatrix& b);

} // namespace melcert

#endif
