#pragma once

#include <cstddef>
#include <vector>

#include <Eigen/Dense>

#include "rignls/complex_interval.hpp"

namespace rignls {

class IntervalMatrix {
public:
    IntervalMatrix() = default;
    IntervalMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), a_(rows * cols) {}

    static IntervalMatrix identity(std::size_t n);
    static IntervalMatrix from_point(const Eigen::MatrixXcd& A);
    static IntervalMatrix from_point(const Eigen::MatrixXd& A);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    CInterval& operator()(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
    const CInterval& operator()(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }

    Eigen::MatrixXcd mid() const;
    bool is_real() const;
    // |V|_inf: max over entries of the rectangle magnitude
    double max_mag() const;

private:
    std::size_t rows_ = 0, cols_ = 0;
    std::vector<CInterval> a_;
};

using IVector = std::vector<CInterval>;

IntervalMatrix mat_mul(const IntervalMatrix& A, const IntervalMatrix& B);
// point matrix times interval matrix, the hot path for I - A*Df
IntervalMatrix mat_mul(const Eigen::MatrixXcd& A, const IntervalMatrix& B);
IVector mat_vec(const IntervalMatrix& A, const IVector& x);
IVector mat_vec(const Eigen::MatrixXcd& A, const IVector& x);

// upper bounds of |I - A*B| * w using |z|_1 = |Re z| + |Im z| per entry
std::vector<double> defect_times(const Eigen::MatrixXcd& A, const IntervalMatrix& B, const std::vector<double>& w);
// upper bound of |A| * v entrywise, |.| taken as |Re|+|Im| so that rectangle magnitudes are bounded
std::vector<double> abs_mat_vec(const Eigen::MatrixXcd& A, const std::vector<double>& v);

Eigen::MatrixXd approx_inverse(const Eigen::MatrixXd& A);
Eigen::MatrixXcd approx_inverse(const Eigen::MatrixXcd& A);

}  // namespace rignls
