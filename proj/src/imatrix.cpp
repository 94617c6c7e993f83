#include "rignls/imatrix.hpp"

#include <stdexcept>

namespace rignls {

IntervalMatrix IntervalMatrix::identity(std::size_t n) {
    IntervalMatrix I(n, n);
    for (std::size_t i = 0; i < n; ++i) I(i, i) = CInterval(1.0);
    return I;
}

IntervalMatrix IntervalMatrix::from_point(const Eigen::MatrixXcd& A) {
    IntervalMatrix R(A.rows(), A.cols());
    for (Eigen::Index i = 0; i < A.rows(); ++i)
        for (Eigen::Index j = 0; j < A.cols(); ++j) R(i, j) = CInterval(A(i, j));
    return R;
}

IntervalMatrix IntervalMatrix::from_point(const Eigen::MatrixXd& A) {
    IntervalMatrix R(A.rows(), A.cols());
    for (Eigen::Index i = 0; i < A.rows(); ++i)
        for (Eigen::Index j = 0; j < A.cols(); ++j) R(i, j) = CInterval(A(i, j));
    return R;
}

Eigen::MatrixXcd IntervalMatrix::mid() const {
    Eigen::MatrixXcd M(rows_, cols_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) M(i, j) = (*this)(i, j).mid();
    return M;
}

bool IntervalMatrix::is_real() const {
    for (const auto& z : a_)
        if (!z.is_real()) return false;
    return true;
}

double IntervalMatrix::max_mag() const {
    double m = 0;
    for (const auto& z : a_) m = std::max(m, mag(z).hi());
    return m;
}

IntervalMatrix mat_mul(const IntervalMatrix& A, const IntervalMatrix& B) {
    if (A.cols() != B.rows()) throw std::invalid_argument("mat_mul: dimension mismatch");
    IntervalMatrix C(A.rows(), B.cols());
    for (std::size_t i = 0; i < A.rows(); ++i)
        for (std::size_t k = 0; k < A.cols(); ++k) {
            const CInterval& a = A(i, k);
            for (std::size_t j = 0; j < B.cols(); ++j) C(i, j) += a * B(k, j);
        }
    return C;
}

namespace {

struct Acc {
    double lo = 0, hi = 0;
    // += x * [l, h] for a point x
    void axpy(double x, double l, double h) {
        if (x == 0) return;
        if (x > 0) {
            lo = rnd::add_down(lo, rnd::mul_down(x, l));
            hi = rnd::add_up(hi, rnd::mul_up(x, h));
        } else {
            lo = rnd::add_down(lo, rnd::mul_down(x, h));
            hi = rnd::add_up(hi, rnd::mul_up(x, l));
        }
    }
};

}  // namespace

IntervalMatrix mat_mul(const Eigen::MatrixXcd& A, const IntervalMatrix& B) {
    if (static_cast<std::size_t>(A.cols()) != B.rows()) throw std::invalid_argument("mat_mul: dimension mismatch");
    const std::size_t n = A.rows(), p = A.cols(), q = B.cols();
    IntervalMatrix C(n, q);
    std::vector<Acc> re(q), im(q);
    for (std::size_t i = 0; i < n; ++i) {
        std::fill(re.begin(), re.end(), Acc{});
        std::fill(im.begin(), im.end(), Acc{});
        for (std::size_t k = 0; k < p; ++k) {
            const double ar = A(i, k).real(), ai = A(i, k).imag();
            if (ar == 0 && ai == 0) continue;
            for (std::size_t j = 0; j < q; ++j) {
                const CInterval& b = B(k, j);
                re[j].axpy(ar, b.re.lo(), b.re.hi());
                im[j].axpy(ar, b.im.lo(), b.im.hi());
                re[j].axpy(-ai, b.im.lo(), b.im.hi());
                im[j].axpy(ai, b.re.lo(), b.re.hi());
            }
        }
        for (std::size_t j = 0; j < q; ++j)
            C(i, j) = CInterval(Interval(re[j].lo, re[j].hi), Interval(im[j].lo, im[j].hi));
    }
    return C;
}

IVector mat_vec(const IntervalMatrix& A, const IVector& x) {
    if (A.cols() != x.size()) throw std::invalid_argument("mat_vec: dimension mismatch");
    IVector y(A.rows());
    for (std::size_t i = 0; i < A.rows(); ++i)
        for (std::size_t j = 0; j < A.cols(); ++j) y[i] += A(i, j) * x[j];
    return y;
}

IVector mat_vec(const Eigen::MatrixXcd& A, const IVector& x) {
    if (static_cast<std::size_t>(A.cols()) != x.size()) throw std::invalid_argument("mat_vec: dimension mismatch");
    IVector y(A.rows());
    for (Eigen::Index i = 0; i < A.rows(); ++i) {
        Acc re, im;
        for (Eigen::Index j = 0; j < A.cols(); ++j) {
            const double ar = A(i, j).real(), ai = A(i, j).imag();
            const CInterval& b = x[j];
            re.axpy(ar, b.re.lo(), b.re.hi());
            im.axpy(ar, b.im.lo(), b.im.hi());
            re.axpy(-ai, b.im.lo(), b.im.hi());
            im.axpy(ai, b.re.lo(), b.re.hi());
        }
        y[i] = CInterval(Interval(re.lo, re.hi), Interval(im.lo, im.hi));
    }
    return y;
}

std::vector<double> defect_times(const Eigen::MatrixXcd& A, const IntervalMatrix& B, const std::vector<double>& w) {
    IntervalMatrix C = mat_mul(A, B);
    if (C.rows() != C.cols() || C.cols() != w.size()) throw std::invalid_argument("defect_times: dimension mismatch");
    std::vector<double> out(C.rows(), 0.0);
    for (std::size_t i = 0; i < C.rows(); ++i) {
        double acc = 0;
        for (std::size_t j = 0; j < C.cols(); ++j) {
            CInterval e = (i == j ? CInterval(1.0) : CInterval()) - C(i, j);
            acc = rnd::add_up(acc, rnd::mul_up(abs1(e), w[j]));
        }
        out[i] = acc;
    }
    return out;
}

std::vector<double> abs_mat_vec(const Eigen::MatrixXcd& A, const std::vector<double>& v) {
    if (static_cast<std::size_t>(A.cols()) != v.size()) throw std::invalid_argument("abs_mat_vec: dimension mismatch");
    std::vector<double> out(A.rows(), 0.0);
    for (Eigen::Index i = 0; i < A.rows(); ++i) {
        double acc = 0;
        for (Eigen::Index j = 0; j < A.cols(); ++j) {
            double a = rnd::add_up(std::fabs(A(i, j).real()), std::fabs(A(i, j).imag()));
            acc = rnd::add_up(acc, rnd::mul_up(a, v[j]));
        }
        out[i] = acc;
    }
    return out;
}

namespace {

template <class Mat>
Mat inverse_checked(const Mat& A) {
    if (A.rows() != A.cols()) throw std::invalid_argument("approx_inverse: matrix is not square");
    if (A.rows() == 0) return A;
    Eigen::PartialPivLU<Mat> lu(A);
    Mat X = lu.inverse();
    if (!X.allFinite()) throw std::runtime_error("approx_inverse: matrix is singular to working precision");
    double rc = lu.rcond();
    if (!(rc > 1e3 * std::numeric_limits<double>::epsilon()))
        throw std::runtime_error("approx_inverse: matrix is singular to working precision");
    return X;
}

}  // namespace

Eigen::MatrixXd approx_inverse(const Eigen::MatrixXd& A) { return inverse_checked(A); }
Eigen::MatrixXcd approx_inverse(const Eigen::MatrixXcd& A) { return inverse_checked(A); }

}  // namespace rignls
