#include "gdist/matrix.hpp"

#include <cmath>

#include "gdist/error.hpp"
#include "gdist/kernels.hpp"

namespace gdist {

Matrix::Matrix(std::initializer_list<std::initializer_list<double>> rows) {
    rows_ = rows.size();
    cols_ = rows_ == 0 ? 0 : rows.begin()->size();
    data_.reserve(rows_ * cols_);
    for (const auto& r : rows) {
        if (r.size() != cols_) throw SizeError("ragged matrix literal");
        data_.insert(data_.end(), r.begin(), r.end());
    }
}

Matrix Matrix::identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
}

Matrix Matrix::transpose() const {
    Matrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
}

double frobenius_norm(const Matrix& m) {
    return std::sqrt(kernels::dot(m.values(), m.values()));
}

double frobenius_distance(const Matrix& a, const Matrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols())
        throw SizeError("frobenius_distance: shape mismatch");
    return std::sqrt(kernels::sum_squared_diff(a.values(), b.values()));
}

double trace(const Matrix& m) {
    double t = 0.0;
    for (std::size_t i = 0; i < std::min(m.rows(), m.cols()); ++i) t += m(i, i);
    return t;
}

Matrix multiply(const Matrix& a, const Matrix& b) {
    if (a.cols() != b.rows()) throw SizeError("multiply: inner dimensions differ");
    Matrix c(a.rows(), b.cols());
    // i-k-j order: the inner update is a contiguous axpy over a row of b.
    for (std::size_t i = 0; i < a.rows(); ++i) {
        auto out = c.row(i);
        for (std::size_t k = 0; k < a.cols(); ++k) {
            const double aik = a(i, k);
            if (aik != 0.0) kernels::axpy(aik, b.row(k), out);
        }
    }
    return c;
}

bool is_symmetric(const Matrix& m, double tol) {
    if (!m.square()) return false;
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = i + 1; j < m.cols(); ++j)
            if (std::abs(m(i, j) - m(j, i)) > tol) return false;
    return true;
}

} // namespace gdist
