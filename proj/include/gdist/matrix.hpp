#pragma once

#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace gdist {

// Dense row-major matrix of doubles. Small (m <= a few hundred) by design of
// the callers; no expression templates, no views beyond row spans.
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols, double fill = 0.0)
        : rows_(rows), cols_(cols), data_(rows * cols, fill) {}
    Matrix(std::initializer_list<std::initializer_list<double>> rows);

    static Matrix identity(std::size_t n);

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    bool square() const noexcept { return rows_ == cols_; }
    bool empty() const noexcept { return data_.empty(); }

    double& operator()(std::size_t i, std::size_t j) noexcept { return data_[i * cols_ + j]; }
    double operator()(std::size_t i, std::size_t j) const noexcept { return data_[i * cols_ + j]; }

    std::span<double> row(std::size_t i) noexcept { return {data_.data() + i * cols_, cols_}; }
    std::span<const double> row(std::size_t i) const noexcept {
        return {data_.data() + i * cols_, cols_};
    }

    std::span<double> values() noexcept { return data_; }
    std::span<const double> values() const noexcept { return data_; }

    Matrix transpose() const;

    friend bool operator==(const Matrix&, const Matrix&) = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<double> data_;
};

double frobenius_norm(const Matrix& m);
double frobenius_distance(const Matrix& a, const Matrix& b);
double trace(const Matrix& m);
Matrix multiply(const Matrix& a, const Matrix& b);
bool is_symmetric(const Matrix& m, double tol = 0.0);

} // namespace gdist
