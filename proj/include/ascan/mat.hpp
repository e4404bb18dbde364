#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace ascan {

/// Dense row-major matrix of doubles.
struct Mat {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<double> data;

    Mat() = default;
    Mat(std::size_t r, std::size_t c) : rows(r), cols(c), data(r * c, 0.0) {}

    double& operator()(std::size_t i, std::size_t j) { return data[i * cols + j]; }
    double operator()(std::size_t i, std::size_t j) const { return data[i * cols + j]; }

    std::span<double> row(std::size_t i) { return {data.data() + i * cols, cols}; }
    std::span<const double> row(std::size_t i) const { return {data.data() + i * cols, cols}; }

    void zero() { std::fill(data.begin(), data.end(), 0.0); }
};

/// C = A * B. C is resized. Blocked over rows of A so B streams once per block.
void matmul(const Mat& a, const Mat& b, Mat& c);

/// C = A^T * B  (A is m x p, B is m x q, C is p x q).
void matmul_tn(const Mat& a, const Mat& b, Mat& c);

Mat transposed(const Mat& a);

} // namespace ascan
