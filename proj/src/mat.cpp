#include "ascan/mat.hpp"

#include <cassert>

namespace ascan {

namespace {
constexpr std::size_t kRowBlock = 4;
}

void matmul(const Mat& a, const Mat& b, Mat& c) {
    assert(a.cols == b.rows);
    const std::size_t m = a.rows, k = a.cols, n = b.cols;
    c.rows = m;
    c.cols = n;
    c.data.assign(m * n, 0.0);

    std::size_t i = 0;
    for (; i + kRowBlock <= m; i += kRowBlock) {
        double* c0 = c.data.data() + (i + 0) * n;
        double* c1 = c.data.data() + (i + 1) * n;
        double* c2 = c.data.data() + (i + 2) * n;
        double* c3 = c.data.data() + (i + 3) * n;
        for (std::size_t kk = 0; kk < k; ++kk) {
            const double a0 = a.data[(i + 0) * k + kk];
            const double a1 = a.data[(i + 1) * k + kk];
            const double a2 = a.data[(i + 2) * k + kk];
            const double a3 = a.data[(i + 3) * k + kk];
            const double* brow = b.data.data() + kk * n;
            for (std::size_t j = 0; j < n; ++j) {
                const double bv = brow[j];
                c0[j] += a0 * bv;
                c1[j] += a1 * bv;
                c2[j] += a2 * bv;
                c3[j] += a3 * bv;
            }
        }
    }
    for (; i < m; ++i) {
        double* crow = c.data.data() + i * n;
        for (std::size_t kk = 0; kk < k; ++kk) {
            const double av = a.data[i * k + kk];
            const double* brow = b.data.data() + kk * n;
            for (std::size_t j = 0; j < n; ++j) crow[j] += av * brow[j];
        }
    }
}

void matmul_tn(const Mat& a, const Mat& b, Mat& c) {
    assert(a.rows == b.rows);
    const std::size_t m = a.rows, p = a.cols, q = b.cols;
    c.rows = p;
    c.cols = q;
    c.data.assign(p * q, 0.0);
    for (std::size_t i = 0; i < m; ++i) {
        const double* arow = a.data.data() + i * p;
        const double* brow = b.data.data() + i * q;
        for (std::size_t pp = 0; pp < p; ++pp) {
            const double av = arow[pp];
            if (av == 0.0) continue;
            double* crow = c.data.data() + pp * q;
            for (std::size_t j = 0; j < q; ++j) crow[j] += av * brow[j];
        }
    }
}

Mat transposed(const Mat& a) {
    Mat t(a.cols, a.rows);
    for (std::size_t i = 0; i < a.rows; ++i)
        for (std::size_t j = 0; j < a.cols; ++j) t.data[j * a.rows + i] = a.data[i * a.cols + j];
    return t;
}

} // namespace ascan
