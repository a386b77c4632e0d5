#pragma once

#include <cmath>
#include <complex>
#include <vector>

#include "sphalu/errors.hpp"

namespace sphalu {

using cplx = std::complex<double>;

// Dense complex matrix, row-major, double precision. The universal carrier of
// every operator in the library; values are immutable by convention once
// handed to a decomposition.
class Matrix {
public:
    Matrix() = default;
    Matrix(int rows, int cols) : rows_(rows), cols_(cols), data_(static_cast<size_t>(rows) * cols) {}

    static Matrix identity(int d) {
        Matrix m(d, d);
        for (int i = 0; i < d; ++i) m(i, i) = 1.0;
        return m;
    }

    static Matrix diagonal(const std::vector<cplx>& entries) {
        Matrix m(static_cast<int>(entries.size()), static_cast<int>(entries.size()));
        for (size_t i = 0; i < entries.size(); ++i) m(static_cast<int>(i), static_cast<int>(i)) = entries[i];
        return m;
    }

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    bool is_square() const { return rows_ == cols_; }

    cplx& operator()(int i, int j) { return data_[static_cast<size_t>(i) * cols_ + j]; }
    const cplx& operator()(int i, int j) const { return data_[static_cast<size_t>(i) * cols_ + j]; }

    const std::vector<cplx>& data() const { return data_; }
    std::vector<cplx>& data() { return data_; }

    Matrix adjoint() const {
        Matrix m(cols_, rows_);
        for (int i = 0; i < rows_; ++i)
            for (int j = 0; j < cols_; ++j) m(j, i) = std::conj((*this)(i, j));
        return m;
    }

    double frobenius_norm() const {
        double s = 0.0;
        for (const cplx& z : data_) s += std::norm(z);
        return std::sqrt(s);
    }

    double max_abs() const {
        double m = 0.0;
        for (const cplx& z : data_) m = std::max(m, std::abs(z));
        return m;
    }

    bool all_finite() const {
        for (const cplx& z : data_)
            if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return false;
        return true;
    }

    void set_block(int row0, int col0, const Matrix& b) {
        for (int i = 0; i < b.rows(); ++i)
            for (int j = 0; j < b.cols(); ++j) (*this)(row0 + i, col0 + j) = b(i, j);
    }

    void add_block(int row0, int col0, const Matrix& b, cplx factor) {
        for (int i = 0; i < b.rows(); ++i)
            for (int j = 0; j < b.cols(); ++j) (*this)(row0 + i, col0 + j) += factor * b(i, j);
    }

    friend Matrix operator+(const Matrix& a, const Matrix& b) {
        require_same_shape(a, b, "operator+");
        Matrix r = a;
        for (size_t i = 0; i < r.data_.size(); ++i) r.data_[i] += b.data_[i];
        return r;
    }

    friend Matrix operator-(const Matrix& a, const Matrix& b) {
        require_same_shape(a, b, "operator-");
        Matrix r = a;
        for (size_t i = 0; i < r.data_.size(); ++i) r.data_[i] -= b.data_[i];
        return r;
    }

    friend Matrix operator*(const Matrix& a, const Matrix& b) {
        if (a.cols_ != b.rows_)
            throw DimensionMismatch("matrix product: inner dimensions differ");
        Matrix r(a.rows_, b.cols_);
        for (int i = 0; i < a.rows_; ++i) {
            for (int k = 0; k < a.cols_; ++k) {
                const cplx aik = a(i, k);
                if (aik == cplx(0.0, 0.0)) continue;
                for (int j = 0; j < b.cols_; ++j) r(i, j) += aik * b(k, j);
            }
        }
        return r;
    }

    friend Matrix operator*(cplx s, const Matrix& a) {
        Matrix r = a;
        for (cplx& z : r.data_) z *= s;
        return r;
    }

    friend Matrix operator*(const Matrix& a, cplx s) { return s * a; }

    friend Matrix operator-(const Matrix& a) { return cplx(-1.0, 0.0) * a; }

private:
    static void require_same_shape(const Matrix& a, const Matrix& b, const char* what) {
        if (a.rows_ != b.rows_ || a.cols_ != b.cols_)
            throw DimensionMismatch(std::string(what) + ": shapes differ");
    }

    int rows_ = 0;
    int cols_ = 0;
    std::vector<cplx> data_;
};

inline double commutator_norm(const Matrix& a, const Matrix& b) {
    return (a * b - b * a).frobenius_norm();
}

}  // namespace sphalu
