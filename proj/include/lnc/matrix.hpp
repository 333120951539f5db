#pragma once

#include <cstddef>
#include <initializer_list>
#include <string>
#include <vector>

#include "lnc/field.hpp"

namespace lnc {

/// Dense row-major matrix over one finite field.
class Matrix {
  public:
    Matrix(FieldRef field, std::size_t rows, std::size_t cols)
        : field_(std::move(field)), rows_(rows), cols_(cols), data_(rows * cols, 0) {}

    Matrix(FieldRef field, std::size_t rows, std::size_t cols, std::vector<std::uint16_t> data);

    static Matrix identity(FieldRef field, std::size_t n);
    static Matrix random(FieldRef field, std::size_t rows, std::size_t cols, SplitMix64& rng);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    const FieldRef& field() const { return field_; }
    const std::vector<std::uint16_t>& data() const { return data_; }

    std::uint16_t at(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }
    void set(std::size_t r, std::size_t c, std::uint16_t v);

    bool is_zero() const;

    friend bool operator==(const Matrix& a, const Matrix& b) {
        return a.field_->same(*b.field_) && a.rows_ == b.rows_ && a.cols_ == b.cols_ &&
               a.data_ == b.data_;
    }

    /// Aligned plain-text rendering, one bracketed row per line.
    std::string pretty() const;

  private:
    FieldRef field_;
    std::size_t rows_, cols_;
    std::vector<std::uint16_t> data_;
};

Matrix mat_mul(const Matrix& a, const Matrix& b);
Matrix mat_add(const Matrix& a, const Matrix& b);
Matrix mat_transpose(const Matrix& a);

/// Rank by Gaussian elimination with first-nonzero pivoting; deterministic
/// over any field, 0 for empty matrices.
std::size_t mat_rank(const Matrix& a);

/// Solves A x = y for the unique x; requires full column rank. y may hold
/// several right-hand sides, one per column.
Matrix mat_solve(const Matrix& a, const Matrix& y);

} // namespace lnc
