#include "lnc/matrix.hpp"

#include <algorithm>
#include <sstream>

namespace lnc {

Matrix::Matrix(FieldRef field, std::size_t rows, std::size_t cols, std::vector<std::uint16_t> data)
    : field_(std::move(field)), rows_(rows), cols_(cols), data_(std::move(data)) {
    if (data_.size() != rows_ * cols_)
        fail(ErrorCode::DimensionMismatch, "entry count does not match rows*cols");
    for (auto v : data_)
        if (v >= field_->order()) fail(ErrorCode::InvalidArgument, "entry out of field range");
}

Matrix Matrix::identity(FieldRef field, std::size_t n) {
    Matrix m(std::move(field), n, n);
    for (std::size_t i = 0; i < n; ++i) m.set(i, i, 1);
    return m;
}

Matrix Matrix::random(FieldRef field, std::size_t rows, std::size_t cols, SplitMix64& rng) {
    Matrix m(field, rows, cols);
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j) m.set(i, j, field->uniform(rng));
    return m;
}

void Matrix::set(std::size_t r, std::size_t c, std::uint16_t v) {
    if (v >= field_->order()) fail(ErrorCode::InvalidArgument, "entry out of field range");
    data_[r * cols_ + c] = v;
}

bool Matrix::is_zero() const {
    return std::all_of(data_.begin(), data_.end(), [](std::uint16_t v) { return v == 0; });
}

std::string Matrix::pretty() const {
    std::size_t width = 1;
    for (auto v : data_) width = std::max(width, std::to_string(v).size());
    std::ostringstream out;
    for (std::size_t r = 0; r < rows_; ++r) {
        out << "[ ";
        for (std::size_t c = 0; c < cols_; ++c) {
            std::string s = std::to_string(at(r, c));
            out << std::string(width - s.size(), ' ') << s << (c + 1 < cols_ ? " " : "");
        }
        out << " ]\n";
    }
    return out.str();
}

namespace {
void check_same_field(const Matrix& a, const Matrix& b) {
    if (!a.field()->same(*b.field())) fail(ErrorCode::FieldMismatch, "matrices over different fields");
}
} // namespace

Matrix mat_mul(const Matrix& a, const Matrix& b) {
    check_same_field(a, b);
    if (a.cols() != b.rows())
        fail(ErrorCode::DimensionMismatch,
             std::to_string(a.rows()) + "x" + std::to_string(a.cols()) + " * " +
                 std::to_string(b.rows()) + "x" + std::to_string(b.cols()));
    const Field& f = *a.field();
    Matrix out(a.field(), a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t k = 0; k < a.cols(); ++k) {
            std::uint16_t aik = a.at(i, k);
            if (aik == 0) continue;
            for (std::size_t j = 0; j < b.cols(); ++j) {
                std::uint16_t term = f.mul(aik, b.at(k, j));
                if (term) out.set(i, j, f.add(out.at(i, j), term));
            }
        }
    return out;
}

Matrix mat_add(const Matrix& a, const Matrix& b) {
    check_same_field(a, b);
    if (a.rows() != b.rows() || a.cols() != b.cols())
        fail(ErrorCode::DimensionMismatch, "matrix addition shape mismatch");
    const Field& f = *a.field();
    Matrix out(a.field(), a.rows(), a.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) out.set(i, j, f.add(a.at(i, j), b.at(i, j)));
    return out;
}

Matrix mat_transpose(const Matrix& a) {
    Matrix out(a.field(), a.cols(), a.rows());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) out.set(j, i, a.at(i, j));
    return out;
}

std::size_t mat_rank(const Matrix& a) {
    const Field& f = *a.field();
    std::vector<std::uint16_t> w = a.data();
    std::size_t rows = a.rows(), cols = a.cols();
    auto at = [&](std::size_t r, std::size_t c) -> std::uint16_t& { return w[r * cols + c]; };

    std::size_t rank = 0;
    for (std::size_t col = 0; col < cols && rank < rows; ++col) {
        std::size_t pivot = rank;
        while (pivot < rows && at(pivot, col) == 0) ++pivot;
        if (pivot == rows) continue;
        for (std::size_t c = 0; c < cols; ++c) std::swap(at(rank, c), at(pivot, c));
        std::uint16_t pinv = f.inv(at(rank, col));
        for (std::size_t r = rank + 1; r < rows; ++r) {
            std::uint16_t factor = f.mul(at(r, col), pinv);
            if (factor == 0) continue;
            for (std::size_t c = col; c < cols; ++c)
                at(r, c) = f.sub(at(r, c), f.mul(factor, at(rank, c)));
        }
        ++rank;
    }
    return rank;
}

Matrix mat_solve(const Matrix& a, const Matrix& y) {
    check_same_field(a, y);
    if (a.rows() != y.rows())
        fail(ErrorCode::DimensionMismatch, "right-hand side row count mismatch");
    const Field& f = *a.field();
    std::size_t rows = a.rows(), cols = a.cols(), ycols = y.cols();
    std::size_t width = cols + ycols;
    std::vector<std::uint16_t> w(rows * width, 0);
    auto at = [&](std::size_t r, std::size_t c) -> std::uint16_t& { return w[r * width + c]; };
    for (std::size_t r = 0; r < rows; ++r) {
        for (std::size_t c = 0; c < cols; ++c) at(r, c) = a.at(r, c);
        for (std::size_t c = 0; c < ycols; ++c) at(r, cols + c) = y.at(r, c);
    }

    // Gauss-Jordan; every column must yield a pivot.
    std::size_t rank = 0;
    for (std::size_t col = 0; col < cols; ++col) {
        std::size_t pivot = rank;
        while (pivot < rows && at(pivot, col) == 0) ++pivot;
        if (pivot == rows) fail(ErrorCode::RankDeficient, "matrix does not have full column rank");
        for (std::size_t c = 0; c < width; ++c) std::swap(at(rank, c), at(pivot, c));
        std::uint16_t pinv = f.inv(at(rank, col));
        for (std::size_t c = 0; c < width; ++c) at(rank, c) = f.mul(at(rank, c), pinv);
        for (std::size_t r = 0; r < rows; ++r) {
            if (r == rank || at(r, col) == 0) continue;
            std::uint16_t factor = at(r, col);
            for (std::size_t c = 0; c < width; ++c)
                at(r, c) = f.sub(at(r, c), f.mul(factor, at(rank, c)));
        }
        ++rank;
    }
    for (std::size_t r = rank; r < rows; ++r)
        for (std::size_t c = 0; c < ycols; ++c)
            if (at(r, cols + c) != 0) fail(ErrorCode::InconsistentSystem, "no solution exists");

    Matrix x(a.field(), cols, ycols);
    for (std::size_t r = 0; r < cols; ++r)
        for (std::size_t c = 0; c < ycols; ++c) x.set(r, c, at(r, cols + c));
    return x;
}

} // namespace lnc
