#pragma once

#include "mirror_torus/rat.hpp"

#include <vector>

namespace mtorus {

/// Dense matrix over Q with exact elimination. Rows and columns may be zero;
/// all products/ranks are exact, so exactness tests need no tolerance.
class RatMatrix {
public:
    RatMatrix() = default;
    RatMatrix(int rows, int cols) : rows_(rows), cols_(cols), a_(static_cast<size_t>(rows) * cols) {
        if (rows < 0 || cols < 0) throw std::invalid_argument("RatMatrix: negative dimension");
    }
    RatMatrix(int rows, int cols, std::vector<Rat> entries)
        : rows_(rows), cols_(cols), a_(std::move(entries)) {
        if (a_.size() != static_cast<size_t>(rows) * cols)
            throw std::invalid_argument("RatMatrix: entry count mismatch");
    }

    static RatMatrix identity(int n);
    static RatMatrix from_rows(const std::vector<std::vector<Rat>>& rows);

    int rows() const { return rows_; }
    int cols() const { return cols_; }

    Rat& at(int i, int j) { return a_[static_cast<size_t>(i) * cols_ + j]; }
    const Rat& at(int i, int j) const { return a_[static_cast<size_t>(i) * cols_ + j]; }

    bool is_zero() const;
    bool operator==(const RatMatrix& o) const = default;

    RatMatrix operator*(const RatMatrix& o) const;
    RatMatrix operator+(const RatMatrix& o) const;
    RatMatrix operator-(const RatMatrix& o) const;
    RatMatrix operator-() const;
    RatMatrix scaled(const Rat& c) const;
    RatMatrix transposed() const;

    RatMatrix hcat(const RatMatrix& o) const;
    RatMatrix vcat(const RatMatrix& o) const;
    /// Copies `block` into this matrix with top-left corner at (i0, j0).
    void set_block(int i0, int j0, const RatMatrix& block);
    RatMatrix columns(const std::vector<int>& idx) const;

    int rank() const;
    /// Column basis of the kernel {x : Ax = 0}; rows() = cols(), one column per free variable.
    RatMatrix nullspace() const;
    /// Any particular solution of A x = b (b a column matrix); false if inconsistent.
    bool solve(const RatMatrix& b, RatMatrix& x) const;
    /// Column indices of `cand` whose columns extend colspan(base) to a basis of
    /// colspan([base | cand]); scanned in order (deterministic pivot choice).
    std::vector<int> independent_columns_over(const RatMatrix& base) const;

private:
    int rows_ = 0, cols_ = 0;
    std::vector<Rat> a_;
};

}  // namespace mtorus
