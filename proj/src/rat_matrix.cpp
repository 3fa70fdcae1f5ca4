#include "mirror_torus/rat_matrix.hpp"

#include <algorithm>

namespace mtorus {

RatMatrix RatMatrix::identity(int n) {
    RatMatrix m(n, n);
    for (int i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
}

RatMatrix RatMatrix::from_rows(const std::vector<std::vector<Rat>>& rows) {
    int r = static_cast<int>(rows.size());
    int c = r == 0 ? 0 : static_cast<int>(rows[0].size());
    RatMatrix m(r, c);
    for (int i = 0; i < r; ++i) {
        if (static_cast<int>(rows[i].size()) != c)
            throw std::invalid_argument("RatMatrix::from_rows: ragged rows");
        for (int j = 0; j < c; ++j) m.at(i, j) = rows[i][j];
    }
    return m;
}

bool RatMatrix::is_zero() const {
    return std::all_of(a_.begin(), a_.end(), [](const Rat& x) { return x == 0; });
}

RatMatrix RatMatrix::operator*(const RatMatrix& o) const {
    if (cols_ != o.rows_) throw std::invalid_argument("RatMatrix: product shape mismatch");
    RatMatrix r(rows_, o.cols_);
    for (int i = 0; i < rows_; ++i)
        for (int k = 0; k < cols_; ++k) {
            const Rat& aik = at(i, k);
            if (aik == 0) continue;
            for (int j = 0; j < o.cols_; ++j) r.at(i, j) += aik * o.at(k, j);
        }
    return r;
}

RatMatrix RatMatrix::operator+(const RatMatrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) throw std::invalid_argument("RatMatrix: sum shape mismatch");
    RatMatrix r(rows_, cols_);
    for (size_t i = 0; i < a_.size(); ++i) r.a_[i] = a_[i] + o.a_[i];
    return r;
}

RatMatrix RatMatrix::operator-(const RatMatrix& o) const { return *this + (-o); }

RatMatrix RatMatrix::operator-() const {
    RatMatrix r(rows_, cols_);
    for (size_t i = 0; i < a_.size(); ++i) r.a_[i] = -a_[i];
    return r;
}

RatMatrix RatMatrix::scaled(const Rat& c) const {
    RatMatrix r(rows_, cols_);
    for (size_t i = 0; i < a_.size(); ++i) r.a_[i] = c * a_[i];
    return r;
}

RatMatrix RatMatrix::transposed() const {
    RatMatrix r(cols_, rows_);
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j) r.at(j, i) = at(i, j);
    return r;
}

RatMatrix RatMatrix::hcat(const RatMatrix& o) const {
    if (rows_ != o.rows_) throw std::invalid_argument("RatMatrix::hcat: row mismatch");
    RatMatrix r(rows_, cols_ + o.cols_);
    r.set_block(0, 0, *this);
    r.set_block(0, cols_, o);
    return r;
}

RatMatrix RatMatrix::vcat(const RatMatrix& o) const {
    if (cols_ != o.cols_) throw std::invalid_argument("RatMatrix::vcat: column mismatch");
    RatMatrix r(rows_ + o.rows_, cols_);
    r.set_block(0, 0, *this);
    r.set_block(rows_, 0, o);
    return r;
}

void RatMatrix::set_block(int i0, int j0, const RatMatrix& block) {
    if (i0 + block.rows_ > rows_ || j0 + block.cols_ > cols_)
        throw std::invalid_argument("RatMatrix::set_block: out of range");
    for (int i = 0; i < block.rows_; ++i)
        for (int j = 0; j < block.cols_; ++j) at(i0 + i, j0 + j) = block.at(i, j);
}

RatMatrix RatMatrix::columns(const std::vector<int>& idx) const {
    RatMatrix r(rows_, static_cast<int>(idx.size()));
    for (int j = 0; j < r.cols_; ++j)
        for (int i = 0; i < rows_; ++i) r.at(i, j) = at(i, idx[j]);
    return r;
}

namespace {

// Row echelon form in place; returns pivot columns in order.
std::vector<int> echelonize(RatMatrix& m) {
    std::vector<int> pivots;
    int row = 0;
    for (int col = 0; col < m.cols() && row < m.rows(); ++col) {
        int p = -1;
        for (int i = row; i < m.rows(); ++i)
            if (m.at(i, col) != 0) { p = i; break; }
        if (p < 0) continue;
        if (p != row)
            for (int j = 0; j < m.cols(); ++j) std::swap(m.at(p, j), m.at(row, j));
        Rat inv = Rat(1) / m.at(row, col);
        for (int j = col; j < m.cols(); ++j) m.at(row, j) *= inv;
        for (int i = 0; i < m.rows(); ++i) {
            if (i == row || m.at(i, col) == 0) continue;
            Rat f = m.at(i, col);
            for (int j = col; j < m.cols(); ++j) m.at(i, j) -= f * m.at(row, j);
        }
        pivots.push_back(col);
        ++row;
    }
    return pivots;
}

}  // namespace

int RatMatrix::rank() const {
    RatMatrix m = *this;
    return static_cast<int>(echelonize(m).size());
}

RatMatrix RatMatrix::nullspace() const {
    RatMatrix m = *this;
    std::vector<int> pivots = echelonize(m);
    std::vector<bool> is_pivot(cols_, false);
    for (int p : pivots) is_pivot[p] = true;
    std::vector<int> free_cols;
    for (int j = 0; j < cols_; ++j)
        if (!is_pivot[j]) free_cols.push_back(j);
    RatMatrix basis(cols_, static_cast<int>(free_cols.size()));
    for (int k = 0; k < static_cast<int>(free_cols.size()); ++k) {
        int fc = free_cols[k];
        basis.at(fc, k) = 1;
        for (int pi = 0; pi < static_cast<int>(pivots.size()); ++pi)
            basis.at(pivots[pi], k) = -m.at(pi, fc);
    }
    return basis;
}

bool RatMatrix::solve(const RatMatrix& b, RatMatrix& x) const {
    if (b.rows() != rows_ || b.cols() != 1) throw std::invalid_argument("RatMatrix::solve: bad rhs");
    RatMatrix aug = hcat(b);
    std::vector<int> pivots = echelonize(aug);
    // Inconsistent iff the rhs column became a pivot.
    if (!pivots.empty() && pivots.back() == cols_) return false;
    x = RatMatrix(cols_, 1);
    for (int pi = 0; pi < static_cast<int>(pivots.size()); ++pi)
        x.at(pivots[pi], 0) = aug.at(pi, cols_);
    return true;
}

std::vector<int> RatMatrix::independent_columns_over(const RatMatrix& base) const {
    if (base.rows() != rows_) throw std::invalid_argument("independent_columns_over: row mismatch");
    RatMatrix aug = base.hcat(*this);
    std::vector<int> pivots = echelonize(aug);
    std::vector<int> out;
    for (int p : pivots)
        if (p >= base.cols()) out.push_back(p - base.cols());
    return out;
}

}  // namespace mtorus
