#pragma once

// Small dense complex matrix/vector types used by the kernels. Storage and
// copies are bookkeeping and never counted; only arithmetic recorded by the
// kernels enters the ledger.

#include <complex>
#include <cstddef>
#include <stdexcept>
#include <vector>

namespace osic {

using cx = std::complex<double>;
using CVec = std::vector<cx>;

class CMatrix {
   public:
    CMatrix() = default;
    CMatrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), a_(rows * cols, cx{0.0, 0.0}) {}

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    cx& operator()(std::size_t r, std::size_t c) { return a_[r * cols_ + c]; }
    const cx& operator()(std::size_t r, std::size_t c) const { return a_[r * cols_ + c]; }

   private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<cx> a_;
};

// Hermitian matrix with the symmetry held by construction: writes through
// set() mirror the conjugate entry, and diagonal writes keep a zero imaginary
// part. Reads may touch either triangle.
class HermitianMatrix {
   public:
    HermitianMatrix() = default;
    explicit HermitianMatrix(std::size_t n) : n_(n), a_(n * n, cx{0.0, 0.0}) {}

    std::size_t dim() const { return n_; }

    cx at(std::size_t i, std::size_t j) const { return a_[i * n_ + j]; }

    void set(std::size_t i, std::size_t j, cx v) {
        if (i == j) v = cx{v.real(), 0.0};
        a_[i * n_ + j] = v;
        a_[j * n_ + i] = std::conj(v);
    }

    HermitianMatrix leading_minor(std::size_t k) const {
        HermitianMatrix out(k);
        for (std::size_t i = 0; i < k; ++i)
            for (std::size_t j = i; j < k; ++j) out.set(i, j, at(i, j));
        return out;
    }

    // Moves row/column p to the back of the active n-range, shifting the rest
    // up (same cyclic permutation the deflation applies to the factor rows).
    HermitianMatrix cyclic_to_back(std::size_t p, std::size_t n) const {
        if (p >= n || n > n_) throw std::invalid_argument("cyclic_to_back: bad index");
        std::vector<std::size_t> map(n_);
        for (std::size_t i = 0; i < n_; ++i) map[i] = i;
        for (std::size_t i = p; i + 1 < n; ++i) map[i] = i + 1;
        map[n - 1] = p;
        HermitianMatrix out(n_);
        for (std::size_t i = 0; i < n_; ++i)
            for (std::size_t j = i; j < n_; ++j) out.set(i, j, at(map[i], map[j]));
        return out;
    }

   private:
    std::size_t n_ = 0;
    std::vector<cx> a_;
};

// Upper-triangular factor; the strict lower triangle is identically zero by
// construction (writes below the diagonal are rejected).
class TriFactor {
   public:
    TriFactor() = default;
    explicit TriFactor(std::size_t n) : n_(n), a_(n * n, cx{0.0, 0.0}) {}

    std::size_t dim() const { return n_; }

    cx operator()(std::size_t i, std::size_t j) const { return a_[i * n_ + j]; }

    void set(std::size_t i, std::size_t j, cx v) {
        if (i > j) throw std::invalid_argument("TriFactor::set below diagonal");
        a_[i * n_ + j] = v;
    }

   private:
    std::size_t n_ = 0;
    std::vector<cx> a_;
};

}  // namespace osic
