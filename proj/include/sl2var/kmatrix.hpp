#pragma once

// Small dense matrices over a finite field K, and their realization as
// endomorphisms of the underlying abelian group (Z/p)^(n*dim): each
// K-coordinate expands to the n coefficients of the polynomial basis, and
// each K-entry to the n x n matrix of multiplication by it.

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "sl2var/abelian.hpp"
#include "sl2var/fields.hpp"

namespace sl2var {

class KMatrix {
public:
    KMatrix() = default;
    KMatrix(const Field& f, size_t rows, size_t cols)
        : field_(f), rows_(rows), cols_(cols), e_(rows * cols, f.zero()) {}

    static KMatrix identity(const Field& f, size_t k) {
        KMatrix m(f, k, k);
        for (size_t i = 0; i < k; ++i) m.at(i, i) = f.one();
        return m;
    }

    const Field& field() const { return field_; }
    size_t rows() const { return rows_; }
    size_t cols() const { return cols_; }
    FieldElement& at(size_t i, size_t j) { return e_[i * cols_ + j]; }
    const FieldElement& at(size_t i, size_t j) const { return e_[i * cols_ + j]; }

    bool operator==(const KMatrix& o) const {
        return rows_ == o.rows_ && cols_ == o.cols_ && e_ == o.e_;
    }
    bool operator!=(const KMatrix& o) const { return !(*this == o); }

    KMatrix operator*(const KMatrix& o) const {
        if (cols_ != o.rows_) throw FieldError("K-matrix shape mismatch");
        KMatrix r(field_, rows_, o.cols_);
        for (size_t i = 0; i < rows_; ++i)
            for (size_t k = 0; k < cols_; ++k) {
                if (at(i, k).is_zero()) continue;
                for (size_t j = 0; j < o.cols_; ++j)
                    r.at(i, j) = field_.add(r.at(i, j), field_.mul(at(i, k), o.at(k, j)));
            }
        return r;
    }
    KMatrix operator+(const KMatrix& o) const {
        KMatrix r(field_, rows_, cols_);
        for (size_t i = 0; i < e_.size(); ++i) r.e_[i] = field_.add(e_[i], o.e_[i]);
        return r;
    }
    KMatrix operator-(const KMatrix& o) const {
        KMatrix r(field_, rows_, cols_);
        for (size_t i = 0; i < e_.size(); ++i) r.e_[i] = field_.sub(e_[i], o.e_[i]);
        return r;
    }

    /// Entry-wise Frobenius lambda -> lambda^(p^e).
    KMatrix frobenius(int e = 1) const {
        KMatrix r = *this;
        for (auto& v : r.e_) v = field_.frobenius(v, e);
        return r;
    }

    /// Kronecker product.
    KMatrix tensor(const KMatrix& o) const {
        KMatrix r(field_, rows_ * o.rows_, cols_ * o.cols_);
        for (size_t i = 0; i < rows_; ++i)
            for (size_t j = 0; j < cols_; ++j)
                for (size_t k = 0; k < o.rows_; ++k)
                    for (size_t l = 0; l < o.cols_; ++l)
                        r.at(i * o.rows_ + k, j * o.cols_ + l) = field_.mul(at(i, j), o.at(k, l));
        return r;
    }

    FieldElement det2() const {
        if (rows_ != 2 || cols_ != 2) throw FieldError("det2 requires a 2x2 matrix");
        return field_.sub(field_.mul(at(0, 0), at(1, 1)), field_.mul(at(0, 1), at(1, 0)));
    }

private:
    Field field_;
    size_t rows_ = 0, cols_ = 0;
    std::vector<FieldElement> e_;
};

/// The abelian group (Z/p)^(n*dim) underlying K^dim.
inline FinAbGroup k_space_group(const Field& f, size_t dim) {
    return FinAbGroup(std::vector<int64_t>(static_cast<size_t>(f.degree()) * dim,
                                           f.characteristic()));
}

/// Endomorphism of the underlying abelian group realizing a K-linear map.
inline Homomorphism to_homomorphism(const KMatrix& m) {
    const Field& f = m.field();
    const size_t n = static_cast<size_t>(f.degree());
    FinAbGroup src = k_space_group(f, m.cols());
    FinAbGroup dst = k_space_group(f, m.rows());
    IntMatrix big(dst.rank(), src.rank());
    for (size_t bi = 0; bi < m.rows(); ++bi)
        for (size_t bj = 0; bj < m.cols(); ++bj) {
            const FieldElement& entry = m.at(bi, bj);
            if (entry.is_zero()) continue;
            // n x n block: multiplication by entry in the polynomial basis
            for (size_t c = 0; c < n; ++c) {
                FieldElement img = f.mul(entry, f.basis(static_cast<int>(c)));
                for (size_t r = 0; r < n; ++r) big.at(bi * n + r, bj * n + c) = img.coeffs()[r];
            }
        }
    return Homomorphism(src, dst, std::move(big), false);
}

/// 2x2 matrix over K with determinant 1.
class Sl2Matrix {
public:
    Sl2Matrix(const Field& f, const FieldElement& a, const FieldElement& b, const FieldElement& c,
              const FieldElement& d)
        : m_(f, 2, 2) {
        m_.at(0, 0) = a;
        m_.at(0, 1) = b;
        m_.at(1, 0) = c;
        m_.at(1, 1) = d;
        if (m_.det2() != f.one()) throw FieldError("determinant is not 1");
    }
    explicit Sl2Matrix(KMatrix m) : m_(std::move(m)) {
        if (m_.det2() != m_.field().one()) throw FieldError("determinant is not 1");
    }

    /// u_lambda = (1 lambda; 0 1)
    static Sl2Matrix unipotent(const Field& f, const FieldElement& lambda) {
        return Sl2Matrix(f, f.one(), lambda, f.zero(), f.one());
    }
    /// t_lambda = (lambda 0; 0 lambda^{-1})
    static Sl2Matrix torus(const Field& f, const FieldElement& lambda) {
        return Sl2Matrix(f, lambda, f.zero(), f.zero(), f.inv(lambda));
    }
    /// w = (0 1; -1 0)
    static Sl2Matrix weyl(const Field& f) {
        return Sl2Matrix(f, f.zero(), f.one(), f.neg(f.one()), f.zero());
    }

    const KMatrix& matrix() const { return m_; }
    Sl2Matrix operator*(const Sl2Matrix& o) const { return Sl2Matrix(m_ * o.m_); }
    bool operator==(const Sl2Matrix& o) const { return m_ == o.m_; }

private:
    KMatrix m_;
};

// standard sl2 generators as K-matrices
inline KMatrix lie_x_matrix(const Field& f, const FieldElement& lambda) {
    KMatrix m(f, 2, 2);
    m.at(0, 1) = lambda;
    return m;
}
inline KMatrix lie_y_matrix(const Field& f, const FieldElement& lambda) {
    KMatrix m(f, 2, 2);
    m.at(1, 0) = lambda;
    return m;
}
inline KMatrix lie_h_matrix(const Field& f, const FieldElement& lambda) {
    KMatrix m(f, 2, 2);
    m.at(0, 0) = lambda;
    m.at(1, 1) = f.neg(lambda);
    return m;
}

}  // namespace sl2var
