#pragma once

// Dense integer matrices with arbitrary-precision entries, plus the exact
// normal forms everything else is built on: Smith normal form with
// unimodular transforms (and their inverses), column-style Hermite normal
// form, Bareiss determinants, integer kernels and linear solving.

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <initializer_list>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace sl2var {

using Int = boost::multiprecision::cpp_int;

class MatrixError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class IntMatrix {
public:
    IntMatrix() = default;
    IntMatrix(size_t rows, size_t cols) : rows_(rows), cols_(cols), e_(rows * cols) {}

    static IntMatrix identity(size_t k) {
        IntMatrix m(k, k);
        for (size_t i = 0; i < k; ++i) m.at(i, i) = 1;
        return m;
    }
    static IntMatrix from_rows(std::initializer_list<std::initializer_list<int64_t>> rows) {
        IntMatrix m(rows.size(), rows.size() ? rows.begin()->size() : 0);
        size_t i = 0;
        for (const auto& r : rows) {
            if (r.size() != m.cols_) throw MatrixError("ragged row list");
            size_t j = 0;
            for (int64_t v : r) m.at(i, j++) = v;
            ++i;
        }
        return m;
    }

    size_t rows() const { return rows_; }
    size_t cols() const { return cols_; }
    Int& at(size_t i, size_t j) { return e_[i * cols_ + j]; }
    const Int& at(size_t i, size_t j) const { return e_[i * cols_ + j]; }

    bool operator==(const IntMatrix& o) const {
        return rows_ == o.rows_ && cols_ == o.cols_ && e_ == o.e_;
    }
    bool operator!=(const IntMatrix& o) const { return !(*this == o); }

    IntMatrix operator*(const IntMatrix& o) const {
        if (cols_ != o.rows_) throw MatrixError("shape mismatch in product");
        IntMatrix r(rows_, o.cols_);
        for (size_t i = 0; i < rows_; ++i)
            for (size_t k = 0; k < cols_; ++k) {
                const Int& a = at(i, k);
                if (a == 0) continue;
                for (size_t j = 0; j < o.cols_; ++j) r.at(i, j) += a * o.at(k, j);
            }
        return r;
    }
    IntMatrix operator+(const IntMatrix& o) const {
        require_same_shape(o);
        IntMatrix r(rows_, cols_);
        for (size_t i = 0; i < e_.size(); ++i) r.e_[i] = e_[i] + o.e_[i];
        return r;
    }
    IntMatrix operator-(const IntMatrix& o) const {
        require_same_shape(o);
        IntMatrix r(rows_, cols_);
        for (size_t i = 0; i < e_.size(); ++i) r.e_[i] = e_[i] - o.e_[i];
        return r;
    }
    IntMatrix operator-() const {
        IntMatrix r(rows_, cols_);
        for (size_t i = 0; i < e_.size(); ++i) r.e_[i] = -e_[i];
        return r;
    }
    IntMatrix scaled(const Int& c) const {
        IntMatrix r(rows_, cols_);
        for (size_t i = 0; i < e_.size(); ++i) r.e_[i] = c * e_[i];
        return r;
    }
    IntMatrix transposed() const {
        IntMatrix r(cols_, rows_);
        for (size_t i = 0; i < rows_; ++i)
            for (size_t j = 0; j < cols_; ++j) r.at(j, i) = at(i, j);
        return r;
    }
    bool is_zero() const {
        for (const auto& v : e_)
            if (v != 0) return false;
        return true;
    }

    std::vector<Int> column(size_t j) const {
        std::vector<Int> c(rows_);
        for (size_t i = 0; i < rows_; ++i) c[i] = at(i, j);
        return c;
    }
    void set_column(size_t j, const std::vector<Int>& c) {
        for (size_t i = 0; i < rows_; ++i) at(i, j) = c[i];
    }

    /// Columns [j0, j1) as a new matrix.
    IntMatrix column_slice(size_t j0, size_t j1) const {
        IntMatrix r(rows_, j1 - j0);
        for (size_t i = 0; i < rows_; ++i)
            for (size_t j = j0; j < j1; ++j) r.at(i, j - j0) = at(i, j);
        return r;
    }
    /// Rows [i0, i1) as a new matrix.
    IntMatrix row_slice(size_t i0, size_t i1) const {
        IntMatrix r(i1 - i0, cols_);
        for (size_t i = i0; i < i1; ++i)
            for (size_t j = 0; j < cols_; ++j) r.at(i - i0, j) = at(i, j);
        return r;
    }
    /// [*this | other] side by side.
    IntMatrix hcat(const IntMatrix& o) const {
        if (rows_ != o.rows_) throw MatrixError("row mismatch in hcat");
        IntMatrix r(rows_, cols_ + o.cols_);
        for (size_t i = 0; i < rows_; ++i) {
            for (size_t j = 0; j < cols_; ++j) r.at(i, j) = at(i, j);
            for (size_t j = 0; j < o.cols_; ++j) r.at(i, cols_ + j) = o.at(i, j);
        }
        return r;
    }

    std::string str() const {
        std::string s = "[";
        for (size_t i = 0; i < rows_; ++i) {
            s += i ? "; " : "";
            for (size_t j = 0; j < cols_; ++j) {
                if (j) s += " ";
                s += at(i, j).str();
            }
        }
        return s + "]";
    }

private:
    void require_same_shape(const IntMatrix& o) const {
        if (rows_ != o.rows_ || cols_ != o.cols_) throw MatrixError("shape mismatch");
    }

    size_t rows_ = 0, cols_ = 0;
    std::vector<Int> e_;
};

inline Int floor_div(const Int& a, const Int& b) {
    Int q = a / b;  // truncates toward zero
    if (a % b != 0 && ((a < 0) != (b < 0))) --q;
    return q;
}

/// Inverse of a modulo m (gcd(a, m) must be 1); 0 when m = 1.
inline int64_t inverse_mod(int64_t a, int64_t m) {
    if (m == 1) return 0;
    int64_t t = 0, nt = 1, r = m, nr = ((a % m) + m) % m;
    while (nr != 0) {
        int64_t q = r / nr;
        t = std::exchange(nt, t - q * nt);
        r = std::exchange(nr, r - q * nr);
    }
    if (r != 1) throw MatrixError("element is not invertible modulo m");
    return t < 0 ? t + m : t;
}

/// U*M*W = D with U, W unimodular; D diagonal, nonnegative, d_i | d_{i+1}.
/// u_inv and w_inv are maintained alongside so that lattice bases can be
/// transported both ways without a separate inversion.
struct SmithForm {
    IntMatrix u, d, w, u_inv, w_inv;
};

inline SmithForm smith_normal_form(const IntMatrix& m) {
    const size_t rows = m.rows(), cols = m.cols();
    SmithForm f{IntMatrix::identity(rows), m, IntMatrix::identity(cols),
                IntMatrix::identity(rows), IntMatrix::identity(cols)};
    IntMatrix& d = f.d;

    auto swap_rows = [&](size_t a, size_t b) {
        if (a == b) return;
        for (size_t j = 0; j < cols; ++j) std::swap(d.at(a, j), d.at(b, j));
        for (size_t j = 0; j < rows; ++j) std::swap(f.u.at(a, j), f.u.at(b, j));
        for (size_t i = 0; i < rows; ++i) std::swap(f.u_inv.at(i, a), f.u_inv.at(i, b));
    };
    auto swap_cols = [&](size_t a, size_t b) {
        if (a == b) return;
        for (size_t i = 0; i < rows; ++i) std::swap(d.at(i, a), d.at(i, b));
        for (size_t i = 0; i < cols; ++i) std::swap(f.w.at(i, a), f.w.at(i, b));
        for (size_t j = 0; j < cols; ++j) std::swap(f.w_inv.at(a, j), f.w_inv.at(b, j));
    };
    // row[a] -= q * row[b]
    auto row_sub = [&](size_t a, size_t b, const Int& q) {
        if (q == 0) return;
        for (size_t j = 0; j < cols; ++j) d.at(a, j) -= q * d.at(b, j);
        for (size_t j = 0; j < rows; ++j) f.u.at(a, j) -= q * f.u.at(b, j);
        for (size_t i = 0; i < rows; ++i) f.u_inv.at(i, b) += q * f.u_inv.at(i, a);
    };
    // col[a] -= q * col[b]
    auto col_sub = [&](size_t a, size_t b, const Int& q) {
        if (q == 0) return;
        for (size_t i = 0; i < rows; ++i) d.at(i, a) -= q * d.at(i, b);
        for (size_t i = 0; i < cols; ++i) f.w.at(i, a) -= q * f.w.at(i, b);
        for (size_t j = 0; j < cols; ++j) f.w_inv.at(b, j) += q * f.w_inv.at(a, j);
    };
    auto negate_row = [&](size_t a) {
        for (size_t j = 0; j < cols; ++j) d.at(a, j) = -d.at(a, j);
        for (size_t j = 0; j < rows; ++j) f.u.at(a, j) = -f.u.at(a, j);
        for (size_t i = 0; i < rows; ++i) f.u_inv.at(i, a) = -f.u_inv.at(i, a);
    };

    const size_t nmin = std::min(rows, cols);
    for (size_t t = 0; t < nmin; ++t) {
        // locate a pivot of minimal absolute value in the trailing block
        while (true) {
            size_t pi = t, pj = t;
            Int best = 0;
            for (size_t i = t; i < rows; ++i)
                for (size_t j = t; j < cols; ++j) {
                    if (d.at(i, j) == 0) continue;
                    Int a = abs(d.at(i, j));
                    if (best == 0 || a < best) {
                        best = a;
                        pi = i;
                        pj = j;
                    }
                }
            if (best == 0) break;  // trailing block is zero
            swap_rows(t, pi);
            swap_cols(t, pj);

            bool clean = true;
            for (size_t i = t + 1; i < rows; ++i) {
                Int q = floor_div(d.at(i, t), d.at(t, t));
                row_sub(i, t, q);
                if (d.at(i, t) != 0) clean = false;
            }
            for (size_t j = t + 1; j < cols; ++j) {
                Int q = floor_div(d.at(t, j), d.at(t, t));
                col_sub(j, t, q);
                if (d.at(t, j) != 0) clean = false;
            }
            if (!clean) continue;  // residues became new, smaller pivots

            // pivot divides the whole trailing block, or retry
            bool divides = true;
            for (size_t i = t + 1; i < rows && divides; ++i)
                for (size_t j = t + 1; j < cols && divides; ++j)
                    if (d.at(i, j) % d.at(t, t) != 0) {
                        col_sub(t, j, Int(-1));  // mix offending column into pivot column
                        divides = false;
                    }
            if (divides) break;
        }
        if (d.at(t, t) < 0) negate_row(t);
        if (d.at(t, t) == 0) break;
    }
    return f;
}

/// Canonical column-style Hermite normal form of the lattice spanned by the
/// columns of m: pivots positive and strictly descending by row, entries
/// right of a pivot zero, entries left of a pivot in the same row reduced
/// into [0, pivot).  Zero columns are dropped.
inline IntMatrix column_hermite(IntMatrix a) {
    const size_t rows = a.rows(), cols = a.cols();
    auto col_sub = [&](size_t x, size_t y, const Int& q) {  // col[x] -= q*col[y]
        if (q == 0) return;
        for (size_t i = 0; i < rows; ++i) a.at(i, x) -= q * a.at(i, y);
    };
    size_t c = 0;  // next pivot column
    for (size_t r = 0; r < rows && c < cols; ++r) {
        // shrink entries in row r across columns >= c until one survives
        while (true) {
            size_t jmin = cols;
            Int best = 0;
            size_t live = 0;
            for (size_t j = c; j < cols; ++j) {
                if (a.at(r, j) == 0) continue;
                ++live;
                Int v = abs(a.at(r, j));
                if (best == 0 || v < best) {
                    best = v;
                    jmin = j;
                }
            }
            if (live == 0) { jmin = cols; break; }
            if (live == 1) {
                // move pivot into place
                if (jmin != c)
                    for (size_t i = 0; i < rows; ++i) std::swap(a.at(i, jmin), a.at(i, c));
                break;
            }
            for (size_t j = c; j < cols; ++j) {
                if (j == jmin || a.at(r, j) == 0) continue;
                col_sub(j, jmin, floor_div(a.at(r, j), a.at(r, jmin)));
            }
        }
        if (a.at(r, c) == 0) continue;  // no pivot in this row
        if (a.at(r, c) < 0)
            for (size_t i = 0; i < rows; ++i) a.at(i, c) = -a.at(i, c);
        for (size_t j = 0; j < c; ++j) col_sub(j, c, floor_div(a.at(r, j), a.at(r, c)));
        ++c;
    }
    return a.column_slice(0, c);
}

/// Columns form a basis of { x : m x = 0 } over the integers.
inline IntMatrix kernel_basis(const IntMatrix& m) {
    SmithForm f = smith_normal_form(m);
    const size_t nmin = std::min(m.rows(), m.cols());
    size_t rank = 0;
    while (rank < nmin && f.d.at(rank, rank) != 0) ++rank;
    return f.w.column_slice(rank, m.cols());
}

/// A particular integer solution of a x = b, if one exists.
inline std::optional<std::vector<Int>> solve(const IntMatrix& a, const std::vector<Int>& b) {
    if (b.size() != a.rows()) throw MatrixError("rhs size mismatch");
    SmithForm f = smith_normal_form(a);
    std::vector<Int> ub(a.rows());
    for (size_t i = 0; i < a.rows(); ++i) {
        for (size_t j = 0; j < a.rows(); ++j) ub[i] += f.u.at(i, j) * b[j];
    }
    std::vector<Int> y(a.cols());
    const size_t nmin = std::min(a.rows(), a.cols());
    for (size_t i = 0; i < a.rows(); ++i) {
        const Int di = i < nmin ? f.d.at(i, i) : Int(0);
        if (di == 0) {
            if (ub[i] != 0) return std::nullopt;
        } else {
            if (ub[i] % di != 0) return std::nullopt;
            if (i < a.cols()) y[i] = ub[i] / di;
        }
    }
    std::vector<Int> x(a.cols());
    for (size_t i = 0; i < a.cols(); ++i)
        for (size_t j = 0; j < a.cols(); ++j) x[i] += f.w.at(i, j) * y[j];
    return x;
}

/// Bareiss fraction-free determinant.
inline Int determinant(IntMatrix m) {
    if (m.rows() != m.cols()) throw MatrixError("determinant of non-square matrix");
    const size_t n = m.rows();
    if (n == 0) return 1;
    Int sign = 1, prev = 1;
    for (size_t k = 0; k + 1 < n; ++k) {
        if (m.at(k, k) == 0) {
            size_t s = k + 1;
            while (s < n && m.at(s, k) == 0) ++s;
            if (s == n) return 0;
            for (size_t j = 0; j < n; ++j) std::swap(m.at(k, j), m.at(s, j));
            sign = -sign;
        }
        for (size_t i = k + 1; i < n; ++i)
            for (size_t j = k + 1; j < n; ++j)
                m.at(i, j) = (m.at(i, j) * m.at(k, k) - m.at(i, k) * m.at(k, j)) / prev;
        prev = m.at(k, k);
    }
    return sign * m.at(n - 1, n - 1);
}

}  // namespace sl2var
