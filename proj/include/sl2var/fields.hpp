#pragma once

// Exact arithmetic in small finite fields F_{p^n}, represented in a fixed
// polynomial basis 1, t, ..., t^{n-1}.  The modulus is always the
// lexicographically smallest monic irreducible polynomial of degree n over
// F_p, so fields (and everything computed from them) are reproducible
// bit for bit.

#include <algorithm>
#include <cstdint>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "sl2var/config.hpp"

namespace sl2var {

class FieldError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class Field;

/// Element of F_{p^n}: n residues in [0, p), low-degree coefficient first.
class FieldElement {
public:
    FieldElement() = default;
    FieldElement(std::shared_ptr<const struct FieldData> data, std::vector<int64_t> coeffs)
        : data_(std::move(data)), coeffs_(std::move(coeffs)) {}

    const std::vector<int64_t>& coeffs() const { return coeffs_; }
    bool operator==(const FieldElement& o) const { return coeffs_ == o.coeffs_; }
    bool operator!=(const FieldElement& o) const { return !(*this == o); }

    Field field() const;  // field the element belongs to
    bool is_zero() const {
        return std::all_of(coeffs_.begin(), coeffs_.end(), [](int64_t c) { return c == 0; });
    }

private:
    friend class Field;
    std::shared_ptr<const struct FieldData> data_;
    std::vector<int64_t> coeffs_;
};

struct FieldData {
    int64_t p = 0;                  // prime characteristic
    int n = 0;                      // extension degree
    std::vector<int64_t> modulus;   // monic, degree n, coefficients low-to-high (n+1 entries)
};

namespace poly {

// Dense polynomials over F_p, coefficients low-to-high, no trailing zeros.

inline void trim(std::vector<int64_t>& f) {
    while (!f.empty() && f.back() == 0) f.pop_back();
}

inline std::vector<int64_t> mul(const std::vector<int64_t>& f, const std::vector<int64_t>& g,
                                int64_t p) {
    if (f.empty() || g.empty()) return {};
    std::vector<int64_t> h(f.size() + g.size() - 1, 0);
    for (size_t i = 0; i < f.size(); ++i)
        for (size_t j = 0; j < g.size(); ++j) h[i + j] = (h[i + j] + f[i] * g[j]) % p;
    trim(h);
    return h;
}

inline int64_t inv_mod(int64_t a, int64_t p) {
    // p prime, a != 0 mod p
    int64_t r = 1, b = a % p, e = p - 2;
    while (e > 0) {
        if (e & 1) r = r * b % p;
        b = b * b % p;
        e >>= 1;
    }
    return r;
}

/// Remainder of f modulo the monic polynomial m.
inline std::vector<int64_t> rem(std::vector<int64_t> f, const std::vector<int64_t>& m, int64_t p) {
    trim(f);
    const size_t dm = m.size() - 1;
    while (f.size() > dm) {
        int64_t lead = f.back();
        size_t shift = f.size() - 1 - dm;
        for (size_t i = 0; i <= dm; ++i) {
            f[shift + i] = ((f[shift + i] - lead * m[i]) % p + p) % p;
        }
        trim(f);
        if (f.empty()) break;
    }
    return f;
}

/// True iff f (monic, degree >= 1) has no monic divisor of degree 1..deg/2.
inline bool is_irreducible(const std::vector<int64_t>& f, int64_t p) {
    const size_t deg = f.size() - 1;
    if (deg == 1) return true;
    std::vector<int64_t> div;
    for (size_t d = 1; 2 * d <= deg; ++d) {
        div.assign(d + 1, 0);
        div[d] = 1;
        // iterate over all monic candidates of degree d
        while (true) {
            if (rem(f, div, p).empty()) return false;
            size_t i = 0;
            while (i < d && div[i] == p - 1) div[i++] = 0;
            if (i == d) break;
            ++div[i];
        }
    }
    return true;
}

}  // namespace poly

/// F_{p^n} with its canonical modulus.  Cheap to copy (shared immutable data).
class Field {
public:
    Field() = default;

    /// field_make: canonical field of size p^n.
    static Field make(int64_t p, int n) {
        validate_shape(p, n);
        return Field(std::make_shared<FieldData>(FieldData{p, n, canonical_modulus(p, n)}));
    }

    /// Deserialization path: the modulus must be the canonical one.
    static Field make(int64_t p, int n, const std::vector<int64_t>& modulus) {
        validate_shape(p, n);
        auto canon = canonical_modulus(p, n);
        std::vector<int64_t> reduced(modulus);
        for (auto& c : reduced) c = ((c % p) + p) % p;
        if (reduced != canon)
            throw FieldError("modulus is not the canonical (lexicographically smallest) choice");
        return Field(std::make_shared<FieldData>(FieldData{p, n, std::move(canon)}));
    }

    bool valid() const { return data_ != nullptr; }
    int64_t characteristic() const { return data_->p; }
    int degree() const { return data_->n; }
    int64_t size() const {
        int64_t s = 1;
        for (int i = 0; i < data_->n; ++i) s *= data_->p;
        return s;
    }
    const std::vector<int64_t>& modulus() const { return data_->modulus; }

    bool operator==(const Field& o) const {
        return data_->p == o.data_->p && data_->n == o.data_->n;
    }
    bool operator!=(const Field& o) const { return !(*this == o); }

    // ----- element construction -----

    FieldElement element(std::vector<int64_t> coeffs) const {
        if (coeffs.size() != static_cast<size_t>(data_->n))
            throw FieldError("coefficient count does not match extension degree");
        for (auto& c : coeffs) c = ((c % data_->p) + data_->p) % data_->p;
        return FieldElement(data_, std::move(coeffs));
    }
    FieldElement zero() const { return FieldElement(data_, std::vector<int64_t>(data_->n, 0)); }
    FieldElement one() const { return from_integer(1); }
    FieldElement from_integer(int64_t k) const {
        std::vector<int64_t> c(data_->n, 0);
        c[0] = ((k % data_->p) + data_->p) % data_->p;
        return FieldElement(data_, std::move(c));
    }
    /// t^i for i < n.
    FieldElement basis(int i) const {
        std::vector<int64_t> c(data_->n, 0);
        c.at(static_cast<size_t>(i)) = 1;
        return FieldElement(data_, std::move(c));
    }

    // ----- fixed enumeration: index = sum coeffs[i] * p^i -----

    FieldElement element_at(int64_t index) const {
        std::vector<int64_t> c(data_->n);
        for (int i = 0; i < data_->n; ++i) {
            c[i] = index % data_->p;
            index /= data_->p;
        }
        return FieldElement(data_, std::move(c));
    }
    int64_t index_of(const FieldElement& a) const {
        int64_t idx = 0, pw = 1;
        for (int i = 0; i < data_->n; ++i) {
            idx += a.coeffs()[i] * pw;
            pw *= data_->p;
        }
        return idx;
    }
    std::vector<FieldElement> elements() const {
        std::vector<FieldElement> out;
        out.reserve(static_cast<size_t>(size()));
        for (int64_t i = 0; i < size(); ++i) out.push_back(element_at(i));
        return out;
    }

    // ----- arithmetic -----

    FieldElement add(const FieldElement& a, const FieldElement& b) const {
        std::vector<int64_t> c(data_->n);
        for (int i = 0; i < data_->n; ++i) c[i] = (a.coeffs()[i] + b.coeffs()[i]) % data_->p;
        return FieldElement(data_, std::move(c));
    }
    FieldElement sub(const FieldElement& a, const FieldElement& b) const {
        std::vector<int64_t> c(data_->n);
        for (int i = 0; i < data_->n; ++i)
            c[i] = ((a.coeffs()[i] - b.coeffs()[i]) % data_->p + data_->p) % data_->p;
        return FieldElement(data_, std::move(c));
    }
    FieldElement neg(const FieldElement& a) const { return sub(zero(), a); }
    FieldElement mul(const FieldElement& a, const FieldElement& b) const {
        auto prod = poly::mul(a.coeffs(), b.coeffs(), data_->p);
        auto red = poly::rem(std::move(prod), data_->modulus, data_->p);
        red.resize(static_cast<size_t>(data_->n), 0);
        return FieldElement(data_, std::move(red));
    }
    FieldElement pow(const FieldElement& a, int64_t e) const {
        if (e < 0) return pow(inv(a), -e);
        FieldElement r = one(), b = a;
        while (e > 0) {
            if (e & 1) r = mul(r, b);
            b = mul(b, b);
            e >>= 1;
        }
        return r;
    }
    FieldElement inv(const FieldElement& a) const {
        if (a.is_zero()) throw FieldError("zero has no multiplicative inverse");
        return pow(a, size() - 2);
    }
    /// Frobenius twist lambda -> lambda^(p^e).
    FieldElement frobenius(const FieldElement& a, int e = 1) const {
        FieldElement r = a;
        for (int i = 0; i < e; ++i) r = pow(r, data_->p);
        return r;
    }

    // ----- predicates used by the length bounds -----

    std::optional<FieldElement> square_root(const FieldElement& a) const {
        for (int64_t i = 0; i < size(); ++i) {
            FieldElement s = element_at(i);
            if (mul(s, s) == a) return s;
        }
        return std::nullopt;
    }
    bool is_square(const FieldElement& a) const { return square_root(a).has_value(); }

    /// Smallest (m, s) with a = m * s^2 and m a positive integer, if any.
    std::optional<std::pair<int64_t, FieldElement>> int_multiple_of_square(
        const FieldElement& a) const {
        if (a.is_zero()) return std::make_pair(int64_t{0}, zero());
        for (int64_t m = 1; m < data_->p; ++m) {
            for (int64_t i = 0; i < size(); ++i) {
                FieldElement s = element_at(i);
                FieldElement ms2 = mul(from_integer(m), mul(s, s));
                if (ms2 == a) return std::make_pair(m, s);
            }
        }
        return std::nullopt;
    }

    std::string str(const FieldElement& a) const {
        if (data_->n == 1) return std::to_string(a.coeffs()[0]);
        std::string s = "[";
        for (int i = 0; i < data_->n; ++i) {
            if (i) s += ",";
            s += std::to_string(a.coeffs()[i]);
        }
        return s + "]";
    }

    static bool is_prime(int64_t p) {
        if (p < 2) return false;
        for (int64_t d = 2; d * d <= p; ++d)
            if (p % d == 0) return false;
        return true;
    }

private:
    explicit Field(std::shared_ptr<const FieldData> data) : data_(std::move(data)) {}

    static void validate_shape(int64_t p, int n) {
        if (!is_prime(p)) throw FieldError("characteristic " + std::to_string(p) + " is not prime");
        if (n < 1) throw FieldError("extension degree must be >= 1");
        int64_t sz = 1;
        for (int i = 0; i < n; ++i) {
            sz *= p;
            if (sz > limits().max_field_size)
                throw FieldError("field size exceeds configured bound of " +
                                 std::to_string(limits().max_field_size));
        }
    }

    /// Lexicographically smallest monic irreducible of degree n over F_p,
    /// comparing coefficient tuples (c_0, ..., c_{n-1}) left to right.
    static std::vector<int64_t> canonical_modulus(int64_t p, int n) {
        std::vector<int64_t> low(static_cast<size_t>(n), 0);
        while (true) {
            std::vector<int64_t> f(low);
            f.push_back(1);  // monic
            // c_0 = 0 makes f divisible by t, except in degree 1 where f = t
            // itself is the canonical choice
            if ((n == 1 || f[0] != 0) && poly::is_irreducible(f, p)) return f;
            int i = n - 1;
            while (i >= 0 && low[static_cast<size_t>(i)] == p - 1) low[static_cast<size_t>(i--)] = 0;
            if (i < 0) throw FieldError("no irreducible polynomial found");  // unreachable
            ++low[static_cast<size_t>(i)];
        }
    }

    friend class FieldElement;
    std::shared_ptr<const FieldData> data_;
};

inline Field FieldElement::field() const { return Field(data_); }

}  // namespace sl2var
