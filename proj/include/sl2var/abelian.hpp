#pragma once

// Finite abelian groups in invariant-factor form, their elements,
// homomorphisms, subgroups, and quotients.  Subgroups are represented by the
// canonical Hermite basis of their preimage lattice in Z^k (which always
// contains the relation lattice diag(d_1,...,d_k)), so membership, sums,
// intersections and kernels are exact integer linear algebra, never
// enumeration.

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "sl2var/config.hpp"
#include "sl2var/int_matrix.hpp"

namespace sl2var {

class GroupError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Finite abelian group Z/d_1 x ... x Z/d_k with d_1 | d_2 | ... | d_k,
/// every d_i >= 2.  The empty list is the trivial group.
class FinAbGroup {
public:
    FinAbGroup() = default;
    explicit FinAbGroup(std::vector<int64_t> orders) : orders_(std::move(orders)) {
        for (size_t i = 0; i < orders_.size(); ++i) {
            if (orders_[i] < 2) throw GroupError("cyclic factor order must be >= 2");
            if (i > 0 && orders_[i] % orders_[i - 1] != 0)
                throw GroupError("orders do not form a divisibility chain");
        }
    }

    const std::vector<int64_t>& orders() const { return orders_; }
    size_t rank() const { return orders_.size(); }
    Int order() const {
        Int o = 1;
        for (int64_t d : orders_) o *= d;
        return o;
    }
    int64_t exponent() const { return orders_.empty() ? 1 : orders_.back(); }

    bool operator==(const FinAbGroup& o) const { return orders_ == o.orders_; }
    bool operator!=(const FinAbGroup& o) const { return !(*this == o); }

private:
    std::vector<int64_t> orders_;
};

class GroupElement {
public:
    GroupElement() = default;
    GroupElement(FinAbGroup group, std::vector<int64_t> coords)
        : group_(std::move(group)), coords_(std::move(coords)) {
        if (coords_.size() != group_.rank()) throw GroupError("coordinate count mismatch");
        reduce();
    }
    static GroupElement zero(const FinAbGroup& g) {
        return GroupElement(g, std::vector<int64_t>(g.rank(), 0));
    }
    static GroupElement unit(const FinAbGroup& g, size_t i) {
        std::vector<int64_t> c(g.rank(), 0);
        c.at(i) = 1;
        return GroupElement(g, std::move(c));
    }

    const FinAbGroup& group() const { return group_; }
    const std::vector<int64_t>& coords() const { return coords_; }
    bool is_zero() const {
        return std::all_of(coords_.begin(), coords_.end(), [](int64_t c) { return c == 0; });
    }

    GroupElement operator+(const GroupElement& o) const {
        require_same(o);
        std::vector<int64_t> c(coords_);
        for (size_t i = 0; i < c.size(); ++i) c[i] += o.coords_[i];
        return GroupElement(group_, std::move(c));
    }
    GroupElement operator-(const GroupElement& o) const {
        require_same(o);
        std::vector<int64_t> c(coords_);
        for (size_t i = 0; i < c.size(); ++i) c[i] -= o.coords_[i];
        return GroupElement(group_, std::move(c));
    }
    GroupElement operator-() const { return zero(group_) - *this; }
    GroupElement scaled(int64_t m) const {
        std::vector<int64_t> c(group_.rank());
        for (size_t i = 0; i < c.size(); ++i) {
            int64_t d = group_.orders()[i];
            c[i] = static_cast<int64_t>((((m % d) * (coords_[i] % d)) % d + d) % d);
        }
        return GroupElement(group_, std::move(c));
    }

    bool operator==(const GroupElement& o) const {
        return group_ == o.group_ && coords_ == o.coords_;
    }
    bool operator!=(const GroupElement& o) const { return !(*this == o); }
    bool operator<(const GroupElement& o) const { return coords_ < o.coords_; }

    std::string str() const {
        std::string s = "(";
        for (size_t i = 0; i < coords_.size(); ++i) {
            if (i) s += ",";
            s += std::to_string(coords_[i]);
        }
        return s + ")";
    }

private:
    void require_same(const GroupElement& o) const {
        if (group_ != o.group_) throw GroupError("elements of different groups");
    }
    void reduce() {
        for (size_t i = 0; i < coords_.size(); ++i) {
            int64_t d = group_.orders()[i];
            coords_[i] = ((coords_[i] % d) + d) % d;
        }
    }

    FinAbGroup group_;
    std::vector<int64_t> coords_;
};

/// Invariant-factor form of an arbitrary list of cyclic orders, with the
/// explicit coordinate change in both directions.
struct CanonicalForm {
    FinAbGroup group;
    IntMatrix to_canon;    // group.rank() x raw.size()
    IntMatrix from_canon;  // raw.size() x group.rank()
};

inline CanonicalForm canonical_form(const std::vector<int64_t>& raw) {
    const size_t k = raw.size();
    IntMatrix diag(k, k);
    for (size_t i = 0; i < k; ++i) diag.at(i, i) = raw[i];
    SmithForm f = smith_normal_form(diag);
    std::vector<int64_t> orders;
    std::vector<size_t> kept;
    for (size_t i = 0; i < k; ++i) {
        if (f.d.at(i, i) > 1) {
            kept.push_back(i);
            orders.push_back(static_cast<int64_t>(f.d.at(i, i)));
        }
    }
    CanonicalForm cf{FinAbGroup(orders), IntMatrix(kept.size(), k), IntMatrix(k, kept.size())};
    for (size_t a = 0; a < kept.size(); ++a)
        for (size_t j = 0; j < k; ++j) {
            cf.to_canon.at(a, j) = f.u.at(kept[a], j);
            cf.from_canon.at(j, a) = f.u_inv.at(j, kept[a]);
        }
    return cf;
}

/// Homomorphism between finite abelian groups.  Column j of the matrix is
/// the image of the j-th generator of src in dst coordinates, reduced mod
/// the dst orders row-wise.
class Homomorphism {
public:
    Homomorphism() = default;
    Homomorphism(FinAbGroup src, FinAbGroup dst, IntMatrix m, bool validate = true)
        : src_(std::move(src)), dst_(std::move(dst)), m_(std::move(m)) {
        if (m_.rows() != dst_.rank() || m_.cols() != src_.rank())
            throw GroupError("homomorphism matrix shape mismatch");
        reduce();
        if (validate) {
            for (size_t j = 0; j < src_.rank(); ++j) {
                const Int dj = src_.orders()[j];
                for (size_t i = 0; i < dst_.rank(); ++i) {
                    if (dj * m_.at(i, j) % dst_.orders()[i] != 0)
                        throw GroupError("not a homomorphism: column " + std::to_string(j) +
                                         " violates well-definedness");
                }
            }
        }
    }

    static Homomorphism identity(const FinAbGroup& g) {
        return Homomorphism(g, g, IntMatrix::identity(g.rank()), false);
    }
    static Homomorphism zero(const FinAbGroup& src, const FinAbGroup& dst) {
        return Homomorphism(src, dst, IntMatrix(dst.rank(), src.rank()), false);
    }

    const FinAbGroup& src() const { return src_; }
    const FinAbGroup& dst() const { return dst_; }
    const IntMatrix& matrix() const { return m_; }
    bool is_endo() const { return src_ == dst_; }

    GroupElement apply(const GroupElement& v) const {
        if (v.group() != src_) throw GroupError("element not in the domain");
        std::vector<int64_t> out(dst_.rank(), 0);
        for (size_t i = 0; i < dst_.rank(); ++i) {
            Int acc = 0;
            for (size_t j = 0; j < src_.rank(); ++j) acc += m_.at(i, j) * v.coords()[j];
            out[i] = static_cast<int64_t>(((acc % dst_.orders()[i]) + dst_.orders()[i]) %
                                          dst_.orders()[i]);
        }
        return GroupElement(dst_, std::move(out));
    }
    GroupElement operator()(const GroupElement& v) const { return apply(v); }

    /// Composition: (*this) after g.
    Homomorphism operator*(const Homomorphism& g) const {
        if (g.dst_ != src_) throw GroupError("composition shape mismatch");
        return Homomorphism(g.src_, dst_, m_ * g.m_, false);
    }
    Homomorphism operator+(const Homomorphism& g) const {
        require_parallel(g);
        return Homomorphism(src_, dst_, m_ + g.m_, false);
    }
    Homomorphism operator-(const Homomorphism& g) const {
        require_parallel(g);
        return Homomorphism(src_, dst_, m_ - g.m_, false);
    }
    Homomorphism operator-() const { return Homomorphism(src_, dst_, -m_, false); }
    Homomorphism scaled(const Int& c) const { return Homomorphism(src_, dst_, m_.scaled(c), false); }
    Homomorphism pow(size_t e) const {
        if (!is_endo()) throw GroupError("power requires an endomorphism");
        Homomorphism r = identity(src_), b = *this;
        while (e > 0) {
            if (e & 1) r = r * b;
            b = b * b;
            e >>= 1;
        }
        return r;
    }

    bool operator==(const Homomorphism& o) const {
        return src_ == o.src_ && dst_ == o.dst_ && m_ == o.m_;
    }
    bool operator!=(const Homomorphism& o) const { return !(*this == o); }
    bool is_identity() const { return is_endo() && *this == identity(src_); }
    bool is_zero() const { return m_.is_zero(); }

private:
    void require_parallel(const Homomorphism& g) const {
        if (src_ != g.src_ || dst_ != g.dst_) throw GroupError("homomorphism shape mismatch");
    }
    void reduce() {
        for (size_t i = 0; i < dst_.rank(); ++i) {
            const Int d = dst_.orders()[i];
            for (size_t j = 0; j < src_.rank(); ++j) {
                Int& v = m_.at(i, j);
                v = ((v % d) + d) % d;
            }
        }
    }

    FinAbGroup src_, dst_;
    IntMatrix m_;
};

/// hom_make with the spec's name.
inline Homomorphism hom_make(const FinAbGroup& src, const FinAbGroup& dst, IntMatrix m) {
    return Homomorphism(src, dst, std::move(m), true);
}

class Subgroup;
struct SubgroupStructure {
    FinAbGroup group;                      // abstract invariant-factor form
    std::vector<GroupElement> generators;  // images of the abstract generators in the ambient
    IntMatrix ux;                          // coordinate solver (see coordinates_of)
    std::vector<Int> dx;
    std::vector<size_t> kept;
};

/// Subgroup of a FinAbGroup, canonical.  Internally: the Hermite basis of
/// the full-rank lattice L with diag(orders) <= L <= Z^k whose image mod
/// the relations is the subgroup.
class Subgroup {
public:
    static Subgroup trivial(const FinAbGroup& g) {
        return from_lattice(g, IntMatrix(g.rank(), 0));
    }
    static Subgroup full(const FinAbGroup& g) {
        return from_lattice(g, IntMatrix::identity(g.rank()));
    }
    static Subgroup from_generators(const FinAbGroup& g, const std::vector<GroupElement>& gens) {
        IntMatrix cols(g.rank(), gens.size());
        for (size_t j = 0; j < gens.size(); ++j) {
            if (gens[j].group() != g) throw GroupError("generator not in the ambient group");
            for (size_t i = 0; i < g.rank(); ++i) cols.at(i, j) = gens[j].coords()[i];
        }
        return from_lattice(g, cols);
    }
    /// Columns of `cols` are ambient coordinates of generators.
    static Subgroup from_lattice(const FinAbGroup& g, const IntMatrix& cols) {
        const size_t k = g.rank();
        IntMatrix rel(k, k);
        for (size_t i = 0; i < k; ++i) rel.at(i, i) = g.orders()[i];
        IntMatrix h = column_hermite(cols.hcat(rel));
        if (h.cols() != k) throw GroupError("subgroup lattice is not full rank");  // unreachable
        return Subgroup(g, std::move(h));
    }

    const FinAbGroup& ambient() const { return ambient_; }
    const IntMatrix& lattice() const { return hnf_; }

    bool operator==(const Subgroup& o) const {
        return ambient_ == o.ambient_ && hnf_ == o.hnf_;
    }
    bool operator!=(const Subgroup& o) const { return !(*this == o); }

    Int order() const {
        Int idx = 1;  // index of the lattice in Z^k
        for (size_t i = 0; i < hnf_.rows(); ++i) idx *= hnf_.at(i, i);
        return ambient_.order() / idx;
    }
    bool is_trivial() const { return order() == 1; }
    bool is_full() const { return order() == ambient_.order(); }

    bool contains(const GroupElement& v) const {
        if (v.group() != ambient_) throw GroupError("element not in the ambient group");
        return triangular_solve(v.coords()).has_value();
    }

    /// Hermite basis columns as elements (zero columns dropped): canonical.
    std::vector<GroupElement> canonical_basis() const {
        std::vector<GroupElement> out;
        for (size_t j = 0; j < hnf_.cols(); ++j) {
            std::vector<int64_t> c(ambient_.rank());
            for (size_t i = 0; i < ambient_.rank(); ++i)
                c[i] = static_cast<int64_t>(hnf_.at(i, j) % ambient_.orders()[i]);
            GroupElement e(ambient_, std::move(c));
            if (!e.is_zero()) out.push_back(e);
        }
        return out;
    }

    Subgroup sum(const Subgroup& o) const {
        require_same_ambient(o);
        return from_lattice(ambient_, hnf_.hcat(o.hnf_));
    }
    Subgroup intersect(const Subgroup& o) const {
        require_same_ambient(o);
        // x in both lattices  <=>  x = H_a * s = H_b * t
        IntMatrix stacked = hnf_.hcat(-o.hnf_);
        IntMatrix ker = kernel_basis(stacked);
        IntMatrix basis = hnf_ * ker.row_slice(0, hnf_.cols());
        return from_lattice(ambient_, basis);
    }
    bool is_subgroup_of(const Subgroup& o) const {
        require_same_ambient(o);
        for (size_t j = 0; j < hnf_.cols(); ++j)
            if (!o.triangular_solve(lattice_column(j)).has_value()) return false;
        return true;
    }

    /// Abstract structure: invariant factors of this subgroup plus explicit
    /// generators realizing them in the ambient group.  Computed on demand
    /// and returned by value so shared Subgroup instances stay immutable.
    SubgroupStructure structure() const {
        SubgroupStructure s;
        const size_t k = ambient_.rank();
        // X = H^{-1} * diag(orders): relations written in the lattice basis
        IntMatrix x(k, k);
        for (size_t j = 0; j < k; ++j) {
            std::vector<Int> rhs(k, 0);
            rhs[j] = ambient_.orders()[j];
            auto sol = triangular_solve_int(rhs);
            for (size_t i = 0; i < k; ++i) x.at(i, j) = sol[i];
        }
        SmithForm f = smith_normal_form(x);
        std::vector<int64_t> orders;
        IntMatrix gens = hnf_ * f.u_inv;  // columns: adapted basis of the lattice
        for (size_t i = 0; i < k; ++i) {
            if (f.d.at(i, i) > 1) {
                s.kept.push_back(i);
                orders.push_back(static_cast<int64_t>(f.d.at(i, i)));
                std::vector<int64_t> c(k);
                for (size_t r = 0; r < k; ++r)
                    c[r] = static_cast<int64_t>(gens.at(r, i) % ambient_.orders()[r]);
                s.generators.emplace_back(ambient_, std::move(c));
            }
            s.dx.push_back(f.d.at(i, i));
        }
        s.group = FinAbGroup(orders);
        s.ux = f.u;
        return s;
    }

    /// Coordinates of v with respect to structure().generators.
    std::vector<int64_t> coordinates_of(const GroupElement& v) const {
        auto c = triangular_solve(v.coords());
        if (!c) throw GroupError("element is not in the subgroup");
        const SubgroupStructure s = structure();
        std::vector<int64_t> out;
        for (size_t a = 0; a < s.kept.size(); ++a) {
            Int acc = 0;
            for (size_t j = 0; j < c->size(); ++j) acc += s.ux.at(s.kept[a], j) * (*c)[j];
            const Int d = s.dx[s.kept[a]];
            out.push_back(static_cast<int64_t>(((acc % d) + d) % d));
        }
        return out;
    }

    /// All elements, in the mixed-radix order of structure().  Guarded by
    /// the global enumeration limit.
    std::vector<GroupElement> elements() const {
        if (order() > limits().max_enumeration)
            throw GroupError("subgroup too large to enumerate (limit " +
                             std::to_string(limits().max_enumeration) + ")");
        const SubgroupStructure s = structure();
        std::vector<GroupElement> out;
        out.push_back(GroupElement::zero(ambient_));
        for (size_t i = 0; i < s.generators.size(); ++i) {
            const size_t base = out.size();
            GroupElement acc = s.generators[i];
            for (int64_t m = 1; m < s.group.orders()[i]; ++m) {
                for (size_t b = 0; b < base; ++b) out.push_back(out[b] + acc);
                acc = acc + s.generators[i];
            }
        }
        return out;
    }

private:
    Subgroup(FinAbGroup g, IntMatrix hnf) : ambient_(std::move(g)), hnf_(std::move(hnf)) {}

    void require_same_ambient(const Subgroup& o) const {
        if (ambient_ != o.ambient_) throw GroupError("subgroups of different ambient groups");
    }
    std::vector<Int> lattice_column(size_t j) const {
        std::vector<Int> c(hnf_.rows());
        for (size_t i = 0; i < hnf_.rows(); ++i) c[i] = hnf_.at(i, j);
        return c;
    }
    template <typename Vec>
    std::optional<std::vector<Int>> triangular_solve(const Vec& v) const {
        std::vector<Int> rhs(v.begin(), v.end());
        return triangular_solve_opt(rhs);
    }
    std::vector<Int> triangular_solve_int(const std::vector<Int>& rhs) const {
        auto r = triangular_solve_opt(rhs);
        if (!r) throw GroupError("lattice solve failed");  // cannot happen for relation columns
        return *r;
    }
    std::optional<std::vector<Int>> triangular_solve_opt(std::vector<Int> rhs) const {
        // hnf_ is square lower triangular with positive diagonal
        const size_t k = hnf_.rows();
        std::vector<Int> c(k);
        for (size_t i = 0; i < k; ++i) {
            Int rem = rhs[i];
            if (rem % hnf_.at(i, i) != 0) return std::nullopt;
            c[i] = rem / hnf_.at(i, i);
            for (size_t r = i + 1; r < k; ++r) rhs[r] -= c[i] * hnf_.at(r, i);
        }
        return c;
    }

    FinAbGroup ambient_;
    IntMatrix hnf_;
};

// ----- kernels, images, preimages, quotients -----

/// { v : f(v) in S }.
inline Subgroup preimage(const Homomorphism& f, const Subgroup& s) {
    if (s.ambient() != f.dst()) throw GroupError("subgroup not in the codomain");
    IntMatrix stacked = f.matrix().hcat(-s.lattice());
    IntMatrix ker = kernel_basis(stacked);
    return Subgroup::from_lattice(f.src(), ker.row_slice(0, f.src().rank()));
}

inline Subgroup kernel(const Homomorphism& f) {
    return preimage(f, Subgroup::trivial(f.dst()));
}

inline Subgroup image(const Homomorphism& f) {
    return Subgroup::from_lattice(f.dst(), f.matrix());
}

inline Subgroup sum(const Subgroup& a, const Subgroup& b) { return a.sum(b); }
inline Subgroup intersect(const Subgroup& a, const Subgroup& b) { return a.intersect(b); }

/// Image of a subgroup under a homomorphism.
inline Subgroup image_of(const Homomorphism& f, const Subgroup& s) {
    if (s.ambient() != f.src()) throw GroupError("subgroup not in the domain");
    return Subgroup::from_lattice(f.dst(), f.matrix() * s.lattice());
}

/// V/A with projection, deterministic lifts and the lexicographically
/// minimal coset section.
class Quotient {
public:
    Quotient(const FinAbGroup& v, const Subgroup& a) : kernel_(a) {
        if (a.ambient() != v) throw GroupError("subgroup of a different group");
        SmithForm f = smith_normal_form(a.lattice());
        const size_t k = v.rank();
        std::vector<int64_t> orders;
        std::vector<size_t> kept;
        for (size_t i = 0; i < k; ++i) {
            if (f.d.at(i, i) > 1) {
                kept.push_back(i);
                orders.push_back(static_cast<int64_t>(f.d.at(i, i)));
            }
        }
        group_ = FinAbGroup(orders);
        IntMatrix proj(kept.size(), k);
        lift_cols_ = IntMatrix(k, kept.size());
        for (size_t a2 = 0; a2 < kept.size(); ++a2) {
            for (size_t j = 0; j < k; ++j) proj.at(a2, j) = f.u.at(kept[a2], j);
            for (size_t i = 0; i < k; ++i) lift_cols_.at(i, a2) = f.u_inv.at(i, kept[a2]);
        }
        projection_ = Homomorphism(v, group_, std::move(proj));
    }

    const FinAbGroup& group() const { return group_; }
    const Homomorphism& projection() const { return projection_; }
    const Subgroup& kernel() const { return kernel_; }

    /// Deterministic lift (no minimality promise).
    GroupElement lift(const GroupElement& q) const {
        if (q.group() != group_) throw GroupError("element not in the quotient");
        const FinAbGroup& v = kernel_.ambient();
        std::vector<int64_t> c(v.rank(), 0);
        for (size_t i = 0; i < v.rank(); ++i) {
            Int acc = 0;
            for (size_t j = 0; j < group_.rank(); ++j) acc += lift_cols_.at(i, j) * q.coords()[j];
            const Int d = v.orders()[i];
            c[i] = static_cast<int64_t>(((acc % d) + d) % d);
        }
        return GroupElement(v, std::move(c));
    }

    /// Coset representative with lexicographically minimal coordinates.
    GroupElement section(const GroupElement& q) const {
        GroupElement v0 = lift(q);
        if (kernel_.order() > limits().max_enumeration) return v0;
        GroupElement best = v0;
        for (const GroupElement& a : kernel_.elements()) {
            GroupElement cand = v0 + a;
            if (cand < best) best = cand;
        }
        return best;
    }

private:
    FinAbGroup group_;
    Homomorphism projection_;
    IntMatrix lift_cols_;
    Subgroup kernel_ = Subgroup::trivial(FinAbGroup());
};

// ----- torsion predicates -----

inline bool is_n_torsion_free(const FinAbGroup& v, const Int& n) {
    for (int64_t d : v.orders())
        if (gcd(n, Int(d)) != 1) return false;
    return true;
}

inline bool is_n_divisible(const FinAbGroup& v, const Int& n) {
    return image(Homomorphism::identity(v).scaled(n)).is_full();
}

/// All elements of v in mixed-radix coordinate order (guarded).
inline std::vector<GroupElement> all_elements(const FinAbGroup& v) {
    if (v.order() > limits().max_enumeration)
        throw GroupError("group too large to enumerate (limit " +
                         std::to_string(limits().max_enumeration) + ")");
    std::vector<GroupElement> out;
    std::vector<int64_t> c(v.rank(), 0);
    while (true) {
        out.emplace_back(v, c);
        size_t i = 0;
        while (i < v.rank() && c[i] + 1 == v.orders()[i]) c[i++] = 0;
        if (i == v.rank()) break;
        ++c[i];
    }
    return out;
}

/// Inverse of a bijective homomorphism, if it exists.
inline std::optional<Homomorphism> hom_inverse(const Homomorphism& f) {
    const FinAbGroup& src = f.src();
    const FinAbGroup& dst = f.dst();
    if (src.order() != dst.order()) return std::nullopt;
    const size_t ks = src.rank(), kd = dst.rank();
    // solve f(x_j) = e_j modulo the dst relations, for each dst generator
    IntMatrix rel(kd, kd);
    for (size_t i = 0; i < kd; ++i) rel.at(i, i) = dst.orders()[i];
    IntMatrix a = f.matrix().hcat(rel);
    IntMatrix inv(ks, kd);
    for (size_t j = 0; j < kd; ++j) {
        std::vector<Int> e(kd, 0);
        e[j] = 1;
        auto sol = solve(a, e);
        if (!sol) return std::nullopt;
        for (size_t i = 0; i < ks; ++i) inv.at(i, j) = (*sol)[i];
    }
    Homomorphism g(dst, src, std::move(inv), false);
    if (!(g * f).is_identity() || !(f * g).is_identity()) return std::nullopt;
    return g;
}

}  // namespace sl2var
