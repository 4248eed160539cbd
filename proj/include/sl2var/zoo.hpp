#pragma once

// Constructors for the modules the project works with: natural modules,
// trivial modules, direct sums, conjugates, Frobenius twists, the Steinberg
// tensor modules St SL2(F_{p^2}), and the two characteristic-3 families
// that witness the failure of Lie linearization there.  Every constructor
// returns a fully verified action.

#include <cstdint>
#include <random>
#include <stdexcept>
#include <vector>

#include "sl2var/actions.hpp"
#include "sl2var/kmatrix.hpp"

namespace sl2var {

// ----- natural modules -----

/// SL2(K) acting on K^2, as an abelian group (Z/p)^{2n}.
inline GroupAction natural_group_module(const Field& f) {
    std::vector<Homomorphism> u_basis;
    for (int i = 0; i < f.degree(); ++i)
        u_basis.push_back(to_homomorphism(Sl2Matrix::unipotent(f, f.basis(i)).matrix()));
    Homomorphism w = to_homomorphism(Sl2Matrix::weyl(f).matrix());
    return GroupAction::from_generators(f, k_space_group(f, 2), std::move(u_basis), std::move(w));
}

/// sl2(K) acting on K^2.
inline LieAction natural_lie_module(const Field& f) {
    std::vector<Homomorphism> xs, ys;
    for (int i = 0; i < f.degree(); ++i) {
        xs.push_back(to_homomorphism(lie_x_matrix(f, f.basis(i))));
        ys.push_back(to_homomorphism(lie_y_matrix(f, f.basis(i))));
    }
    return LieAction::from_generators(f, k_space_group(f, 2), std::move(xs), std::move(ys));
}

// ----- trivial modules -----

inline GroupAction trivial_group_module(const FinAbGroup& v, const Field& f) {
    std::vector<Homomorphism> u_basis(static_cast<size_t>(f.degree()),
                                      Homomorphism::identity(v));
    return GroupAction::from_generators(f, v, std::move(u_basis), Homomorphism::identity(v));
}

inline LieAction trivial_lie_module(const FinAbGroup& v, const Field& f) {
    std::vector<Homomorphism> zeros(static_cast<size_t>(f.degree()),
                                    Homomorphism::zero(v, v));
    return LieAction::from_generators(f, v, zeros, zeros);
}

// ----- direct sums -----

namespace detail {
struct SumLayout {
    CanonicalForm cf;
    std::vector<size_t> offsets;  // raw coordinate offset of each part
};

inline SumLayout sum_layout(const std::vector<const FinAbGroup*>& parts) {
    std::vector<int64_t> raw;
    SumLayout layout;
    for (const FinAbGroup* g : parts) {
        layout.offsets.push_back(raw.size());
        raw.insert(raw.end(), g->orders().begin(), g->orders().end());
    }
    layout.cf = canonical_form(raw);
    return layout;
}

/// Block-diagonal endomorphism transported into the canonical coordinates.
inline Homomorphism block_endo(const SumLayout& layout,
                               const std::vector<const Homomorphism*>& blocks) {
    size_t raw_rank = layout.cf.from_canon.rows();
    IntMatrix big(raw_rank, raw_rank);
    for (size_t b = 0; b < blocks.size(); ++b) {
        const IntMatrix& m = blocks[b]->matrix();
        const size_t off = layout.offsets[b];
        for (size_t i = 0; i < m.rows(); ++i)
            for (size_t j = 0; j < m.cols(); ++j) big.at(off + i, off + j) = m.at(i, j);
    }
    IntMatrix conj = layout.cf.to_canon * big * layout.cf.from_canon;
    return Homomorphism(layout.cf.group, layout.cf.group, std::move(conj), false);
}
}  // namespace detail

inline GroupAction direct_sum(const std::vector<GroupAction>& parts) {
    if (parts.empty()) throw ActionError("direct sum of no actions");
    const Field& f = parts[0].field();
    std::vector<const FinAbGroup*> groups;
    for (const GroupAction& a : parts) {
        if (a.field() != f) throw ActionError("direct sum over mixed fields");
        groups.push_back(&a.module());
    }
    detail::SumLayout layout = detail::sum_layout(groups);
    std::vector<Homomorphism> u_basis;
    for (int i = 0; i < f.degree(); ++i) {
        std::vector<const Homomorphism*> blocks;
        for (const GroupAction& a : parts) blocks.push_back(&a.u_basis()[static_cast<size_t>(i)]);
        u_basis.push_back(detail::block_endo(layout, blocks));
    }
    std::vector<const Homomorphism*> wblocks;
    for (const GroupAction& a : parts) wblocks.push_back(&a.w());
    return GroupAction::from_generators(f, layout.cf.group, std::move(u_basis),
                                        detail::block_endo(layout, wblocks));
}

inline LieAction direct_sum(const std::vector<LieAction>& parts) {
    if (parts.empty()) throw ActionError("direct sum of no actions");
    const Field& f = parts[0].field();
    std::vector<const FinAbGroup*> groups;
    for (const LieAction& a : parts) {
        if (a.field() != f) throw ActionError("direct sum over mixed fields");
        groups.push_back(&a.module());
    }
    detail::SumLayout layout = detail::sum_layout(groups);
    std::vector<Homomorphism> xs, ys;
    for (int i = 0; i < f.degree(); ++i) {
        std::vector<const Homomorphism*> xb, yb;
        for (const LieAction& a : parts) {
            xb.push_back(&a.x_basis()[static_cast<size_t>(i)]);
            yb.push_back(&a.y_basis()[static_cast<size_t>(i)]);
        }
        xs.push_back(detail::block_endo(layout, xb));
        ys.push_back(detail::block_endo(layout, yb));
    }
    return LieAction::from_generators(f, layout.cf.group, std::move(xs), std::move(ys));
}

// ----- conjugation and twisting -----

inline GroupAction conjugate(const GroupAction& a, const Homomorphism& g) {
    auto gi = hom_inverse(g);
    if (!gi) throw ActionError("conjugator is not invertible");
    std::vector<Homomorphism> u_basis;
    for (const Homomorphism& u : a.u_basis()) u_basis.push_back(g * u * *gi);
    return GroupAction::from_generators(a.field(), a.module(), std::move(u_basis),
                                        g * a.w() * *gi);
}

inline LieAction conjugate(const LieAction& a, const Homomorphism& g) {
    auto gi = hom_inverse(g);
    if (!gi) throw ActionError("conjugator is not invertible");
    std::vector<Homomorphism> xs, ys;
    for (const Homomorphism& x : a.x_basis()) xs.push_back(g * x * *gi);
    for (const Homomorphism& y : a.y_basis()) ys.push_back(g * y * *gi);
    return LieAction::from_generators(a.field(), a.module(), std::move(xs), std::move(ys));
}

/// Precompose the scalar indexing with the field automorphism
/// lambda -> lambda^(p^e): the twisted u'_lambda is u_{lambda^(p^e)}.
inline GroupAction twist(const GroupAction& a, int frobenius_exponent) {
    const Field& f = a.field();
    std::vector<Homomorphism> u_basis;
    for (int i = 0; i < f.degree(); ++i)
        u_basis.push_back(a.u(f.frobenius(f.basis(i), frobenius_exponent)));
    return GroupAction::from_generators(f, a.module(), std::move(u_basis), a.w());
}

inline LieAction twist(const LieAction& a, int frobenius_exponent) {
    const Field& f = a.field();
    std::vector<Homomorphism> xs, ys;
    for (int i = 0; i < f.degree(); ++i) {
        FieldElement b = f.frobenius(f.basis(i), frobenius_exponent);
        xs.push_back(a.x(b));
        ys.push_back(a.y(b));
    }
    return LieAction::from_generators(f, a.module(), std::move(xs), std::move(ys));
}

// ----- Steinberg tensor module -----

namespace detail {
/// Sym^m of a 2x2 matrix over K, on the basis e1^(m-j) e2^j, j = 0..m.
inline KMatrix sym_power(const KMatrix& g, unsigned m) {
    const Field& f = g.field();
    KMatrix r(f, m + 1, m + 1);
    for (unsigned j = 0; j <= m; ++j) {
        // expand (a e1 + c e2)^(m-j) (b e1 + d e2)^j, s marking the e2 degree
        std::vector<FieldElement> poly{f.one()};
        auto mul_linear = [&](const FieldElement& c0, const FieldElement& c1) {
            std::vector<FieldElement> next(poly.size() + 1, f.zero());
            for (size_t d = 0; d < poly.size(); ++d) {
                next[d] = f.add(next[d], f.mul(poly[d], c0));
                next[d + 1] = f.add(next[d + 1], f.mul(poly[d], c1));
            }
            poly = std::move(next);
        };
        for (unsigned r2 = 0; r2 < m - j; ++r2) mul_linear(g.at(0, 0), g.at(1, 0));
        for (unsigned r2 = 0; r2 < j; ++r2) mul_linear(g.at(0, 1), g.at(1, 1));
        for (unsigned k = 0; k <= m; ++k) r.at(k, j) = poly[k];
    }
    return r;
}
}  // namespace detail

/// St SL2(F_{p^2}) = Sym^{p-1}(Nat) tensor its Frobenius twist: the
/// standard defining-characteristic realization (for p = 2 this is
/// Nat tensor Nat^Frobenius).  Every delta_lambda has nilpotence degree at
/// most p while the U-length exceeds p.
inline GroupAction steinberg_tensor(int64_t p) {
    if (p != 2 && p != 3) throw ActionError("steinberg_tensor supports p = 2 and p = 3 only");
    Field f = Field::make(p, 2);
    const unsigned m = static_cast<unsigned>(p - 1);
    auto lift = [&](const KMatrix& g) {
        KMatrix s = detail::sym_power(g, m);
        return to_homomorphism(s.tensor(s.frobenius()));
    };
    std::vector<Homomorphism> u_basis;
    for (int i = 0; i < f.degree(); ++i)
        u_basis.push_back(lift(Sl2Matrix::unipotent(f, f.basis(i)).matrix()));
    Homomorphism w = lift(Sl2Matrix::weyl(f).matrix());
    FinAbGroup module(std::vector<int64_t>(
        2 * static_cast<size_t>(p) * static_cast<size_t>(p), p));
    return GroupAction::from_generators(f, module, std::move(u_basis), std::move(w));
}

// ----- characteristic 3 counterexamples -----

/// The three-dimensional sl2(F_3)-module on basis (e2, e0, e1) with
///   x: e2 -> e1,  e0, e1 -> 0        y: e2 -> e0 -> e1 -> e2
/// Here x^2 = 0 but y^2 != 0 (and y^3 = 1), so the representation cannot
/// come from a representation of the group.
inline LieAction char3_basic_counterexample() {
    Field f3 = Field::make(3, 1);
    FinAbGroup v(std::vector<int64_t>{3, 3, 3});
    IntMatrix x(3, 3), y(3, 3);
    x.at(2, 0) = 1;                    // x e2 = e1
    y.at(1, 0) = 1;                    // y e2 = e0
    y.at(2, 1) = 1;                    // y e0 = e1
    y.at(0, 2) = 1;                    // y e1 = e2
    return LieAction::from_generators(f3, v, {Homomorphism(v, v, std::move(x))},
                                      {Homomorphism(v, v, std::move(y))});
}

/// sigma-twisted module over a field K of characteristic 3: three K-blocks
/// E_{-1}, E_0, E_1 (coordinates in that order, n = [K:F_3] each) with
///   x_l: (m)_{-1} -> (l m)_1
///   y_l: (m)_1 -> (l m)_{-1},  (m)_0 -> (l m)_1,  (m)_{-1} -> (sigma(l m))_0
/// where sigma is any additive (= F_3-linear) map K -> K.  x^2 = 0 always;
/// the module is simple precisely when sigma is injective, and
/// (y^3)|_{E_0} = sigma obstructs linearity when sigma is not.
inline LieAction char3_sigma_module(const Field& f, const IntMatrix& sigma) {
    if (f.characteristic() != 3)
        throw ActionError("sigma module requires a field of characteristic 3");
    const size_t n = static_cast<size_t>(f.degree());
    if (sigma.rows() != n || sigma.cols() != n)
        throw ActionError("sigma must be an n x n matrix over F_3, n = [K:F_3]");
    FinAbGroup v(std::vector<int64_t>(3 * n, 3));

    auto mult_block = [&](const FieldElement& lam) {
        IntMatrix m(n, n);
        for (size_t c = 0; c < n; ++c) {
            FieldElement img = f.mul(lam, f.basis(static_cast<int>(c)));
            for (size_t r = 0; r < n; ++r) m.at(r, c) = img.coeffs()[r];
        }
        return m;
    };
    auto paste = [&](IntMatrix& big, const IntMatrix& block, size_t r0, size_t c0) {
        for (size_t i = 0; i < block.rows(); ++i)
            for (size_t j = 0; j < block.cols(); ++j) big.at(r0 + i, c0 + j) = block.at(i, j);
    };

    std::vector<Homomorphism> xs, ys;
    for (int i = 0; i < f.degree(); ++i) {
        IntMatrix mb = mult_block(f.basis(i));
        IntMatrix x(3 * n, 3 * n), y(3 * n, 3 * n);
        paste(x, mb, 2 * n, 0);          // E_{-1} -> E_1
        paste(y, mb, 0, 2 * n);          // E_1 -> E_{-1}
        paste(y, mb, 2 * n, n);          // E_0 -> E_1
        paste(y, sigma * mb, n, 0);      // E_{-1} -> E_0 through sigma
        xs.emplace_back(v, v, std::move(x));
        ys.emplace_back(v, v, std::move(y));
    }
    return LieAction::from_generators(f, v, std::move(xs), std::move(ys));
}

/// Element (mu) in the weight block -1, 0 or +1 of the sigma-module layout.
inline GroupElement char3_weight_element(const Field& f, int weight, const FieldElement& mu) {
    const size_t n = static_cast<size_t>(f.degree());
    FinAbGroup v(std::vector<int64_t>(3 * n, 3));
    std::vector<int64_t> c(3 * n, 0);
    size_t off = weight < 0 ? 0 : weight == 0 ? n : 2 * n;
    for (size_t i = 0; i < n; ++i) c[off + i] = mu.coeffs()[i];
    return GroupElement(v, std::move(c));
}

// sigma choices exposed by the CLI
inline IntMatrix sigma_zero(const Field& f) {
    const size_t n = static_cast<size_t>(f.degree());
    return IntMatrix(n, n);
}
inline IntMatrix sigma_frobenius(const Field& f) {
    const size_t n = static_cast<size_t>(f.degree());
    IntMatrix m(n, n);
    for (size_t c = 0; c < n; ++c) {
        FieldElement img = f.frobenius(f.basis(static_cast<int>(c)));
        for (size_t r = 0; r < n; ++r) m.at(r, c) = img.coeffs()[r];
    }
    return m;
}
inline IntMatrix sigma_trace(const Field& f) {
    const size_t n = static_cast<size_t>(f.degree());
    IntMatrix m(n, n);
    for (size_t c = 0; c < n; ++c) {
        FieldElement acc = f.zero();
        FieldElement pw = f.basis(static_cast<int>(c));
        for (int e = 0; e < f.degree(); ++e) {
            acc = f.add(acc, pw);
            pw = f.frobenius(pw);
        }
        for (size_t r = 0; r < n; ++r) m.at(r, c) = acc.coeffs()[r];
    }
    return m;
}

// ----- seeded randomness for the corpus -----

/// Random invertible endomorphism of a module of prime exponent p.
inline Homomorphism random_invertible(const FinAbGroup& v, std::mt19937_64& rng) {
    for (int64_t d : v.orders())
        if (d != v.exponent() || !Field::is_prime(d))
            throw GroupError("random conjugators require a module of prime exponent");
    const int64_t p = v.exponent();
    const size_t k = v.rank();
    std::uniform_int_distribution<int64_t> dist(0, p - 1);
    while (true) {
        IntMatrix m(k, k);
        for (size_t i = 0; i < k; ++i)
            for (size_t j = 0; j < k; ++j) m.at(i, j) = dist(rng);
        if (k == 0 || determinant(m) % p != 0) return Homomorphism(v, v, std::move(m), false);
    }
}

}  // namespace sl2var
