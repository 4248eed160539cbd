#pragma once

// The delta calculus and the module-level queries built from it:
// centralizers and commutator subgroups, the ascending length chains,
// per-element quadraticity, weight spaces, annihilators, the torsion
// triviality observations, and the simplicity test.

#include <optional>
#include <string>
#include <vector>

#include "sl2var/actions.hpp"
#include "sl2var/report.hpp"

namespace sl2var {

/// delta_lambda = u_lambda - 1 in End V.
struct DeltaOperator {
    FieldElement lambda;
    Homomorphism endo;
};

inline DeltaOperator delta(const GroupAction& a, const FieldElement& lambda) {
    return DeltaOperator{lambda, a.delta(lambda)};
}

enum class ActionSubset { U, G };

/// Intersection of ker(s - 1) over the given group-element endomorphisms.
inline Subgroup centralizer(const GroupAction& a, const std::vector<Homomorphism>& elems) {
    Subgroup c = Subgroup::full(a.module());
    const auto id = Homomorphism::identity(a.module());
    for (const Homomorphism& s : elems) c = c.intersect(kernel(s - id));
    return c;
}

/// Sum of im(s - 1) over the given group-element endomorphisms.
inline Subgroup commutator_sub(const GroupAction& a, const std::vector<Homomorphism>& elems) {
    Subgroup c = Subgroup::trivial(a.module());
    const auto id = Homomorphism::identity(a.module());
    for (const Homomorphism& s : elems) c = c.sum(image(s - id));
    return c;
}

namespace detail {
/// Generating set of U resp. G inside End V.  U is generated by the basis
/// images; G = <U, wUw^-1> = <U, w>, and for the centralizer we use
/// C_V(U) cap C_V(wUw^-1) which needs w^-1 = i w (w^2 = i, i^2 = 1).
inline std::vector<Homomorphism> subset_images(const GroupAction& a, ActionSubset s) {
    std::vector<Homomorphism> out = a.u_basis();
    if (s == ActionSubset::G) {
        Homomorphism w_inv = a.central_involution() * a.w();
        for (const Homomorphism& u : a.u_basis()) out.push_back(a.w() * u * w_inv);
    }
    return out;
}
}  // namespace detail

inline Subgroup centralizer(const GroupAction& a, ActionSubset s) {
    return centralizer(a, detail::subset_images(a, s));
}
inline Subgroup commutator_sub(const GroupAction& a, ActionSubset s) {
    // [G,V] is generated by the images of g-1 over any generating set of G
    std::vector<Homomorphism> gens = a.u_basis();
    if (s == ActionSubset::G) gens.push_back(a.w());
    return commutator_sub(a, gens);
}

/// Ascending chain 0 = Z_0 <= Z_1 <= ... with Z_{i+1}/Z_i the U-central
/// (resp. u-annihilated) part of V/Z_i.  length is the smallest k with
/// Z_k = V; empty optional when the chain stabilizes below V.
struct LengthChain {
    std::vector<Subgroup> chain;  // starts at Z_0 = 0
    std::optional<size_t> length;
};

namespace detail {
/// nilpotency maps: v -> f(v) for each f; the chain step takes the common
/// preimage of the previous term under all of them.
inline LengthChain ascending_chain(const FinAbGroup& v, const std::vector<Homomorphism>& maps) {
    LengthChain out;
    Subgroup z = Subgroup::trivial(v);
    out.chain.push_back(z);
    if (z.is_full()) {  // trivial module
        out.length = 0;
        return out;
    }
    while (true) {
        Subgroup next = Subgroup::full(v);
        for (const Homomorphism& f : maps) next = next.intersect(preimage(f, z));
        out.chain.push_back(next);
        if (next.is_full()) {
            out.length = out.chain.size() - 1;
            return out;
        }
        if (next == z) return out;  // stabilized below V: infinite length
        z = next;
    }
}
}  // namespace detail

/// U-length via the centralizer chain Z_1 = C_V(U), Z_{i+1}/Z_i = C_{V/Z_i}(U).
inline LengthChain u_length(const GroupAction& a) {
    std::vector<Homomorphism> deltas;
    const auto id = Homomorphism::identity(a.module());
    for (const Homomorphism& u : a.u_basis()) deltas.push_back(u - id);
    return detail::ascending_chain(a.module(), deltas);
}

/// u-length of a Lie action: Z_1 = Ann_V(u), Z_{i+1}/Z_i the u-annihilated part.
inline LengthChain fu_length(const LieAction& a) {
    return detail::ascending_chain(a.module(), a.x_basis());
}

/// (u_lambda - 1)^2 = 0, lambda != 0.
inline bool is_quadratic_element(const GroupAction& a, const FieldElement& lambda) {
    if (lambda.is_zero()) throw ActionError("quadraticity is asked of a nontrivial element");
    Homomorphism d = a.delta(lambda);
    return (d * d).is_zero();
}
/// x_lambda^2 = 0, lambda != 0.
inline bool is_quadratic_element(const LieAction& a, const FieldElement& lambda) {
    if (lambda.is_zero()) throw ActionError("quadraticity is asked of a nontrivial element");
    const Homomorphism& x = a.x(lambda);
    return (x * x).is_zero();
}

/// E_i = ker(h - i) -- no directness of the E_i is assumed anywhere,
/// torsion modules can make them overlap.
inline Subgroup weight_space(const LieAction& a, int64_t i) {
    Homomorphism shifted = a.h() - Homomorphism::identity(a.module()).scaled(i);
    return kernel(shifted);
}

/// Ann_V(g) = intersection of ker x_{b_i} and ker y_{b_i}; h is bracket-
/// generated so it is annihilated automatically.
inline Subgroup annihilator(const LieAction& a) {
    Subgroup s = Subgroup::full(a.module());
    for (const Homomorphism& f : a.x_basis()) s = s.intersect(kernel(f));
    for (const Homomorphism& f : a.y_basis()) s = s.intersect(kernel(f));
    return s;
}

/// Smallest k with f^k = 0, if f is nilpotent.  The image chain strictly
/// descends while it can, so the loop is bounded by log2 |V|.
inline std::optional<size_t> nilpotency_degree(const Homomorphism& f) {
    Homomorphism p = Homomorphism::identity(f.src());
    size_t k = 0;
    Int prev_size = f.src().order() + 1;
    while (true) {
        if (p.is_zero()) return k;
        Int sz = image(p).order();
        if (sz >= prev_size) return std::nullopt;  // stopped shrinking, not nilpotent
        prev_size = sz;
        p = p * f;
        ++k;
    }
}

/// Observation: char(K) = p and V p-torsion-free forces a trivial action.
/// The group case additionally assumes delta nilpotent.
inline CheckReport torsion_triviality_check(const GroupAction& a) {
    CheckReport r("torsion-triviality(group)");
    if (!nilpotency_degree(a.delta(a.field().one()))) {
        r.gate("hypothesis requires delta nilpotent in End V");
        return r;
    }
    if (!is_n_torsion_free(a.module(), Int(a.field().characteristic()))) {
        r.not_applicable("V has p-torsion for p = char K; the observation says nothing");
        return r;
    }
    const auto id = Homomorphism::identity(a.module());
    size_t gi = 0;
    for (const Homomorphism& g : a.generator_images())
        r.require(g == id, "generator image " + std::to_string(gi++) + " is not the identity");
    return r;
}

inline CheckReport torsion_triviality_check(const LieAction& a) {
    CheckReport r("torsion-triviality(lie)");
    if (!is_n_torsion_free(a.module(), Int(a.field().characteristic()))) {
        r.not_applicable("V has p-torsion for p = char K; the observation says nothing");
        return r;
    }
    size_t gi = 0;
    for (const Homomorphism& g : a.generator_images())
        r.require(g.is_zero(), "generator image " + std::to_string(gi++) + " is not zero");
    return r;
}

namespace detail {
/// Smallest action-invariant subgroup containing v.
inline Subgroup closure_of(const FinAbGroup& module, const std::vector<Homomorphism>& gens,
                           const GroupElement& v) {
    Subgroup s = Subgroup::from_generators(module, {v});
    while (true) {
        Subgroup bigger = s;
        for (const Homomorphism& g : gens) bigger = bigger.sum(image_of(g, s));
        if (bigger == s) return s;
        s = bigger;
    }
}

inline bool simplicity_test_impl(const FinAbGroup& module, const std::vector<Homomorphism>& gens) {
    if (module.order() > limits().max_enumeration)
        throw GroupError("module too large for the simplicity enumeration (limit " +
                         std::to_string(limits().max_enumeration) + ")");
    if (module.order() == 1) return false;  // no nonzero element at all
    for (const GroupElement& v : all_elements(module)) {
        if (v.is_zero()) continue;
        if (!closure_of(module, gens, v).is_full()) return false;
    }
    return true;
}
}  // namespace detail

/// True iff every nonzero element generates V under the action closure.
inline bool simplicity_test(const GroupAction& a) {
    return detail::simplicity_test_impl(a.module(), a.generator_images());
}
inline bool simplicity_test(const LieAction& a) {
    return detail::simplicity_test_impl(a.module(), a.generator_images());
}

/// Test-oracle flavour of u_length: the smallest k such that every k-fold
/// product of basis deltas vanishes (words enumerated, not multisets).
inline std::optional<size_t> u_length_word_oracle(const GroupAction& a, size_t k_max) {
    std::vector<Homomorphism> deltas;
    const auto id = Homomorphism::identity(a.module());
    for (const Homomorphism& u : a.u_basis()) deltas.push_back(u - id);
    if (a.module().rank() == 0) return 0;
    for (size_t k = 1; k <= k_max; ++k) {
        std::vector<size_t> word(k, 0);
        bool all_zero = true;
        while (all_zero) {
            Homomorphism prod = id;
            for (size_t pos = 0; pos < k; ++pos) prod = prod * deltas[word[pos]];
            if (!prod.is_zero()) all_zero = false;
            size_t i = 0;
            while (i < k && word[i] + 1 == deltas.size()) word[i++] = 0;
            if (i == k) break;
            ++word[i];
        }
        if (all_zero) return k;
    }
    return std::nullopt;
}

}  // namespace sl2var
