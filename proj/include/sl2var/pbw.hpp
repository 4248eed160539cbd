#pragma once

// Symbolic computation in the enveloping ring of sl2 over the integers.
// Words in x, y, h are rewritten to the ordered monomial basis y^a h^b x^c
// using the three defining relations
//     xy = yx + h,   xh = hx - 2x,   hy = yh - 2y,
// i.e. the bracket relations specialized to scalar 1.  Coefficients are
// arbitrary-precision integers; specialization to a module happens only in
// evaluate().

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "sl2var/actions.hpp"
#include "sl2var/int_matrix.hpp"
#include "sl2var/report.hpp"

namespace sl2var {

enum class Letter : unsigned char { Y = 0, H = 1, X = 2 };

/// Formal Z-linear combination of words in {x, y, h}.
struct FreeWord {
    std::vector<std::pair<Int, std::vector<Letter>>> terms;

    static FreeWord zero() { return {}; }
    static FreeWord one() { return {{{Int(1), {}}}}; }
    static FreeWord letter(Letter l) { return {{{Int(1), {l}}}}; }
    static FreeWord x() { return letter(Letter::X); }
    static FreeWord y() { return letter(Letter::Y); }
    static FreeWord h() { return letter(Letter::H); }

    FreeWord operator+(const FreeWord& o) const {
        FreeWord r = *this;
        r.terms.insert(r.terms.end(), o.terms.begin(), o.terms.end());
        return r;
    }
    FreeWord operator-(const FreeWord& o) const { return *this + o.scaled(Int(-1)); }
    FreeWord operator*(const FreeWord& o) const {
        FreeWord r;
        for (const auto& [ca, wa] : terms)
            for (const auto& [cb, wb] : o.terms) {
                std::vector<Letter> w = wa;
                w.insert(w.end(), wb.begin(), wb.end());
                r.terms.emplace_back(ca * cb, std::move(w));
            }
        return r;
    }
    FreeWord scaled(const Int& c) const {
        FreeWord r = *this;
        for (auto& t : r.terms) t.first *= c;
        return r;
    }
    FreeWord pow(size_t e) const {
        FreeWord r = one();
        for (size_t i = 0; i < e; ++i) r = r * *this;
        return r;
    }
};

/// Exponent triple of the ordered monomial y^a h^b x^c.
struct PBWMonomial {
    unsigned y = 0, h = 0, x = 0;
    auto operator<=>(const PBWMonomial&) const = default;
};

/// Canonical element of the enveloping ring: finitely many monomials with
/// nonzero integer coefficients.
class PBWElement {
public:
    PBWElement() = default;

    void add(const PBWMonomial& m, const Int& c) {
        if (c == 0) return;
        Int& v = terms_[m];
        v += c;
        if (v == 0) terms_.erase(m);
    }
    const std::map<PBWMonomial, Int>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    bool operator==(const PBWElement& o) const { return terms_ == o.terms_; }
    bool operator!=(const PBWElement& o) const { return !(*this == o); }

    PBWElement operator+(const PBWElement& o) const {
        PBWElement r = *this;
        for (const auto& [m, c] : o.terms_) r.add(m, c);
        return r;
    }
    PBWElement operator-(const PBWElement& o) const {
        PBWElement r = *this;
        for (const auto& [m, c] : o.terms_) r.add(m, -c);
        return r;
    }

    /// Sorted formal sum, e.g. "1 - 2*y h x + 3*y^2".
    std::string str() const {
        if (terms_.empty()) return "0";
        std::string s;
        for (const auto& [m, c] : terms_) {
            std::string mono;
            auto app = [&mono](const char* v, unsigned e) {
                if (e == 0) return;
                if (!mono.empty()) mono += " ";
                mono += v;
                if (e > 1) mono += "^" + std::to_string(e);
            };
            app("y", m.y);
            app("h", m.h);
            app("x", m.x);
            if (!s.empty()) s += c >= 0 ? " + " : " - ";
            else if (c < 0) s += "-";
            Int a = abs(c);
            if (a != 1 || mono.empty()) {
                s += a.str();
                if (!mono.empty()) s += "*";
            }
            s += mono;
        }
        return s;
    }

private:
    std::map<PBWMonomial, Int> terms_;
};

enum class ReductionStrategy { Leftmost, Rightmost };

/// Confluent normal form in the basis y^a h^b x^c.  The strategy picks
/// which out-of-order adjacent pair is rewritten first; by confluence the
/// result is the same either way (and the test suite checks that).
inline PBWElement pbw_normalize(const FreeWord& input,
                                ReductionStrategy strategy = ReductionStrategy::Leftmost) {
    PBWElement out;
    std::vector<std::pair<Int, std::vector<Letter>>> work(input.terms.begin(), input.terms.end());
    while (!work.empty()) {
        auto [c, w] = std::move(work.back());
        work.pop_back();
        if (c == 0) continue;

        // find a descent: adjacent letters out of the y < h < x order
        size_t pos = w.size();
        if (strategy == ReductionStrategy::Leftmost) {
            for (size_t i = 0; i + 1 < w.size(); ++i)
                if (static_cast<int>(w[i]) > static_cast<int>(w[i + 1])) {
                    pos = i;
                    break;
                }
        } else {
            for (size_t i = w.size(); i-- > 1;)
                if (static_cast<int>(w[i - 1]) > static_cast<int>(w[i])) {
                    pos = i - 1;
                    break;
                }
        }
        if (pos == w.size()) {  // normal monomial
            PBWMonomial m;
            for (Letter l : w) {
                if (l == Letter::Y) ++m.y;
                else if (l == Letter::H) ++m.h;
                else ++m.x;
            }
            out.add(m, c);
            continue;
        }

        const Letter a = w[pos], b = w[pos + 1];
        std::vector<Letter> swapped = w;
        std::swap(swapped[pos], swapped[pos + 1]);
        std::vector<Letter> shorter = w;
        shorter.erase(shorter.begin() + static_cast<std::ptrdiff_t>(pos));
        if (a == Letter::X && b == Letter::Y) {
            shorter[pos] = Letter::H;  // xy -> yx + h
            work.emplace_back(c, std::move(swapped));
            work.emplace_back(c, std::move(shorter));
        } else if (a == Letter::X && b == Letter::H) {
            shorter[pos] = Letter::X;  // xh -> hx - 2x
            work.emplace_back(c, std::move(swapped));
            work.emplace_back(-2 * c, std::move(shorter));
        } else {  // a == H, b == Y:  hy -> yh - 2y
            shorter[pos] = Letter::Y;
            work.emplace_back(c, std::move(swapped));
            work.emplace_back(-2 * c, std::move(shorter));
        }
    }
    return out;
}

/// The identities behind the quadratic Lie analysis, normalized symbolically:
///     y^i x   = x y^i - i (h + i - 1) y^{i-1}
///     y^i x^2 = x^2 y^i - 2i (h + i - 2) x y^{i-1}
///                + i (i-1) (h + i - 1) (h + i - 2) y^{i-2}
inline CheckReport verify_induction_identities(unsigned i_max) {
    CheckReport r("enveloping-ring-identities");
    const FreeWord x = FreeWord::x(), y = FreeWord::y(), h = FreeWord::h(), one = FreeWord::one();
    for (unsigned i = 1; i <= i_max; ++i) {
        const Int ii = i;
        FreeWord yi = y.pow(i);
        FreeWord yi1 = y.pow(i - 1);

        FreeWord lhs1 = yi * x;
        FreeWord rhs1 = x * yi - (h + one.scaled(ii - 1)).scaled(ii) * yi1;
        r.require(pbw_normalize(lhs1) == pbw_normalize(rhs1),
                  "first identity fails at i = " + std::to_string(i));

        FreeWord lhs2 = yi * x * x;
        FreeWord rhs2 = x * x * yi - (h + one.scaled(ii - 2)).scaled(2 * ii) * x * yi1;
        if (i >= 2)
            rhs2 = rhs2 + ((h + one.scaled(ii - 1)) * (h + one.scaled(ii - 2)))
                              .scaled(ii * (ii - 1)) *
                          y.pow(i - 2);
        r.require(pbw_normalize(lhs2) == pbw_normalize(rhs2),
                  "second identity fails at i = " + std::to_string(i));
    }
    return r;
}

/// Substitute the action's x, y, h endomorphisms.  Monomial y^a h^b x^c is
/// the operator product, x applied first.
inline Homomorphism evaluate(const PBWElement& e, const LieAction& l) {
    const Homomorphism X = l.x(), Y = l.y(), H = l.h();
    Homomorphism acc = Homomorphism::zero(l.module(), l.module());
    for (const auto& [m, c] : e.terms()) {
        Homomorphism term = Y.pow(m.y) * H.pow(m.h) * X.pow(m.x);
        acc = acc + term.scaled(c);
    }
    return acc;
}

inline Homomorphism evaluate(const FreeWord& w, const LieAction& l) {
    const Homomorphism X = l.x(), Y = l.y(), H = l.h();
    Homomorphism acc = Homomorphism::zero(l.module(), l.module());
    for (const auto& [c, word] : w.terms) {
        Homomorphism term = Homomorphism::identity(l.module());
        for (Letter letter : word)
            term = term * (letter == Letter::X ? X : letter == Letter::Y ? Y : H);
        acc = acc + term.scaled(c);
    }
    return acc;
}

}  // namespace sl2var
