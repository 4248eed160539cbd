#pragma once

// Actions of the group SL2(K) and of the Lie ring sl2(K) on a finite
// abelian group, given by generator images and verified exhaustively
// against the defining relations.
//
// A group action is specified by the images of u_{b_i} for an F_p-basis
// b_0, ..., b_{n-1} of K together with the image of w; the whole family
// u_lambda is derived from additivity and every torus image t_lambda from
// the word u_lambda w u_{lambda^-1} w u_lambda w, so it cannot be supplied
// inconsistently.  A Lie action is specified by the images of x_{b_i} and
// y_{b_i}; h_lambda is derived from the bracket [x_lambda, y_1].

#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "sl2var/abelian.hpp"
#include "sl2var/fields.hpp"

namespace sl2var {

struct RelationIssue {
    std::string relation;
    std::string witness;
};

struct RelationReport {
    size_t checked = 0;
    std::vector<RelationIssue> failures;

    bool ok() const { return failures.empty(); }
    void count() { ++checked; }
    void fail(std::string relation, std::string witness) {
        failures.push_back({std::move(relation), std::move(witness)});
    }
    void check(bool cond, const std::string& relation, const std::string& witness) {
        ++checked;
        if (!cond) fail(relation, witness);
    }
    std::string summary() const {
        if (ok()) return "all " + std::to_string(checked) + " relation instances hold";
        std::string s = std::to_string(failures.size()) + " failed relation instance(s):";
        for (size_t i = 0; i < failures.size() && i < 8; ++i)
            s += "\n  " + failures[i].relation + " at " + failures[i].witness;
        return s;
    }
};

class ActionError : public std::runtime_error {
public:
    explicit ActionError(const std::string& what, RelationReport report = {})
        : std::runtime_error(what), report(std::move(report)) {}
    RelationReport report;
};

namespace detail {
inline bool invertible(const Homomorphism& f) {
    return f.is_endo() && kernel(f).is_trivial();
}
}  // namespace detail

class GroupAction;
class LieAction;
inline RelationReport steinberg_verify(const GroupAction& a);
inline RelationReport lie_verify(const LieAction& a);

/// Verified action of SL2(K) on a finite abelian group.
class GroupAction {
public:
    static GroupAction from_generators(const Field& field, const FinAbGroup& module,
                                       std::vector<Homomorphism> u_basis_images,
                                       Homomorphism w_image) {
        auto [action, report] =
            try_from_generators(field, module, std::move(u_basis_images), std::move(w_image));
        if (!action) throw ActionError("group action rejected: " + report.summary(), report);
        return *std::move(action);
    }

    /// Non-throwing variant: returns the report either way.
    static std::pair<std::optional<GroupAction>, RelationReport> try_from_generators(
        const Field& field, const FinAbGroup& module, std::vector<Homomorphism> u_basis_images,
        Homomorphism w_image) {
        GroupAction a;
        a.field_ = field;
        a.module_ = module;
        a.u_basis_ = std::move(u_basis_images);
        a.w_ = std::move(w_image);

        RelationReport report;
        if (a.u_basis_.size() != static_cast<size_t>(field.degree())) {
            report.fail("generator count", "need one u image per F_p-basis element of K");
            return {std::nullopt, report};
        }
        for (size_t i = 0; i < a.u_basis_.size(); ++i) {
            const Homomorphism& h = a.u_basis_[i];
            if (!(h.src() == module && h.dst() == module)) {
                report.fail("generator shape", "u basis image " + std::to_string(i));
                return {std::nullopt, report};
            }
            if (!detail::invertible(h)) {
                report.fail("invertibility", "u basis image " + std::to_string(i));
                return {std::nullopt, report};
            }
        }
        if (!(a.w_.src() == module && a.w_.dst() == module) || !detail::invertible(a.w_)) {
            report.fail("invertibility", "w image");
            return {std::nullopt, report};
        }

        a.build_caches();
        report = steinberg_verify(a);
        a.report_ = report;
        if (!report.ok()) return {std::nullopt, report};
        return {std::move(a), report};
    }

    const Field& field() const { return field_; }
    const FinAbGroup& module() const { return module_; }
    const std::vector<Homomorphism>& u_basis() const { return u_basis_; }
    const Homomorphism& w() const { return w_; }
    const RelationReport& report() const { return report_; }

    const Homomorphism& u(const FieldElement& lambda) const {
        return u_[static_cast<size_t>(field_.index_of(lambda))];
    }
    const Homomorphism& t(const FieldElement& lambda) const {
        if (lambda.is_zero()) throw ActionError("t_0 is undefined");
        return t_[static_cast<size_t>(field_.index_of(lambda))];
    }
    /// i = t_{-1}, the central involution (identity in characteristic 2).
    const Homomorphism& central_involution() const { return i_; }

    /// delta_lambda = u_lambda - 1 in End V.
    Homomorphism delta(const FieldElement& lambda) const {
        return u(lambda) - Homomorphism::identity(module_);
    }

    /// Generating set of endomorphisms: the u basis images and w.
    std::vector<Homomorphism> generator_images() const {
        std::vector<Homomorphism> g = u_basis_;
        g.push_back(w_);
        return g;
    }

private:
    friend RelationReport steinberg_verify(const GroupAction&);

    void build_caches() {
        const int64_t q = field_.size();
        u_.clear();
        u_.reserve(static_cast<size_t>(q));
        for (int64_t idx = 0; idx < q; ++idx) {
            FieldElement lam = field_.element_at(idx);
            Homomorphism img = Homomorphism::identity(module_);
            for (int i = 0; i < field_.degree(); ++i) {
                for (int64_t c = 0; c < lam.coeffs()[static_cast<size_t>(i)]; ++c)
                    img = img * u_basis_[static_cast<size_t>(i)];
            }
            u_.push_back(std::move(img));
        }
        t_.assign(static_cast<size_t>(q), Homomorphism::identity(module_));
        for (int64_t idx = 1; idx < q; ++idx) {
            FieldElement lam = field_.element_at(idx);
            FieldElement lam_inv = field_.inv(lam);
            const Homomorphism& ul = u_[static_cast<size_t>(idx)];
            const Homomorphism& uli = u(lam_inv);
            t_[static_cast<size_t>(idx)] = ul * w_ * uli * w_ * ul * w_;
        }
        i_ = t(field_.from_integer(-1));
    }

    Field field_;
    FinAbGroup module_;
    std::vector<Homomorphism> u_basis_;
    Homomorphism w_;
    std::vector<Homomorphism> u_, t_;
    Homomorphism i_;
    RelationReport report_;
};

/// Exhaustive check of the Steinberg relations over all scalar pairs.
inline RelationReport steinberg_verify(const GroupAction& a) {
    const Field& k = a.field();
    RelationReport r;
    const auto id = Homomorphism::identity(a.module());
    auto wit1 = [&](const FieldElement& x) { return "lambda=" + k.str(x); };
    auto wit2 = [&](const FieldElement& x, const FieldElement& y) {
        return "lambda=" + k.str(x) + ", mu=" + k.str(y);
    };

    r.check(a.u(k.zero()) == id, "u_0 = 1", "-");
    for (int64_t i = 0; i < k.size(); ++i) {
        FieldElement lam = k.element_at(i);
        for (int64_t j = 0; j < k.size(); ++j) {
            FieldElement mu = k.element_at(j);
            r.check(a.u(lam) * a.u(mu) == a.u(k.add(lam, mu)), "u_lambda u_mu = u_{lambda+mu}",
                    wit2(lam, mu));
            if (!lam.is_zero() && !mu.is_zero())
                r.check(a.t(lam) * a.t(mu) == a.t(k.mul(lam, mu)), "t_lambda t_mu = t_{lambda mu}",
                        wit2(lam, mu));
            if (!mu.is_zero())
                r.check(a.t(mu) * a.u(lam) == a.u(k.mul(lam, k.mul(mu, mu))) * a.t(mu),
                        "t_mu u_lambda t_mu^-1 = u_{lambda mu^2}", wit2(lam, mu));
        }
    }
    r.check(a.w() * a.w() == a.central_involution(), "w^2 = i", "-");
    r.check(a.t(k.one()) == id, "t_1 = 1", "-");
    for (int64_t i = 1; i < k.size(); ++i) {
        FieldElement lam = k.element_at(i);
        r.check(a.w() * a.t(lam) == a.t(k.inv(lam)) * a.w(), "w t_lambda w^-1 = t_{lambda^-1}",
                wit1(lam));
        const Homomorphism& ul = a.u(lam);
        Homomorphism word = ul * a.w() * a.u(k.inv(lam)) * a.w() * ul * a.w();
        r.check(word == a.t(lam), "u_lambda w u_{lambda^-1} w u_lambda w = t_lambda", wit1(lam));
    }
    Homomorphism uw = a.u(k.one()) * a.w();
    r.check(uw * uw * uw == id, "(uw)^3 = 1", "-");
    return r;
}

/// Verified action of the Lie ring sl2(K) on a finite abelian group.
class LieAction {
public:
    static LieAction from_generators(const Field& field, const FinAbGroup& module,
                                     std::vector<Homomorphism> x_basis_images,
                                     std::vector<Homomorphism> y_basis_images) {
        auto [action, report] = try_from_generators(field, module, std::move(x_basis_images),
                                                    std::move(y_basis_images));
        if (!action) throw ActionError("Lie action rejected: " + report.summary(), report);
        return *std::move(action);
    }

    static std::pair<std::optional<LieAction>, RelationReport> try_from_generators(
        const Field& field, const FinAbGroup& module, std::vector<Homomorphism> x_basis_images,
        std::vector<Homomorphism> y_basis_images) {
        LieAction a;
        a.field_ = field;
        a.module_ = module;
        a.x_basis_ = std::move(x_basis_images);
        a.y_basis_ = std::move(y_basis_images);

        RelationReport report;
        const size_t n = static_cast<size_t>(field.degree());
        if (a.x_basis_.size() != n || a.y_basis_.size() != n) {
            report.fail("generator count", "need one x and one y image per F_p-basis element");
            return {std::nullopt, report};
        }
        for (const auto* fam : {&a.x_basis_, &a.y_basis_})
            for (const Homomorphism& h : *fam)
                if (!(h.src() == module && h.dst() == module)) {
                    report.fail("generator shape", "basis image is not an endomorphism of V");
                    return {std::nullopt, report};
                }

        a.build_caches();
        report = lie_verify(a);
        a.report_ = report;
        if (!report.ok()) return {std::nullopt, report};
        return {std::move(a), report};
    }

    const Field& field() const { return field_; }
    const FinAbGroup& module() const { return module_; }
    const std::vector<Homomorphism>& x_basis() const { return x_basis_; }
    const std::vector<Homomorphism>& y_basis() const { return y_basis_; }
    const RelationReport& report() const { return report_; }

    const Homomorphism& x(const FieldElement& lambda) const {
        return x_[static_cast<size_t>(field_.index_of(lambda))];
    }
    const Homomorphism& y(const FieldElement& lambda) const {
        return y_[static_cast<size_t>(field_.index_of(lambda))];
    }
    const Homomorphism& h(const FieldElement& lambda) const {
        return h_[static_cast<size_t>(field_.index_of(lambda))];
    }
    const Homomorphism& x() const { return x(field_.one()); }
    const Homomorphism& y() const { return y(field_.one()); }
    const Homomorphism& h() const { return h(field_.one()); }

    /// Generating set of endomorphisms: the x and y basis images.
    std::vector<Homomorphism> generator_images() const {
        std::vector<Homomorphism> g = x_basis_;
        g.insert(g.end(), y_basis_.begin(), y_basis_.end());
        return g;
    }

private:
    void build_caches() {
        const int64_t q = field_.size();
        auto extend = [&](const std::vector<Homomorphism>& basis) {
            std::vector<Homomorphism> out;
            out.reserve(static_cast<size_t>(q));
            for (int64_t idx = 0; idx < q; ++idx) {
                FieldElement lam = field_.element_at(idx);
                Homomorphism img = Homomorphism::zero(module_, module_);
                for (int i = 0; i < field_.degree(); ++i)
                    img = img + basis[static_cast<size_t>(i)].scaled(
                                    lam.coeffs()[static_cast<size_t>(i)]);
                out.push_back(std::move(img));
            }
            return out;
        };
        x_ = extend(x_basis_);
        y_ = extend(y_basis_);
        const Homomorphism& y1 = y_[static_cast<size_t>(field_.index_of(field_.one()))];
        h_.clear();
        h_.reserve(static_cast<size_t>(q));
        for (int64_t idx = 0; idx < q; ++idx) {
            const Homomorphism& xl = x_[static_cast<size_t>(idx)];
            h_.push_back(xl * y1 - y1 * xl);
        }
    }

    Field field_;
    FinAbGroup module_;
    std::vector<Homomorphism> x_basis_, y_basis_;
    std::vector<Homomorphism> x_, y_, h_;
    RelationReport report_;
};

/// Exhaustive check of the sl2 bracket relations and scalar additivity.
inline RelationReport lie_verify(const LieAction& a) {
    const Field& k = a.field();
    RelationReport r;
    auto wit2 = [&](const FieldElement& x, const FieldElement& y) {
        return "lambda=" + k.str(x) + ", mu=" + k.str(y);
    };
    auto bracket = [](const Homomorphism& f, const Homomorphism& g) { return f * g - g * f; };

    for (int64_t i = 0; i < k.size(); ++i) {
        FieldElement lam = k.element_at(i);
        for (int64_t j = 0; j < k.size(); ++j) {
            FieldElement mu = k.element_at(j);
            FieldElement lm = k.mul(lam, mu);
            FieldElement sum = k.add(lam, mu);
            r.check(a.x(sum) == a.x(lam) + a.x(mu), "x_{lambda+mu} = x_lambda + x_mu",
                    wit2(lam, mu));
            r.check(a.y(sum) == a.y(lam) + a.y(mu), "y_{lambda+mu} = y_lambda + y_mu",
                    wit2(lam, mu));
            r.check(a.h(sum) == a.h(lam) + a.h(mu), "h_{lambda+mu} = h_lambda + h_mu",
                    wit2(lam, mu));
            r.check(bracket(a.h(lam), a.x(mu)) == a.x(lm).scaled(2), "[h_lambda, x_mu] = 2 x_{lambda mu}",
                    wit2(lam, mu));
            r.check(bracket(a.h(lam), a.y(mu)) == a.y(lm).scaled(-2),
                    "[h_lambda, y_mu] = -2 y_{lambda mu}", wit2(lam, mu));
            r.check(bracket(a.x(lam), a.y(mu)) == a.h(lm), "[x_lambda, y_mu] = h_{lambda mu}",
                    wit2(lam, mu));
        }
    }
    return r;
}

}  // namespace sl2var
