#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "sl2var/linearize.hpp"
#include "sl2var/zoo.hpp"

using namespace sl2var;

namespace {

GroupAction scrambled(const GroupAction& a, uint64_t seed) {
    std::mt19937_64 rng(seed);
    return conjugate(a, random_invertible(a.module(), rng));
}

}  // namespace

TEST_CASE("quadratic group modules linearize", "[linearize]") {
    Field f5 = Field::make(5, 1);
    GroupAction nat = natural_group_module(f5);

    SECTION("natural: one plane, no trivial part") {
        GroupLinearization lin = linearize_group_quadratic(nat);
        REQUIRE(lin.certificate.has_value());
        CHECK(lin.certificate->summands.size() == 1);
        CHECK(lin.certificate->trivial_part.is_trivial());
        CHECK(certificate_reconstructs(nat, *lin.certificate));
    }
    SECTION("Nat + Nat + trivial, scrambled") {
        GroupAction sum = direct_sum(std::vector<GroupAction>{
            nat, nat, trivial_group_module(FinAbGroup({5}), f5)});
        GroupAction conj = scrambled(sum, 2024);
        GroupLinearization lin = linearize_group_quadratic(conj);
        REQUIRE(lin.certificate.has_value());
        CHECK(lin.certificate->summands.size() == 2);
        CHECK(lin.certificate->trivial_part.order() == 5);
        CHECK(certificate_reconstructs(conj, *lin.certificate));
        // the conjugate certifies with the same shape as the original
        GroupLinearization orig = linearize_group_quadratic(sum);
        REQUIRE(orig.certificate.has_value());
        CHECK(orig.certificate->summands.size() == lin.certificate->summands.size());
        CHECK(orig.certificate->trivial_part.order() == lin.certificate->trivial_part.order());
    }
    SECTION("trivial action: no planes, everything trivial part") {
        GroupAction triv = trivial_group_module(FinAbGroup({5}), f5);
        GroupLinearization lin = linearize_group_quadratic(triv);
        REQUIRE(lin.certificate.has_value());
        CHECK(lin.certificate->summands.empty());
        CHECK(lin.certificate->trivial_part.is_full());
    }
    SECTION("gates") {
        CHECK(linearize_group_quadratic(natural_group_module(Field::make(2, 2))).report.status ==
              CheckStatus::HypothesisNotMet);
        CHECK(linearize_group_quadratic(natural_group_module(Field::make(3, 1))).report.status ==
              CheckStatus::HypothesisNotMet);
        CHECK(linearize_group_quadratic(steinberg_tensor(3)).report.status ==
              CheckStatus::HypothesisNotMet);  // length 5
    }
}

TEST_CASE("the central involution check", "[linearize]") {
    Field f5 = Field::make(5, 1);
    GroupAction nat = natural_group_module(f5);
    CHECK(check_involution_centralizer(nat).passed());  // C_V(i) = 0, vacuous
    GroupAction sum = direct_sum(std::vector<GroupAction>{
        nat, trivial_group_module(FinAbGroup({5}), f5)});
    CheckReport r = check_involution_centralizer(sum);
    CHECK(r.passed());
    CHECK(r.checked > 0);  // C_V(i) is the trivial summand, genuinely checked
    CHECK(check_involution_centralizer(natural_group_module(Field::make(7, 1))).passed());
}

TEST_CASE("centralizer coherence", "[linearize]") {
    CHECK(check_centralizer_coherence(natural_group_module(Field::make(5, 1))).passed());
    CHECK(check_centralizer_coherence(natural_group_module(Field::make(7, 1))).passed());
    Field f5 = Field::make(5, 1);
    GroupAction sum = direct_sum(std::vector<GroupAction>{
        natural_group_module(f5), trivial_group_module(FinAbGroup({5}), f5)});
    CHECK(check_centralizer_coherence(sum).status == CheckStatus::HypothesisNotMet);
}

TEST_CASE("length bounds", "[linearize]") {
    Field f5 = Field::make(5, 1);
    GroupAction nat5 = natural_group_module(f5);
    GroupAction nat7 = natural_group_module(Field::make(7, 1));

    SECTION("odd power bound") {
        CHECK(check_odd_power_bound(nat5, 2).passed());
        CHECK(check_odd_power_bound(steinberg_tensor(3), 3).passed());  // delta_lambda^5 = 0
        CHECK(check_odd_power_bound(trivial_group_module(FinAbGroup({7}), f5), 1).passed());
        CHECK(check_odd_power_bound(nat5, 1).status == CheckStatus::HypothesisNotMet);
    }
    SECTION("square multiple bound") {
        CHECK(check_square_multiple_bound(nat5, 2).passed());
        CHECK(check_square_multiple_bound(steinberg_tensor(2), 2).passed());
        CHECK(check_square_multiple_bound(nat7, 2).passed());
        // F9 genuinely fails the hypothesis: prime-field scalars are squares
        CHECK(check_square_multiple_bound(natural_group_module(Field::make(3, 2)), 2).status ==
              CheckStatus::HypothesisNotMet);
    }
    SECTION("scalarwise bound") {
        CHECK(check_scalarwise_length_bound(nat5, 2).passed());
        CHECK(check_scalarwise_length_bound(nat7, 2).passed());
        // exponent-2 module is not 2!-torsion-free
        CHECK(check_scalarwise_length_bound(steinberg_tensor(2), 2).status ==
              CheckStatus::HypothesisNotMet);
    }
}

TEST_CASE("the determinant closed form", "[linearize]") {
    VandermondeCheck v2 = vandermonde_det_check(2);
    CHECK(v2.det == 2);
    CHECK(v2.formula == 2);
    VandermondeCheck v3 = vandermonde_det_check(3);
    CHECK(v3.det == -18);
    CHECK(v3.formula == 18);
    CHECK(v3.equal_up_to_sign);
    VandermondeCheck v4 = vandermonde_det_check(4);
    CHECK(abs(v4.det) == v4.formula);
    for (size_t n = 2; n <= 12; ++n) CHECK(vandermonde_det_check(n).equal_up_to_sign);
    CHECK_THROWS_AS(vandermonde_det_check(1), std::invalid_argument);
    CHECK_THROWS_AS(vandermonde_det_check(13), std::invalid_argument);
}

TEST_CASE("single quadratic element", "[linearize]") {
    Field f5 = Field::make(5, 1);
    GroupAction nat = scrambled(natural_group_module(f5), 77);
    GroupLinearization lin = single_element_quadratic(nat);
    CHECK(lin.report.passed());
    REQUIRE(lin.certificate.has_value());
    CHECK(lin.certificate->summands.size() == 1);

    Field f7 = Field::make(7, 1);
    GroupAction sum = direct_sum(std::vector<GroupAction>{
        natural_group_module(f7), trivial_group_module(FinAbGroup({7}), f7)});
    GroupLinearization lin2 = single_element_quadratic(sum);
    REQUIRE(lin2.certificate.has_value());
    CHECK(lin2.certificate->summands.size() == 1);
    CHECK(lin2.certificate->trivial_part.order() == 7);

    GroupLinearization gated = single_element_quadratic(natural_group_module(Field::make(3, 2)));
    CHECK(gated.report.status == CheckStatus::HypothesisNotMet);
    REQUIRE_FALSE(gated.report.notes.empty());
    CHECK(gated.report.notes[0].find("open case") != std::string::npos);
}

TEST_CASE("deriving the Lie action from the group action", "[linearize]") {
    for (int64_t p : {5, 7}) {
        Field f = Field::make(p, 1);
        DerivedLieAction d = derive_lie_action(natural_group_module(f));
        REQUIRE(d.action.has_value());
        CHECK(d.report.passed());
        CHECK(d.action->x().matrix() == IntMatrix::from_rows({{0, 1}, {0, 0}}));
        CHECK(d.action->y().matrix() == IntMatrix::from_rows({{0, 0}, {1, 0}}));
        IntMatrix h(2, 2);
        h.at(0, 0) = 1;
        h.at(1, 1) = p - 1;
        CHECK(d.action->h().matrix() == h);
    }
    Field f5 = Field::make(5, 1);
    GroupAction nn = direct_sum(std::vector<GroupAction>{natural_group_module(f5),
                                                          natural_group_module(f5)});
    CHECK(derive_lie_action(nn).report.status == CheckStatus::HypothesisNotMet);
}

TEST_CASE("lie quadratic propagation", "[linearize]") {
    Field f5 = Field::make(5, 1);
    LieAction nat = natural_lie_module(f5);
    CheckReport r = lie_quadratic_propagation(nat);
    CHECK(r.passed());
    CHECK(kernel(nat.x()) ==
          Subgroup::from_generators(nat.module(), {GroupElement(nat.module(), {1, 0})}));

    LieAction basic = char3_basic_counterexample();
    CHECK(lie_quadratic_propagation(basic).passed());
    // ker x_lambda = <e0, e1> for every lambda != 0
    Subgroup kx = kernel(basic.x());
    CHECK(kx.order() == 9);
    CHECK(lie_quadratic_propagation(natural_lie_module(Field::make(7, 1))).passed());
}

TEST_CASE("lie linearization", "[linearize]") {
    Field f5 = Field::make(5, 1);
    SECTION("natural over F5") {
        LieAction nat = natural_lie_module(f5);
        LieLinearization lin = linearize_lie_quadratic(nat);
        REQUIRE(lin.certificate.has_value());
        CHECK(lin.certificate->summands.size() == 1);
        CHECK(lin.certificate->trivial_part.is_trivial());
        CHECK(certificate_reconstructs(nat, *lin.certificate));
        CHECK(lin.certificate->summands[0].partner == nat.y()(lin.certificate->summands[0].a));
    }
    SECTION("Nat + trivial over F7, scrambled") {
        Field f7 = Field::make(7, 1);
        LieAction sum = direct_sum(std::vector<LieAction>{
            natural_lie_module(f7), trivial_lie_module(FinAbGroup({7}), f7)});
        std::mt19937_64 rng(3);
        LieAction conj = conjugate(sum, random_invertible(sum.module(), rng));
        LieLinearization lin = linearize_lie_quadratic(conj);
        REQUIRE(lin.certificate.has_value());
        CHECK(lin.certificate->summands.size() == 1);
        CHECK(lin.certificate->trivial_part.order() == 7);
        CHECK(lin.certificate->trivial_part == kernel(conj.h()));
        CHECK(certificate_reconstructs(conj, *lin.certificate));
    }
    SECTION("characteristic 3 is gated with the honest obstruction") {
        LieLinearization lin = linearize_lie_quadratic(char3_basic_counterexample());
        CHECK(lin.report.status == CheckStatus::HypothesisNotMet);
        bool mentions = false;
        for (const std::string& n : lin.report.notes)
            mentions = mentions || n.find("E_0") != std::string::npos;
        CHECK(mentions);
    }
}

TEST_CASE("char3 partial structure", "[linearize]") {
    LieAction basic = char3_basic_counterexample();
    Char3Partial part = char3_partial_structure(basic);
    CHECK(part.issued);
    CHECK(part.report.passed());
    CHECK_FALSE(part.y_linear_on_e_minus1);
    CHECK(part.e_zero.order() == 3);

    Field f9 = Field::make(3, 2);
    Char3Partial sig = char3_partial_structure(char3_sigma_module(f9, sigma_frobenius(f9)));
    CHECK(sig.issued);
    // (y^3)|E_0 = sigma, expressed in the canonical E_0 coordinates
    CHECK(sig.y_cubed_on_e0 == sigma_frobenius(f9));

    Char3Partial nat9 = char3_partial_structure(natural_lie_module(f9));
    CHECK(nat9.issued);
    CHECK(nat9.y_linear_on_e_minus1);  // E_0 = 0 makes y linear everywhere
    CHECK(nat9.e_zero.is_trivial());

    CHECK(char3_partial_structure(natural_lie_module(Field::make(5, 1))).report.status ==
          CheckStatus::HypothesisNotMet);
}

TEST_CASE("char3 biquadratic decomposition", "[linearize]") {
    Field f9 = Field::make(3, 2);
    LieLinearization nat9 = char3_biquadratic(natural_lie_module(f9));
    REQUIRE(nat9.certificate.has_value());
    CHECK(nat9.certificate->summands.size() == 1);
    CHECK(nat9.certificate->trivial_part.is_trivial());

    Field f3 = Field::make(3, 1);
    LieAction sum = direct_sum(std::vector<LieAction>{
        natural_lie_module(f3), trivial_lie_module(FinAbGroup({3}), f3)});
    LieLinearization mixed = char3_biquadratic(sum);
    REQUIRE(mixed.certificate.has_value());
    CHECK(mixed.certificate->summands.size() == 1);
    CHECK(mixed.certificate->trivial_part.order() == 3);

    LieLinearization rejected = char3_biquadratic(char3_basic_counterexample());
    CHECK(rejected.report.status == CheckStatus::HypothesisNotMet);
    REQUIRE_FALSE(rejected.report.notes.empty());
    CHECK(rejected.report.notes[0].find("y^2") != std::string::npos);
}

TEST_CASE("functoriality of the recovered scalars", "[linearize]") {
    Field f5 = Field::make(5, 1);
    GroupAction nat = natural_group_module(f5);
    GroupAction sum = direct_sum(std::vector<GroupAction>{nat, nat});
    GroupLinearization c1 = linearize_group_quadratic(nat);
    GroupLinearization c2 = linearize_group_quadratic(sum);
    REQUIRE(c1.certificate.has_value());
    REQUIRE(c2.certificate.has_value());

    SECTION("identity map") {
        CheckReport r = functoriality_check(nat, *c1.certificate, nat, *c1.certificate,
                                            Homomorphism::identity(nat.module()));
        CHECK(r.passed());
    }
    SECTION("inclusion of a summand") {
        IntMatrix incl(4, 2);
        incl.at(0, 0) = 1;
        incl.at(1, 1) = 1;
        Homomorphism phi(nat.module(), sum.module(), std::move(incl));
        CheckReport r = functoriality_check(nat, *c1.certificate, sum, *c2.certificate, phi);
        CHECK(r.passed());
    }
    SECTION("projection onto a summand") {
        IntMatrix proj(2, 4);
        proj.at(0, 0) = 1;
        proj.at(1, 1) = 1;
        Homomorphism phi(sum.module(), nat.module(), std::move(proj));
        CheckReport r = functoriality_check(sum, *c2.certificate, nat, *c1.certificate, phi);
        CHECK(r.passed());
    }
    SECTION("a non-equivariant map is refused") {
        IntMatrix skew(2, 2);
        skew.at(0, 1) = 1;
        Homomorphism phi(nat.module(), nat.module(), std::move(skew));
        CheckReport r = functoriality_check(nat, *c1.certificate, nat, *c1.certificate, phi);
        CHECK(r.status == CheckStatus::HypothesisNotMet);
    }
}
