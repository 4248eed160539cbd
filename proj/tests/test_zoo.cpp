#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <random>

#include "sl2var/module_ops.hpp"
#include "sl2var/zoo.hpp"

using namespace sl2var;

TEST_CASE("natural modules take the standard shapes", "[zoo]") {
    Field f5 = Field::make(5, 1);
    GroupAction nat = natural_group_module(f5);
    CHECK(nat.u_basis()[0].matrix() == IntMatrix::from_rows({{1, 1}, {0, 1}}));
    CHECK(nat.w().matrix() == IntMatrix::from_rows({{0, 1}, {4, 0}}));

    // F9: four generators over Z/3 with the multiplication-by-t structure
    Field f9 = Field::make(3, 2);
    LieAction lnat9 = natural_lie_module(f9);
    CHECK(lnat9.module() == FinAbGroup({3, 3, 3, 3}));
    // x_t on coefficients: the upper-right block is multiplication by t,
    // and t^2 = -1 for the canonical modulus
    CHECK(lnat9.x_basis()[1].matrix() ==
          IntMatrix::from_rows({{0, 0, 0, 2}, {0, 0, 1, 0}, {0, 0, 0, 0}, {0, 0, 0, 0}}));

    LieAction lnat7 = natural_lie_module(Field::make(7, 1));
    CHECK(lnat7.h().matrix() == IntMatrix::from_rows({{1, 0}, {0, 6}}));
}

TEST_CASE("trivial modules, including the trivial group", "[zoo]") {
    Field f5 = Field::make(5, 1);
    GroupAction t1 = trivial_group_module(FinAbGroup({5}), f5);
    for (int64_t i = 0; i < 5; ++i) CHECK(t1.u(f5.element_at(i)).is_identity());
    LieAction t2 = trivial_lie_module(FinAbGroup({9}), Field::make(3, 1));
    CHECK(t2.x().is_zero());
    GroupAction empty = trivial_group_module(FinAbGroup(), f5);
    CHECK(empty.module().rank() == 0);
}

TEST_CASE("direct sums re-verify and canonicalize mixed orders", "[zoo]") {
    Field f5 = Field::make(5, 1);
    GroupAction nat = natural_group_module(f5);
    GroupAction sum = direct_sum(std::vector<GroupAction>{nat, nat});
    CHECK(sum.module() == FinAbGroup({5, 5, 5, 5}));
    CHECK(*u_length(sum).length == 2);

    // trivial part with an order that is not coprime-chained with 5
    GroupAction t6 = trivial_group_module(FinAbGroup({6}), f5);
    GroupAction mixed = direct_sum(std::vector<GroupAction>{nat, t6});
    CHECK(mixed.module() == FinAbGroup({5, 30}));
    CHECK(steinberg_verify(mixed).ok());
    CHECK(*u_length(mixed).length == 2);
}

TEST_CASE("conjugation preserves the invariants", "[zoo]") {
    Field f7 = Field::make(7, 1);
    GroupAction nat = natural_group_module(f7);
    GroupAction sum = direct_sum(std::vector<GroupAction>{
        nat, trivial_group_module(FinAbGroup({7}), f7)});
    std::mt19937_64 rng(101);
    GroupAction conj = conjugate(sum, random_invertible(sum.module(), rng));
    CHECK(u_length(conj).length == u_length(sum).length);
    CHECK(is_quadratic_element(conj, f7.one()) == is_quadratic_element(sum, f7.one()));
    CHECK(simplicity_test(conj) == simplicity_test(sum));
    CHECK_THROWS_AS(conjugate(sum, Homomorphism::zero(sum.module(), sum.module())), ActionError);
}

TEST_CASE("frobenius twists reindex the same endomorphism set", "[zoo]") {
    Field f9 = Field::make(3, 2);
    GroupAction nat = natural_group_module(f9);
    GroupAction tw = twist(nat, 1);
    CHECK(tw.u_basis()[1] != nat.u_basis()[1]);  // t goes to t^3
    auto key = [](const Homomorphism& h) { return h.matrix().str(); };
    std::vector<std::string> a, b;
    for (int64_t i = 0; i < f9.size(); ++i) {
        a.push_back(key(nat.u(f9.element_at(i))));
        b.push_back(key(tw.u(f9.element_at(i))));
    }
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    CHECK(a == b);
    CHECK(twist(tw, 1).u_basis() == nat.u_basis());  // frobenius squared is the identity on F9
}

TEST_CASE("steinberg tensor modules", "[zoo]") {
    GroupAction st4 = steinberg_tensor(2);
    CHECK(st4.module() == FinAbGroup(std::vector<int64_t>(8, 2)));
    for (int64_t i = 1; i < 4; ++i) {
        Homomorphism d = st4.delta(st4.field().element_at(i));
        CHECK((d * d).is_zero());
    }
    CHECK(*u_length(st4).length == 3);

    GroupAction st9 = steinberg_tensor(3);
    CHECK(st9.module() == FinAbGroup(std::vector<int64_t>(18, 3)));
    for (int64_t i = 1; i < 9; ++i) {
        Homomorphism d = st9.delta(st9.field().element_at(i));
        CHECK((d * d * d).is_zero());
        CHECK_FALSE((d * d).is_zero());
    }
    CHECK(*u_length(st9).length == 5);

    CHECK_THROWS_AS(steinberg_tensor(5), ActionError);
}

TEST_CASE("characteristic-3 basic counterexample", "[zoo]") {
    LieAction basic = char3_basic_counterexample();
    IntMatrix x = basic.x().matrix();
    size_t nonzero = 0;
    for (size_t i = 0; i < 3; ++i)
        for (size_t j = 0; j < 3; ++j)
            if (x.at(i, j) != 0) ++nonzero;
    CHECK(nonzero == 1);
    CHECK(x.at(2, 0) == 1);  // e2 -> e1 on the basis (e2, e0, e1)
    CHECK((basic.y() * basic.y() * basic.y()).is_identity());
    CHECK(basic.h().matrix() == IntMatrix::from_rows({{2, 0, 0}, {0, 0, 0}, {0, 0, 1}}));
}

TEST_CASE("sigma modules across the three standard choices", "[zoo]") {
    Field f9 = Field::make(3, 2);

    SECTION("frobenius: simple, with a 3-element fixed field") {
        LieAction sig = char3_sigma_module(f9, sigma_frobenius(f9));
        CHECK(simplicity_test(sig));
        CHECK((sig.x() * sig.x()).is_zero());
        FinAbGroup kgrp({3, 3});
        Homomorphism fixed(kgrp, kgrp, sigma_frobenius(f9) - IntMatrix::identity(2), false);
        CHECK(kernel(fixed).order() == 3);
    }
    SECTION("zero: E_0 degenerates, the reconstructable part misses it") {
        LieAction sig = char3_sigma_module(f9, sigma_zero(f9));
        CHECK_FALSE(simplicity_test(sig));
        Subgroup closure = Subgroup::trivial(sig.module());
        {
            // orbit closure of (1)_{-1}
            GroupElement seed = char3_weight_element(f9, -1, f9.one());
            closure = Subgroup::from_generators(sig.module(), {seed});
            while (true) {
                Subgroup bigger = closure;
                for (const Homomorphism& g : sig.generator_images())
                    bigger = bigger.sum(image_of(g, closure));
                if (bigger == closure) break;
                closure = bigger;
            }
        }
        CHECK(closure.order() == 81);  // E_{-1} + E_1, nothing in E_0
        CHECK(closure.intersect(weight_space(sig, 0)).is_trivial());
    }
    SECTION("trace: image is only F_3, the cardinality obstruction") {
        LieAction sig = char3_sigma_module(f9, sigma_trace(f9));
        GroupElement seed = char3_weight_element(f9, -1, f9.one());
        Subgroup closure = Subgroup::from_generators(sig.module(), {seed});
        while (true) {
            Subgroup bigger = closure;
            for (const Homomorphism& g : sig.generator_images())
                bigger = bigger.sum(image_of(g, closure));
            if (bigger == closure) break;
            closure = bigger;
        }
        CHECK(closure.order() == 3 * 81);  // E_{-1} + (im sigma)_0 + E_1
        CHECK(closure.intersect(weight_space(sig, 0)).order() == 3);
    }
}

TEST_CASE("sigma module shape checks", "[zoo]") {
    Field f3 = Field::make(3, 1);
    CHECK_THROWS_AS(char3_sigma_module(Field::make(5, 1), IntMatrix(1, 1)), ActionError);
    CHECK_THROWS_AS(char3_sigma_module(f3, IntMatrix(2, 2)), ActionError);
    // over F3 with sigma = id the module is simple
    IntMatrix id1 = IntMatrix::identity(1);
    LieAction sig = char3_sigma_module(f3, id1);
    CHECK(simplicity_test(sig));
}
