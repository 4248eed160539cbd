#include <catch2/catch_amalgamated.hpp>

#include "sl2var/fields.hpp"

using namespace sl2var;

namespace {

// independent oracle: first monic irreducible of degree n over F_p in
// lexicographic coefficient order, irreducibility by brute root/divisor
// search on the coefficient tuples directly
std::vector<int64_t> oracle_modulus_deg2(int64_t p) {
    for (int64_t c0 = 0; c0 < p; ++c0)
        for (int64_t c1 = 0; c1 < p; ++c1) {
            bool has_root = false;
            for (int64_t x = 0; x < p && !has_root; ++x)
                has_root = (x * x + c1 * x + c0) % p == 0;
            if (!has_root) return {c0, c1, 1};
        }
    FAIL("no irreducible found");
    return {};
}

}  // namespace

TEST_CASE("canonical fields match the enumeration oracle", "[fields]") {
    CHECK(Field::make(5, 1).modulus() == std::vector<int64_t>{0, 1});  // plain t
    CHECK(Field::make(3, 2).modulus() == oracle_modulus_deg2(3));
    CHECK(Field::make(2, 2).modulus() == oracle_modulus_deg2(2));
    CHECK(Field::make(3, 2).modulus() == std::vector<int64_t>{1, 0, 1});      // t^2 + 1
    CHECK(Field::make(2, 2).modulus() == std::vector<int64_t>{1, 1, 1});      // t^2 + t + 1
    CHECK(Field::make(5, 2).modulus() == oracle_modulus_deg2(5));
    CHECK(Field::make(7, 2).modulus() == oracle_modulus_deg2(7));
}

TEST_CASE("field_make rejects bad shapes", "[fields]") {
    CHECK_THROWS_AS(Field::make(6, 1), FieldError);
    CHECK_THROWS_AS(Field::make(1, 1), FieldError);
    CHECK_THROWS_AS(Field::make(5, 0), FieldError);
    CHECK_THROWS_AS(Field::make(2, 20), FieldError);  // above the size bound
    // a non-canonical modulus is refused even if irreducible
    CHECK_THROWS_AS(Field::make(3, 2, {2, 2, 1}), FieldError);
    CHECK_NOTHROW(Field::make(3, 2, {1, 0, 1}));
}

TEST_CASE("basic arithmetic values", "[fields]") {
    Field f5 = Field::make(5, 1);
    CHECK(f5.inv(f5.from_integer(2)) == f5.from_integer(3));
    CHECK_THROWS_AS(f5.inv(f5.zero()), FieldError);
    Field f9 = Field::make(3, 2);
    CHECK_THROWS_AS(f9.inv(f9.zero()), FieldError);

    auto w = f5.int_multiple_of_square(f5.from_integer(2));
    REQUIRE(w.has_value());
    CHECK(w->first == 2);
    CHECK(w->second == f5.one());

    // enumeration round trip
    for (int64_t i = 0; i < f9.size(); ++i) CHECK(f9.index_of(f9.element_at(i)) == i);
}

TEST_CASE("field axioms hold exhaustively on small fields", "[fields]") {
    for (auto [p, n] : {std::pair<int64_t, int>{2, 1}, {3, 1}, {5, 1}, {7, 1},
                        {2, 2}, {3, 2}, {2, 3}, {5, 2}, {3, 3}}) {
        Field f = Field::make(p, n);
        INFO("field " << p << "^" << n);
        const auto elems = f.elements();
        for (const auto& a : elems)
            for (const auto& b : elems) {
                CHECK(f.add(a, b) == f.add(b, a));
                CHECK(f.mul(a, b) == f.mul(b, a));
                if (!a.is_zero()) CHECK(f.mul(a, f.inv(a)) == f.one());
            }
        for (const auto& a : elems)
            for (const auto& b : elems)
                for (const auto& c : elems) {
                    CHECK(f.mul(a, f.add(b, c)) == f.add(f.mul(a, b), f.mul(a, c)));
                    CHECK(f.mul(f.mul(a, b), c) == f.mul(a, f.mul(b, c)));
                }
    }
}

TEST_CASE("odd characteristic: every element is a difference of two squares", "[fields]") {
    for (auto [p, n] : {std::pair<int64_t, int>{3, 1}, {5, 1}, {7, 1}, {3, 2}, {5, 2}, {3, 4}}) {
        Field f = Field::make(p, n);
        INFO("field " << p << "^" << n);
        for (const auto& a : f.elements()) {
            bool found = false;
            for (int64_t i = 0; i < f.size() && !found; ++i)
                for (int64_t j = 0; j < f.size() && !found; ++j) {
                    FieldElement mu = f.element_at(i), nu = f.element_at(j);
                    found = f.sub(f.mul(mu, mu), f.mul(nu, nu)) == a;
                }
            CHECK(found);
        }
    }
}

TEST_CASE("integer multiples of squares cover exactly the right fields", "[fields]") {
    // prime fields and char 2: always; even-degree extensions of odd primes:
    // the prime-field scalars are all squares, so non-squares are missed
    for (const auto& a : Field::make(7, 1).elements())
        CHECK(Field::make(7, 1).int_multiple_of_square(a).has_value());
    for (const auto& a : Field::make(2, 2).elements())
        CHECK(Field::make(2, 2).int_multiple_of_square(a).has_value());
    Field f9 = Field::make(3, 2);
    bool all = true;
    for (const auto& a : f9.elements()) all = all && f9.int_multiple_of_square(a).has_value();
    CHECK_FALSE(all);
    // witnesses are honest when they exist
    for (const auto& a : f9.elements()) {
        auto w = f9.int_multiple_of_square(a);
        if (w) CHECK(f9.mul(f9.from_integer(w->first), f9.mul(w->second, w->second)) == a);
    }
}

TEST_CASE("frobenius is a field automorphism fixing the prime field", "[fields]") {
    Field f9 = Field::make(3, 2);
    for (const auto& a : f9.elements())
        for (const auto& b : f9.elements()) {
            CHECK(f9.frobenius(f9.add(a, b)) == f9.add(f9.frobenius(a), f9.frobenius(b)));
            CHECK(f9.frobenius(f9.mul(a, b)) == f9.mul(f9.frobenius(a), f9.frobenius(b)));
        }
    for (int64_t c = 0; c < 3; ++c) CHECK(f9.frobenius(f9.from_integer(c)) == f9.from_integer(c));
    CHECK(f9.frobenius(f9.basis(1)) != f9.basis(1));
    CHECK(f9.frobenius(f9.frobenius(f9.basis(1))) == f9.basis(1));
}
