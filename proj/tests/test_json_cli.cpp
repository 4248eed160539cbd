#include <catch2/catch_amalgamated.hpp>

#include "sl2var/json_io.hpp"
#include "sl2var/zoo.hpp"

using namespace sl2var;

TEST_CASE("field and group serialization shapes", "[json]") {
    Field f9 = Field::make(3, 2);
    Json j = to_json(f9);
    CHECK(j["p"] == 3);
    CHECK(j["n"] == 2);
    CHECK(j["modulus"] == Json::array({1, 0, 1}));
    CHECK(field_from_json(j) == f9);
    // a non-canonical modulus is rejected on load
    Json bad = j;
    bad["modulus"] = Json::array({2, 2, 1});
    CHECK_THROWS_AS(field_from_json(bad), FieldError);

    FinAbGroup g({2, 4});
    CHECK(to_json(g)["orders"] == Json::array({2, 4}));
    CHECK(group_from_json(to_json(g)) == g);
    CHECK(to_json(GroupElement(g, {1, 3}))["coords"] == Json::array({1, 3}));
}

TEST_CASE("action files round trip byte for byte", "[json]") {
    for (const std::string& dump : {
             canonical_dump(action_to_json(natural_group_module(Field::make(5, 1)))),
             canonical_dump(action_to_json(natural_lie_module(Field::make(3, 2)))),
             canonical_dump(action_to_json(char3_basic_counterexample())),
             canonical_dump(action_to_json(steinberg_tensor(2))),
         }) {
        Json parsed = Json::parse(dump);
        LoadedAction act = action_from_json(parsed);
        std::string again = act.is_group() ? canonical_dump(action_to_json(*act.group))
                                           : canonical_dump(action_to_json(*act.lie));
        CHECK(again == dump);
    }
}

TEST_CASE("loading re-verifies the relations", "[json]") {
    Json j = action_to_json(natural_group_module(Field::make(5, 1)));
    j["w"] = to_json(IntMatrix::identity(2));  // break the action
    CHECK_THROWS_AS(action_from_json(j), ActionError);
    j["kind"] = "ring";
    CHECK_THROWS_AS(action_from_json(j), JsonError);
}

TEST_CASE("certificates round trip byte for byte", "[json]") {
    Field f5 = Field::make(5, 1);
    GroupAction sum = direct_sum(std::vector<GroupAction>{
        natural_group_module(f5), trivial_group_module(FinAbGroup({5}), f5)});
    GroupLinearization lin = linearize_group_quadratic(sum);
    REQUIRE(lin.certificate.has_value());
    std::string dump = canonical_dump(to_json(*lin.certificate));
    CertificateFile parsed = certificate_from_json(Json::parse(dump));
    CHECK(canonical_dump(to_json(parsed)) == dump);
    CHECK(parsed.kind == "group");
    CHECK(parsed.summands.size() == 1);
    CHECK(parsed.trivial_basis.size() == 1);

    LieLinearization llin = linearize_lie_quadratic(natural_lie_module(f5));
    REQUIRE(llin.certificate.has_value());
    std::string ldump = canonical_dump(to_json(*llin.certificate));
    CHECK(canonical_dump(to_json(certificate_from_json(Json::parse(ldump)))) == ldump);
}

TEST_CASE("reports and chains serialize with canonical keys", "[json]") {
    Field f5 = Field::make(5, 1);
    GroupAction nat = natural_group_module(f5);
    Json lc = to_json(u_length(nat));
    CHECK(lc["length"] == 2);
    CHECK(lc["chain"].size() == 3);
    CHECK(lc["chain"][0] == Json::array());  // Z_0 = 0 has an empty basis

    CheckReport r = check_centralizer_coherence(nat);
    Json rj = to_json(r);
    CHECK(rj["check"] == "centralizer-coherence");
    CHECK(rj["status"] == "pass");

    Json pj = to_json(pbw_normalize(FreeWord::x() * FreeWord::y()));
    REQUIRE(pj["terms"].size() == 2);
    CHECK(pj["terms"][0]["h"] == 1);
    CHECK(pj["terms"][0]["coeff"] == 1);
}

TEST_CASE("identical inputs give identical bytes", "[json]") {
    auto once = canonical_dump(action_to_json(steinberg_tensor(3)));
    auto twice = canonical_dump(action_to_json(steinberg_tensor(3)));
    CHECK(once == twice);
}
