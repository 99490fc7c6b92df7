#include "doctest.h"

#include <string>

#include "json.hpp"
#include "ppi/errors.hpp"
#include "ppi/repro.hpp"

using namespace ppi;

TEST_SUITE("repro") {

TEST_CASE("all three worked examples replay clean") {
    for (const char* id : {"2.7", "3.5", "3.6"}) {
        const ReproResult r = repro(id);
        CHECK(r.example_id == id);
        CHECK(r.all_pass);
        CHECK(!r.checks.empty());
        for (const ReproCheck& c : r.checks) {
            INFO(r.example_id, " / ", c.name, ": ", c.computed, " vs ", c.expected);
            CHECK(c.pass);
        }
    }
}

TEST_CASE("id normalization") {
    CHECK(repro("example-2.7").example_id == "2.7");
    CHECK(repro("Example 3.5").example_id == "3.5");
    CHECK(repro(" 3.6 ").example_id == "3.6");
    CHECK_THROWS_AS(repro("2.8"), UnknownExample);
    CHECK_THROWS_AS(repro(""), UnknownExample);
}

TEST_CASE("replay is deterministic byte for byte") {
    const std::string once = repro_to_json(repro("3.5"));
    const std::string again = repro_to_json(repro("3.5"));
    CHECK(once == again);
}

TEST_CASE("report json parses with the expected keys") {
    const auto doc = nlohmann::json::parse(repro_to_json(repro("2.7")));
    CHECK(doc.at("example_id") == "2.7");
    CHECK(doc.at("all_pass") == true);
    REQUIRE(doc.at("checks").is_array());
    REQUIRE(!doc["checks"].empty());
    const auto& first = doc["checks"][0];
    CHECK(first.contains("name"));
    CHECK(first.contains("expected"));
    CHECK(first.contains("computed"));
    CHECK(first.contains("pass"));
}

}  // TEST_SUITE
