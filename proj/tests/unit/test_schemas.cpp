// Structural validation of emitted JSON against the shipped schemas:
// required keys present, primitive types as declared. Not a full JSON-Schema
// engine; nested schemas are checked one level down via "properties".

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "cubemax/construction.hpp"
#include "cubemax/measures.hpp"
#include "cubemax/oned.hpp"
#include "doctest.h"
#include "json.hpp"

namespace {

namespace fs = std::filesystem;
using nlohmann::json;

json load_json(const fs::path& p) {
    std::ifstream f(p);
    REQUIRE(f.good());
    return json::parse(f);
}

bool type_matches(const json& schema_type, const json& value) {
    auto one = [&value](const std::string& t) {
        if (t == "object") return value.is_object();
        if (t == "array") return value.is_array();
        if (t == "string") return value.is_string();
        if (t == "boolean") return value.is_boolean();
        if (t == "integer") return value.is_number_integer() || value.is_number_unsigned();
        if (t == "number") return value.is_number();
        if (t == "null") return value.is_null();
        return false;
    };
    if (schema_type.is_string()) {
        return one(schema_type.get<std::string>());
    }
    for (const auto& t : schema_type) {
        if (one(t.get<std::string>())) {
            return true;
        }
    }
    return false;
}

void check_against(const json& schema, const json& value) {
    if (schema.contains("required")) {
        for (const auto& key : schema.at("required")) {
            INFO("required key: ", key.get<std::string>());
            CHECK(value.contains(key.get<std::string>()));
        }
    }
    if (!schema.contains("properties")) {
        return;
    }
    for (const auto& [key, sub] : schema.at("properties").items()) {
        if (!value.contains(key)) {
            continue;
        }
        if (sub.contains("type")) {
            INFO("property: ", key);
            CHECK(type_matches(sub.at("type"), value.at(key)));
        }
    }
}

const fs::path kSchemas = fs::path(CUBEMAX_SOURCE_DIR) / "schemas";

}  // namespace

TEST_CASE("emitted JSON conforms to the shipped schemas") {
    using namespace cubemax;

    const DeltaMeasure m(2, {{{0.5, -1.0}, 2.0}});
    check_against(load_json(kSchemas / "delta_measure.schema.json"),
                  json::parse(m.to_json()));

    check_against(load_json(kSchemas / "lattice_window.schema.json"),
                  json::parse(make_window(3, -2, 7).to_json()));
    check_against(load_json(kSchemas / "lattice_window.schema.json"),
                  json::parse(infinite_lattice(2).to_json()));

    const OneDConfig cfg = make_oned_config({0.0, 1.0, 2.5}, "test");
    check_against(load_json(kSchemas / "oned_config.schema.json"), json::parse(cfg.to_json()));

    const BoundCertificate cert = assemble_certificate(
        100, 2.0, 0.125, 1000, Provenance::closed_form, Provenance::exact_binomial);
    check_against(load_json(kSchemas / "bound_certificate.schema.json"),
                  json::parse(cert.to_json()));
}
