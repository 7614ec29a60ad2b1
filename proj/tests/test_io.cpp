#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "ultraslow/io.hpp"

using namespace ultraslow;

namespace {
std::string config_error(const std::string& text) {
    try {
        config_from_json(text);
    } catch (const ConfigError& e) {
        return e.what();
    }
    return "";
}
}  // namespace

TEST_CASE("weight JSON round trip") {
    for (const auto& w : {Weight::constant(2.0), Weight::power_law(0.5, 1.5),
                          Weight::product(0.25, {1.0, 0.5}), Weight::tabulated({0.2, 1.0, 0.7}, 0.0)}) {
        const auto back = weight_from_json(json::parse(weight_to_json(w).dump()));
        CHECK(back.kind() == w.kind());
        CHECK(back.nu() == w.nu());
        for (double a : {0.0, 0.3, 0.77, 1.0}) CHECK(back(a) == w(a));
    }
}

TEST_CASE("config JSON round trip") {
    RunConfig c;
    c.weight = Weight::power_law(1.0, 1.0);
    c.dim = 3;
    c.lambdas = {-2.0, 0.5};
    c.initial = "one";
    c.fd.nt = 17;
    c.tol_scale = 2.0;
    c.out = "results";
    const auto back = config_from_json(config_to_json(c).dump());
    CHECK(config_to_json(back) == config_to_json(c));
    CHECK(config_from_json("{}").dim == 1);
}

TEST_CASE("config errors name the field") {
    CHECK(config_error("{\"dim\": 4}").find("config.dim") != std::string::npos);
    CHECK(config_error("{\"colour\": 1}").find("colour") != std::string::npos);
    CHECK(config_error("{\"weight\": {\"kind\": \"gaussian\"}}").find("weight.kind") != std::string::npos);
    CHECK(config_error("{\"weight\": {\"kind\": \"constant\", \"coeffs\": [-1]}}").find("weight") !=
          std::string::npos);
    CHECK(config_error("{\"t_grid\": {\"lo\": 0, \"hi\": 1, \"log\": true}}").find("t_grid") !=
          std::string::npos);
    CHECK(config_error("{\"fd\": {\"nx\": 2}}").find("config.fd") != std::string::npos);
    CHECK(config_error("{\"rtol\": \"small\"}").find("config.rtol") != std::string::npos);
    CHECK(config_error("{not json").find("config") != std::string::npos);
    CHECK_THROWS_AS(load_config("/nonexistent/config.json"), ConfigError);
}

TEST_CASE("grid points") {
    const auto lin = GridSpec{0.0, 1.0, 5, false}.points();
    CHECK(lin == std::vector<double>{0.0, 0.25, 0.5, 0.75, 1.0});
    const auto lg = GridSpec{1e-3, 1e3, 7, true}.points();
    CHECK(lg.front() == 1e-3);
    CHECK(lg.back() == 1e3);
    CHECK(lg[3] == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("CSV output round-trips at full precision") {
    const auto path = (std::filesystem::temp_directory_path() / "ultraslow_io_test.csv").string();
    const double v = 0.1 + 0.2;
    write_csv(path, {"a", "b"}, {{v, -1e-300}});
    std::ifstream in(path);
    std::string head, row;
    std::getline(in, head);
    std::getline(in, row);
    CHECK(head == "a,b");
    CHECK(std::stod(row.substr(0, row.find(','))) == v);
    CHECK(std::stod(row.substr(row.find(',') + 1)) == -1e-300);
    std::filesystem::remove(path);
}
