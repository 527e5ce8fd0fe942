#include "doctest.h"

#include <filesystem>
#include <fstream>

#include "stringmass/config_io.hpp"
#include "stringmass/error.hpp"
#include "support.hpp"

using namespace stringmass;

namespace {

std::string config_dir() { return std::string(STRINGMASS_SOURCE_DIR) + "/configs/"; }

bool throws_config_error(const std::string& text, const std::string& needle)
{
    try {
        parse_config(text, "doc");
    } catch (const ConfigError& e) {
        return std::string(e.what()).find(needle) != std::string::npos;
    }
    return false;
}

} // namespace

TEST_CASE("shipped default matches the reference configuration")
{
    const SystemConfig a = load_config(config_dir() + "default.json");
    const SystemConfig b = testsupport::default_config();
    CHECK(a.mass() == b.mass());
    CHECK(a.gamma1() == doctest::Approx(b.gamma1()).epsilon(1e-14));
    CHECK(a.gamma2() == doctest::Approx(b.gamma2()).epsilon(1e-14));
    for (double x : {-0.9, -0.4, -0.1}) {
        CHECK(a.left().rho.value(x) == b.left().rho.value(x));
        CHECK(a.left().sigma.value(x) == b.left().sigma.value(x));
    }
    for (double x : {0.1, 0.5, 0.95}) {
        CHECK(a.right().rho.value(x) == b.right().rho.value(x));
        CHECK(a.right().sigma.value(x) == b.right().sigma.value(x));
        CHECK(a.right().q.value(x) == b.right().q.value(x));
    }
}

TEST_CASE("unit and sampled configurations load")
{
    const SystemConfig u = load_config(config_dir() + "unit_symmetric.json");
    CHECK(u.gamma1() == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(u.gamma2() == doctest::Approx(1.0).epsilon(1e-12));
    const SystemConfig s = load_config(config_dir() + "sampled.json");
    CHECK(s.left().rho.kind() == ProfileKind::Samples);
    CHECK(s.left().rho.value(-0.5) == doctest::Approx(1.25));
    CHECK(s.left().q.value(-0.5) == 0.0);
    CHECK(s.mass() == 0.5);
}

TEST_CASE("missing file names the path")
{
    try {
        load_config("/nonexistent/config.json");
        FAIL("expected ConfigError");
    } catch (const ConfigError& e) {
        CHECK(std::string(e.what()).find("/nonexistent/config.json") != std::string::npos);
    }
}

TEST_CASE("malformed documents are configuration errors")
{
    const std::string side = R"({"rho":{"kind":"constant","value":1},"sigma":{"kind":"constant","value":1}})";
    CHECK(throws_config_error("{", "parse"));
    CHECK(throws_config_error("[]", "expected a JSON object"));
    CHECK(throws_config_error(R"({"left":)" + side + R"(,"right":)" + side + "}", "missing 'mass'"));
    CHECK(throws_config_error(R"({"mass":1,"left":)" + side + "}", "right"));
    CHECK(throws_config_error(R"({"mass":1,"extra":2,"left":)" + side + R"(,"right":)" + side + "}", "extra"));
    CHECK(throws_config_error(
        R"({"mass":1,"left":{"rho":{"kind":"spline"},"sigma":{"kind":"constant","value":1}},"right":)" + side + "}",
        "spline"));
    CHECK(throws_config_error(
        R"({"mass":1,"left":{"rho":{"kind":"constant","value":-1},"sigma":{"kind":"constant","value":1}},"right":)"
            + side + "}",
        "left"));
    CHECK(throws_config_error(
        R"({"mass":1,"left":{"rho":{"kind":"poly","coeffs":["a"]},"sigma":{"kind":"constant","value":1}},"right":)"
            + side + "}",
        "left.rho.coeffs"));
    CHECK(throws_config_error(R"({"mass":-1,"left":)" + side + R"(,"right":)" + side + "}", "mass"));
    CHECK(throws_config_error(
        R"({"mass":1,"left":)" + side
            + R"(,"right":{"rho":{"kind":"samples","x":[0,0.5],"y":[1,1]},"sigma":{"kind":"constant","value":1}}})",
        "right"));
}

TEST_CASE("parsed document equals the programmatic builder")
{
    const auto c = parse_config(R"({"mass":2,
        "left":{"rho":{"kind":"poly","coeffs":[1,0,0.2]},"sigma":{"kind":"poly","coeffs":[1,0,0.1]},"q":{"kind":"constant","value":0.3}},
        "right":{"rho":{"kind":"poly","coeffs":[1,0,0.2]},"sigma":{"kind":"poly","coeffs":[1,0,0.1]},"q":{"kind":"constant","value":0.3}}})");
    const auto r = testsupport::symmetric_smooth_config(2.0);
    CHECK(c.gamma1() == r.gamma1());
    CHECK(c.gamma2() == r.gamma2());
    CHECK(c.mass() == 2.0);
}
