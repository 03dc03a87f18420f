#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "mslab/config.hpp"
#include "mslab/errors.hpp"

#include <string>

using namespace mslab;

namespace {

std::string error_of(const std::string& text) {
    try {
        parse_config(text).validate();
    } catch (const ConfigError& e) {
        return e.what();
    }
    return "";
}

} // namespace

TEST_CASE("empty config gives defaults") {
    CHECK(parse_config("") == RunConfig{});
    CHECK(parse_config("{}") == RunConfig{});
}

TEST_CASE("YAML config is read") {
    const RunConfig c = parse_config(R"(
scheme: identity
window: [0, 1]
spectrum: {lo: -0.25, hi: 0.25, lo_closed: true, hi_closed: true}
weights:
  h: {kind: outer_trapezoid, w: 1.0, u: 0.5}
  g: {kind: inner_trapezoid, lo: -2, hi: 2, u: 0.25}
radius: 300
frames: {truncations: [10, 20, 40]}
seed: 7
)");
    CHECK(c.scheme == "identity");
    CHECK(c.window == IntervalSet(Interval::half_open(0.0, 1.0)));
    CHECK(c.spectrum == IntervalSet(Interval::closed(-0.25, 0.25)));
    CHECK(c.g.kind == "inner_trapezoid");
    CHECK(c.g.build().half_width() == doctest::Approx(2.0));
    CHECK(c.radius == 300.0);
    CHECK(c.truncations == std::vector<double>{10, 20, 40});
    CHECK(c.seed == 7);
    CHECK_NOTHROW(c.validate());
}

TEST_CASE("JSON config is accepted") {
    const RunConfig c = parse_config(R"({"scheme": {"basis": [[1, 2], [3, 4]]}, "window": [[0, 1], [2, 3]],
                                         "weights": {"h": {"kind": "fejer", "n": 16}}})");
    CHECK(c.scheme == "custom");
    CHECK(c.basis(1, 0) == 3.0);
    CHECK(c.window.parts().size() == 2);
    CHECK(c.h.kind == "fejer");
    CHECK(c.h.n == 16);
}

TEST_CASE("serialization round-trips") {
    RunConfig c;
    c.scheme = "custom";
    c.basis << 1.0, 0.1 + 0.2, -1.0 / 3.0, 2.0;
    c.window = IntervalSet::normalize({Interval::half_open(-0.5, 0.1), Interval::open(1.0, 1.7)});
    c.h.kind = "indicator";
    c.h.lo = -0.3;
    c.h.hi = 0.7;
    c.truncations = {12.5, 25, 1e3};
    c.seed = 123456789012345ULL;
    const std::string once = serialize_config(c);
    const RunConfig back = parse_config(once);
    CHECK(back == c);
    CHECK(serialize_config(back) == once);
    CHECK(serialize_config(parse_config(serialize_config(RunConfig{}))) == serialize_config(RunConfig{}));
}

TEST_CASE("unknown keys name their path") {
    CHECK(error_of("colour: red").find("colour") != std::string::npos);
    CHECK(error_of("frames: {truncation: [1, 2, 3]}").find("frames.truncation") != std::string::npos);
    CHECK(error_of("weights: {h: {kind: fejer, width: 2}}").find("weights.h.width") != std::string::npos);
    CHECK(error_of("window: [{lo: 0, hi: 1, closed: true}]").find("window[0].closed") != std::string::npos);
}

TEST_CASE("invalid values are rejected before any computation") {
    CHECK(error_of("radius: -1").find("radius") != std::string::npos);
    CHECK(error_of("radius: abc").find("radius") != std::string::npos);
    CHECK(error_of("scheme: {basis: [[1, 2], [2, 4]]}").find("scheme.basis") != std::string::npos);
    CHECK(error_of("weights: {g: {kind: inner_trapezoid, w: 0.5, u: 0.5}}").find("weights.g") != std::string::npos);
    CHECK(error_of("weights: {g: {kind: triangle}}").find("triangle") != std::string::npos);
    CHECK(error_of("frames: {truncations: [1, 2]}").find("frames.truncations") != std::string::npos);
    CHECK(error_of("window: [1, 0]").find("window") != std::string::npos);
    CHECK_THROWS_AS(load_config("/nonexistent/config.yaml"), ConfigError);
}
