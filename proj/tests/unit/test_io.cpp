#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <functional>
#include <limits>

#include "contractive_tools/io.hpp"

using namespace contractive;
using namespace contractive::tools;
namespace fs = std::filesystem;

namespace {

std::string message_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const std::exception& e) {
    return e.what();
  }
  return {};
}

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / "contractive_unit";
  fs::create_directories(dir);
  return dir / name;
}

}  // namespace

TEST_CASE("maps from JSON") {
  const SelfMap z2 = map_from_json(Json::parse(R"({"type": "blaschke", "zeros": [[0, 0], [0, 0]]})"));
  CHECK(std::abs(z2(0.5) - Complex(0.25, 0.0)) < 1e-15);
  const SelfMap p = map_from_json(Json::parse(
      R"({"type": "product", "factors": [{"type": "scaled_rotation", "r": 0.5}, {"type": "constant", "c": [0.5, 0]}]})"));
  CHECK(std::abs(p(0.4) - Complex(0.1, 0.0)) < 1e-15);
  const SelfMap h = map_from_json(Json::parse(R"({"type": "herglotz", "measure": {"atoms": [[0, 1]]}})"));
  CHECK(std::abs(h(Complex(0.3, 0.2)) - Complex(0.3, 0.2)) < 1e-14);
}

TEST_CASE("measures from JSON") {
  const BoundaryMeasure b = measure_from_json(Json::parse(R"({"tree": {"p_alternating": {"p": 0.3, "depth": 6}}})"));
  CHECK(b.tree_depth() == 6);
  const BoundaryMeasure s = measure_from_json(Json::parse(R"({"density": {"cos": [1.0]}, "scale": 2})"));
  CHECK(s.total_mass() == doctest::Approx(2.0));
}

TEST_CASE("schema errors carry a JSON path") {
  const auto msg = message_of([] { map_from_json(Json::parse(R"({"type": "blaschke", "zeros": [[0, 0], [1]]})")); });
  CHECK(msg.find("$.zeros[1]") != std::string::npos);
  CHECK(message_of([] { map_from_json(Json::parse(R"({"type": "spline"})")); }).find("unknown map type") !=
        std::string::npos);
  CHECK_THROWS_AS(set_from_json(Json::parse(R"({"arcs": [[0, 1.5]]})")), ParseError);
}

TEST_CASE("syntax errors report the line") {
  const fs::path path = scratch("broken.json");
  std::ofstream(path) << "{\n  \"type\": \"identity\",,\n}\n";
  const auto msg = message_of([&] { load_map(path); });
  CHECK(msg.find(path.string()) == 0);
  CHECK(msg.find("line 2") != std::string::npos);
}

TEST_CASE("library validation errors become parse errors") {
  const fs::path path = scratch("outside.json");
  std::ofstream(path) << R"({"type": "blaschke", "zeros": [[1.5, 0]]})";
  CHECK_THROWS_AS(load_map(path), ParseError);
}

TEST_CASE("atomic writes and number formatting") {
  const fs::path path = scratch("out/result.json");
  write_atomic(path, "first\n");
  write_atomic(path, "second\n");
  std::ifstream in(path);
  std::string line;
  std::getline(in, line);
  CHECK(line == "second");
  CHECK(number(std::numeric_limits<double>::infinity()) == Json("inf"));
  CHECK(number(0.5) == Json(0.5));
  CHECK(dump(Json::object()) == "{}\n");
}
