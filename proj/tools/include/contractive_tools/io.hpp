#pragma once

#include <filesystem>
#include <stdexcept>
#include <string>

#include <json.hpp>

#include "contractive/hausdorff.hpp"
#include "contractive/measure.hpp"
#include "contractive/selfmap.hpp"
#include "contractive/verify.hpp"

namespace contractive::tools {

using Json = nlohmann::ordered_json;

/// Malformed input file: carries the path and, for JSON syntax errors, the line.
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Reads and parses a JSON file; syntax errors report line and column.
Json read_json_file(const std::filesystem::path& path);

BoundaryMeasure measure_from_json(const Json& j, const std::filesystem::path& base_dir = {});
SelfMap map_from_json(const Json& j, const std::filesystem::path& base_dir = {});
MeasurableSet set_from_json(const Json& j);
/// {"generations": [{"generation": g, "arcs": [[depth, index], ...]}, ...]}
std::vector<ArcCollection> generations_from_json(const Json& j);

BoundaryMeasure load_measure(const std::filesystem::path& path);
SelfMap load_map(const std::filesystem::path& path);
MeasurableSet load_set(const std::filesystem::path& path);
std::vector<ArcCollection> load_generations(const std::filesystem::path& path);

/// Optional "id" field of a map or measure file, else the file stem.
std::string document_id(const std::filesystem::path& path);

/// Writes through a temporary file in the same directory, then renames.
void write_atomic(const std::filesystem::path& path, const std::string& content);

/// JSON with 2-space indent and a trailing newline; non-finite numbers become strings.
std::string dump(const Json& j);

/// Replaces non-finite doubles by "inf", "-inf" or "nan".
Json number(double x);

}  // namespace contractive::tools
