#include "contractive_tools/io.hpp"

#include <cmath>
#include <fstream>
#include <sstream>
#include <system_error>
#include <unistd.h>

#include "contractive/errors.hpp"

namespace contractive::tools {

namespace fs = std::filesystem;

namespace {

[[noreturn]] void schema_error(const std::string& where, const std::string& what) {
  throw ParseError(where + ": " + what);
}

const Json& field(const Json& j, const char* key, const std::string& where) {
  if (!j.is_object()) schema_error(where, "expected an object");
  const auto it = j.find(key);
  if (it == j.end()) schema_error(where, std::string("missing field \"") + key + "\"");
  return *it;
}

double as_number(const Json& j, const std::string& where) {
  if (!j.is_number()) schema_error(where, "expected a number");
  return j.get<double>();
}

double number_or(const Json& j, const char* key, double fallback, const std::string& where) {
  const auto it = j.find(key);
  return it == j.end() ? fallback : as_number(*it, where + "." + key);
}

int as_int(const Json& j, const std::string& where) {
  if (!j.is_number_integer()) schema_error(where, "expected an integer");
  return j.get<int>();
}

std::vector<double> numbers(const Json& j, const std::string& where) {
  if (!j.is_array()) schema_error(where, "expected an array of numbers");
  std::vector<double> out;
  for (std::size_t i = 0; i < j.size(); ++i) out.push_back(as_number(j[i], where + "[" + std::to_string(i) + "]"));
  return out;
}

std::pair<double, double> pair_of(const Json& j, const std::string& where) {
  if (!j.is_array() || j.size() != 2) schema_error(where, "expected a pair [a, b]");
  return {as_number(j[0], where + "[0]"), as_number(j[1], where + "[1]")};
}

Complex complex_of(const Json& j, const std::string& where) {
  const auto [re, im] = pair_of(j, where);
  return {re, im};
}

TrigPoly trig_of(const Json& j, const std::string& where) {
  if (!j.is_object()) schema_error(where, "expected {\"cos\": [...], \"sin\": [...]}");
  std::vector<double> a, b;
  if (j.contains("cos")) a = numbers(j["cos"], where + ".cos");
  if (j.contains("sin")) b = numbers(j["sin"], where + ".sin");
  return TrigPoly(std::move(a), std::move(b));
}

std::vector<Atom> atoms_of(const Json& j, const std::string& where) {
  if (!j.is_array()) schema_error(where, "expected an array of [turns, mass] pairs");
  std::vector<Atom> out;
  for (std::size_t i = 0; i < j.size(); ++i) {
    const auto [t, m] = pair_of(j[i], where + "[" + std::to_string(i) + "]");
    out.push_back({t, m});
  }
  return out;
}

DyadicMassTree tree_of(const Json& j, const std::string& where) {
  if (!j.is_object()) schema_error(where, "expected an object");
  if (j.contains("p_alternating")) {
    const Json& pa = j["p_alternating"];
    const std::string w = where + ".p_alternating";
    return bernoulli_alternating_measure(as_number(field(pa, "p", w), w + ".p"),
                                         as_int(field(pa, "depth", w), w + ".depth"))
        .tree();
  }
  if (j.contains("leaves")) return DyadicMassTree::from_leaves(numbers(j["leaves"], where + ".leaves"));
  schema_error(where, "expected \"p_alternating\" or \"leaves\"");
}

BoundaryMeasure measure_at(const Json& j, const fs::path& base, const std::string& where) {
  if (!j.is_object()) schema_error(where, "expected a measure object");
  std::vector<Atom> atoms;
  DyadicMassTree tree;
  std::optional<TrigPoly> density;
  if (j.contains("atoms")) atoms = atoms_of(j["atoms"], where + ".atoms");
  if (j.contains("tree")) tree = tree_of(j["tree"], where + ".tree");
  if (j.contains("density")) density = trig_of(j["density"], where + ".density");
  if (j.contains("measure_file")) {
    if (!j["measure_file"].is_string()) schema_error(where + ".measure_file", "expected a path");
    return load_measure(base / j["measure_file"].get<std::string>());
  }
  if (atoms.empty() && tree.empty() && !density) schema_error(where, "measure has no atoms, tree or density");
  BoundaryMeasure m(std::move(atoms), std::move(tree), std::move(density));
  if (j.contains("scale")) m = m.scaled(as_number(j["scale"], where + ".scale"));
  return m;
}

SelfMap map_at(const Json& j, const fs::path& base, const std::string& where) {
  const Json& type = field(j, "type", where);
  if (!type.is_string()) schema_error(where + ".type", "expected a string");
  const std::string t = type.get<std::string>();
  if (t == "blaschke") {
    std::vector<Complex> zeros;
    const Json& z = field(j, "zeros", where);
    if (!z.is_array()) schema_error(where + ".zeros", "expected an array of [re, im] pairs");
    for (std::size_t i = 0; i < z.size(); ++i)
      zeros.push_back(complex_of(z[i], where + ".zeros[" + std::to_string(i) + "]"));
    return SelfMap::blaschke(std::move(zeros), number_or(j, "constant", 0.0, where));
  }
  if (t == "singular") return SelfMap::singular(atoms_of(field(j, "atoms", where), where + ".atoms"));
  if (t == "outer")
    return SelfMap::outer(trig_of(field(j, "log_modulus", where), where + ".log_modulus"),
                          number_or(j, "phase", 0.0, where));
  if (t == "herglotz") {
    BoundaryMeasure m;
    if (j.contains("measure")) m = measure_at(j["measure"], base, where + ".measure");
    else if (j.contains("measure_file") && j["measure_file"].is_string())
      m = load_measure(base / j["measure_file"].get<std::string>());
    else schema_error(where, "herglotz map needs \"measure\" or \"measure_file\"");
    return SelfMap::herglotz(std::move(m), number_or(j, "alpha", 0.0, where),
                             number_or(j, "imaginary_constant", 0.0, where));
  }
  if (t == "scaled_rotation")
    return SelfMap::scaled_rotation(as_number(field(j, "r", where), where + ".r"), number_or(j, "theta", 0.0, where));
  if (t == "product") {
    const Json& fs_ = field(j, "factors", where);
    if (!fs_.is_array() || fs_.empty()) schema_error(where + ".factors", "expected a nonempty array of maps");
    std::vector<SelfMap> factors;
    for (std::size_t i = 0; i < fs_.size(); ++i)
      factors.push_back(map_at(fs_[i], base, where + ".factors[" + std::to_string(i) + "]"));
    return SelfMap::product(std::move(factors));
  }
  if (t == "compose")
    return SelfMap::compose(map_at(field(j, "outer", where), base, where + ".outer"),
                            map_at(field(j, "inner", where), base, where + ".inner"));
  if (t == "identity") return SelfMap::identity();
  if (t == "constant") return SelfMap::constant(complex_of(field(j, "c", where), where + ".c"));
  if (t == "mobius")
    return SelfMap::mobius(complex_of(field(j, "a", where), where + ".a"), number_or(j, "theta", 0.0, where));
  schema_error(where + ".type", "unknown map type \"" + t + "\"");
}

// Library validation errors inside a file are reported against the file.
template <class F>
auto with_context(const fs::path& path, F&& f) {
  try {
    return f();
  } catch (const ParseError& e) {
    const std::string msg = e.what();
    if (msg.rfind(path.string() + ":", 0) == 0) throw;
    throw ParseError(path.string() + ": " + msg);
  } catch (const InputError& e) {
    throw ParseError(path.string() + ": " + e.what());
  }
}

}  // namespace

Json read_json_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError(path.string() + ": cannot open file");
  std::stringstream buf;
  buf << in.rdbuf();
  try {
    return Json::parse(buf.str());
  } catch (const Json::parse_error& e) {
    // nlohmann reports "at line L, column C" in the message.
    throw ParseError(path.string() + ": " + e.what());
  }
}

BoundaryMeasure measure_from_json(const Json& j, const fs::path& base_dir) { return measure_at(j, base_dir, "$"); }
SelfMap map_from_json(const Json& j, const fs::path& base_dir) { return map_at(j, base_dir, "$"); }

MeasurableSet set_from_json(const Json& j) {
  const Json& arcs = field(j, "arcs", "$");
  if (!arcs.is_array()) schema_error("$.arcs", "expected an array of [start, length] pairs");
  std::vector<Arc> out;
  for (std::size_t i = 0; i < arcs.size(); ++i) {
    const std::string w = "$.arcs[" + std::to_string(i) + "]";
    const auto [s, l] = pair_of(arcs[i], w);
    if (!(l > 0.0 && l <= 1.0)) schema_error(w, "arc length must lie in (0, 1]");
    out.emplace_back(s, l);
  }
  return MeasurableSet(out);
}

std::vector<ArcCollection> generations_from_json(const Json& j) {
  const Json& gens = field(j, "generations", "$");
  if (!gens.is_array()) schema_error("$.generations", "expected an array");
  std::vector<ArcCollection> out;
  for (std::size_t i = 0; i < gens.size(); ++i) {
    const std::string w = "$.generations[" + std::to_string(i) + "]";
    ArcCollection g;
    g.generation = gens[i].contains("generation") ? as_int(gens[i]["generation"], w + ".generation") : static_cast<int>(i);
    const Json& arcs = field(gens[i], "arcs", w);
    if (!arcs.is_array()) schema_error(w + ".arcs", "expected an array of [depth, index] pairs");
    for (std::size_t k = 0; k < arcs.size(); ++k) {
      const std::string wa = w + ".arcs[" + std::to_string(k) + "]";
      if (!arcs[k].is_array() || arcs[k].size() != 2 || !arcs[k][0].is_number_integer() ||
          !arcs[k][1].is_number_unsigned())
        schema_error(wa, "expected [depth, index] with nonnegative integers");
      g.arcs.emplace_back(arcs[k][0].get<int>(), arcs[k][1].get<std::uint64_t>());
    }
    out.push_back(std::move(g));
  }
  return out;
}

BoundaryMeasure load_measure(const fs::path& path) {
  return with_context(path, [&] { return measure_from_json(read_json_file(path), path.parent_path()); });
}

SelfMap load_map(const fs::path& path) {
  return with_context(path, [&] { return map_from_json(read_json_file(path), path.parent_path()); });
}

MeasurableSet load_set(const fs::path& path) {
  return with_context(path, [&] { return set_from_json(read_json_file(path)); });
}

std::vector<ArcCollection> load_generations(const fs::path& path) {
  return with_context(path, [&] { return generations_from_json(read_json_file(path)); });
}

std::string document_id(const fs::path& path) {
  const Json j = read_json_file(path);
  if (j.is_object() && j.contains("id") && j["id"].is_string()) return j["id"].get<std::string>();
  return path.stem().string();
}

void write_atomic(const fs::path& path, const std::string& content) {
  const fs::path dir = path.has_parent_path() ? path.parent_path() : fs::path(".");
  std::error_code ec;
  fs::create_directories(dir, ec);
  const fs::path tmp = dir / ("." + path.filename().string() + ".tmp." + std::to_string(::getpid()));
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + tmp.string());
    out << content;
    out.flush();
    if (!out) throw std::runtime_error("write failed for " + tmp.string());
  }
  fs::rename(tmp, path, ec);
  if (ec) {
    fs::remove(tmp);
    throw std::runtime_error("cannot rename onto " + path.string() + ": " + ec.message());
  }
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

Json number(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  return x;
}

}  // namespace contractive::tools
