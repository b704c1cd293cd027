// Runs the CLI over fixtures/golden/cases.json and compares every output file
// with the stored golden copy. --update rewrites the goldens instead.
#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <vector>

namespace fs = std::filesystem;
using Json = nlohmann::ordered_json;

namespace {

struct Tolerance {
  double rel = 1e-9;
  double abs = 1e-12;
};

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

std::string quote(const std::string& s) {
  std::string out = "'";
  for (char ch : s) out += ch == '\'' ? std::string("'\\''") : std::string(1, ch);
  return out + "'";
}

bool close(double a, double b, const Tolerance& t) {
  if (a == b) return true;
  if (std::isnan(a) || std::isnan(b)) return std::isnan(a) && std::isnan(b);
  return std::abs(a - b) <= t.abs + t.rel * std::max(std::abs(a), std::abs(b));
}

class Diff {
 public:
  explicit Diff(Tolerance t) : tol_(t) {}

  void json(const Json& a, const Json& b, const std::string& path) {
    if (a.is_number() && b.is_number()) {
      if (!close(a.get<double>(), b.get<double>(), tol_)) note(path, a.dump(), b.dump());
      return;
    }
    if (a.type() != b.type()) return note(path, a.dump(), b.dump());
    if (a.is_object()) {
      for (auto it = a.begin(); it != a.end(); ++it) {
        if (!b.contains(it.key())) note(path + "." + it.key(), it.value().dump(), "(missing)");
        else json(it.value(), b[it.key()], path + "." + it.key());
      }
      for (auto it = b.begin(); it != b.end(); ++it)
        if (!a.contains(it.key())) note(path + "." + it.key(), "(missing)", it.value().dump());
    } else if (a.is_array()) {
      if (a.size() != b.size())
        return note(path, std::to_string(a.size()) + " items", std::to_string(b.size()) + " items");
      for (std::size_t i = 0; i < a.size(); ++i) json(a[i], b[i], path + "[" + std::to_string(i) + "]");
    } else if (a != b) {
      note(path, a.dump(), b.dump());
    }
  }

  void csv(const std::string& a, const std::string& b, const std::string& name) {
    const auto ra = lines(a), rb = lines(b);
    if (ra.size() != rb.size())
      return note(name, std::to_string(ra.size()) + " rows", std::to_string(rb.size()) + " rows");
    for (std::size_t i = 0; i < ra.size(); ++i) {
      const auto ca = cells(ra[i]), cb = cells(rb[i]);
      const std::string where = name + ":" + std::to_string(i + 1);
      if (ca.size() != cb.size()) {
        note(where, ra[i], rb[i]);
        continue;
      }
      for (std::size_t k = 0; k < ca.size(); ++k) {
        char* ea = nullptr;
        char* eb = nullptr;
        const double x = std::strtod(ca[k].c_str(), &ea), y = std::strtod(cb[k].c_str(), &eb);
        const bool numeric = !ca[k].empty() && !cb[k].empty() && *ea == '\0' && *eb == '\0';
        if (numeric ? !close(x, y, tol_) : ca[k] != cb[k]) note(where + " col " + std::to_string(k + 1), ca[k], cb[k]);
      }
    }
  }

  std::size_t count() const { return count_; }
  const std::vector<std::string>& messages() const { return messages_; }

 private:
  static std::vector<std::string> lines(const std::string& s) {
    std::vector<std::string> out;
    std::stringstream in(s);
    for (std::string l; std::getline(in, l);) out.push_back(l);
    return out;
  }
  static std::vector<std::string> cells(const std::string& l) {
    std::vector<std::string> out;
    std::stringstream in(l);
    for (std::string c; std::getline(in, c, ',');) out.push_back(c);
    return out;
  }
  void note(const std::string& where, const std::string& got, const std::string& want) {
    ++count_;
    if (messages_.size() < 10) messages_.push_back(where + ": got " + got + ", golden " + want);
  }

  Tolerance tol_;
  std::size_t count_ = 0;
  std::vector<std::string> messages_;
};

Tolerance tolerance_of(const Json& j, Tolerance fallback) {
  if (j.is_object()) {
    if (j.contains("rel")) fallback.rel = j["rel"].get<double>();
    if (j.contains("abs")) fallback.abs = j["abs"].get<double>();
  }
  return fallback;
}

std::vector<fs::path> files_in(const fs::path& dir) {
  std::vector<fs::path> out;
  if (fs::exists(dir))
    for (const auto& e : fs::directory_iterator(dir))
      if (e.is_regular_file()) out.push_back(e.path().filename());
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  std::string exe, fixtures, work, only;
  bool update = false;
  CLI::App app{"Golden-output regression for the contractive CLI"};
  app.add_option("--contractive", exe, "path to the contractive executable")->required();
  app.add_option("--fixtures", fixtures, "fixtures directory")->required();
  app.add_option("--work", work, "scratch directory")->required();
  app.add_option("--case", only, "run a single case");
  app.add_flag("--update", update, "rewrite the golden files");
  CLI11_PARSE(app, argc, argv);

  const fs::path root(fixtures), golden = root / "golden";
  const Json spec = Json::parse(slurp(golden / "cases.json"));
  const Tolerance base = tolerance_of(spec.value("tolerance", Json::object()), {});
  int failures = 0;
  for (const auto& c : spec["cases"]) {
    const std::string name = c["name"].get<std::string>();
    if (!only.empty() && name != only) continue;
    const fs::path out = fs::absolute(fs::path(work) / name);
    fs::remove_all(out);
    std::string cmd = "cd " + quote(root.string()) + " && " + quote(fs::absolute(exe).string());
    for (const auto& a : c["args"]) cmd += " " + quote(a.get<std::string>());
    cmd += " --out " + quote(out.string()) + " > /dev/null";
    const int raw = std::system(cmd.c_str());
    const int code = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
    const int expected = c.value("exit", 0);
    if (code != expected) {
      std::printf("FAIL %s: exit %d, expected %d\n", name.c_str(), code, expected);
      ++failures;
      continue;
    }
    const fs::path want = golden / name;
    if (update) {
      fs::remove_all(want);
      fs::create_directories(want);
      for (const auto& f : files_in(out)) fs::copy_file(out / f, want / f);
      std::printf("UPDATED %s (%zu files)\n", name.c_str(), files_in(want).size());
      continue;
    }
    Diff diff(tolerance_of(c.value("tolerance", Json::object()), base));
    const auto got_files = files_in(out), want_files = files_in(want);
    if (got_files != want_files) {
      std::printf("FAIL %s: output files differ from the golden set\n", name.c_str());
      ++failures;
      continue;
    }
    for (const auto& f : got_files) {
      if (f.extension() == ".json")
        diff.json(Json::parse(slurp(out / f)), Json::parse(slurp(want / f)), f.string() + ":$");
      else
        diff.csv(slurp(out / f), slurp(want / f), f.string());
    }
    if (diff.count() == 0) {
      std::printf("PASS %s\n", name.c_str());
    } else {
      std::printf("FAIL %s: %zu mismatches\n", name.c_str(), diff.count());
      for (const auto& m : diff.messages()) std::printf("  %s\n", m.c_str());
      ++failures;
    }
  }
  return failures == 0 ? 0 : 1;
}
