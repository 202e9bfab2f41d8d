#include "freeplate/domain_config.hpp"

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <vector>

#include "freeplate/errors.hpp"

namespace freeplate {
namespace {

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return "";
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

struct Entry {
  std::string value;
  int line = 0;
};

class Config {
 public:
  Config(std::map<std::string, Entry> entries, std::string source)
      : entries_(std::move(entries)), source_(std::move(source)) {}

  bool has(const std::string& key) const { return entries_.count(key) != 0; }

  [[noreturn]] void fail(const std::string& key, const std::string& msg) const {
    const auto it = entries_.find(key);
    const std::string where = it == entries_.end() ? source_ : source_ + ":" + std::to_string(it->second.line);
    throw ParseError(where + ": " + key + ": " + msg);
  }

  const std::string& text(const std::string& key) const {
    used_.insert(key);
    const auto it = entries_.find(key);
    if (it == entries_.end()) throw ParseError(source_ + ": missing key '" + key + "'");
    return it->second.value;
  }

  double number(const std::string& key) const {
    const auto values = numbers(key);
    if (values.size() != 1) fail(key, "expected one number");
    return values[0];
  }

  std::vector<double> numbers(const std::string& key) const {
    std::vector<double> out;
    std::stringstream ss(text(key));
    std::string item;
    while (std::getline(ss, item, ',')) {
      item = trim(item);
      char* end = nullptr;
      const double v = std::strtod(item.c_str(), &end);
      if (item.empty() || *end != '\0' || !std::isfinite(v)) fail(key, "bad number '" + item + "'");
      out.push_back(v);
    }
    if (out.empty()) fail(key, "expected a number list");
    return out;
  }

  Eigen::VectorXd vector(const std::string& key, int dim) const {
    const auto values = numbers(key);
    if (dim > 0 && static_cast<int>(values.size()) != dim) {
      fail(key, "expected " + std::to_string(dim) + " values, got " + std::to_string(values.size()));
    }
    return Eigen::Map<const Eigen::VectorXd>(values.data(), static_cast<Eigen::Index>(values.size()));
  }

  void reject_unused() const {
    for (const auto& [key, entry] : entries_) {
      if (!used_.count(key)) {
        throw ParseError(source_ + ":" + std::to_string(entry.line) + ": unknown or unused key '" + key + "'");
      }
    }
  }

 private:
  std::map<std::string, Entry> entries_;
  std::string source_;
  mutable std::set<std::string> used_;
};

int dimension(const Config& cfg, int fallback) {
  if (!cfg.has("dim")) {
    if (fallback > 0) return fallback;
    throw ParseError("missing key 'dim'");
  }
  const double d = cfg.number("dim");
  if (d != std::floor(d) || d < 1 || d > kMaxDomainDim) cfg.fail("dim", "must be an integer in [1, 32]");
  if (fallback > 0 && static_cast<int>(d) != fallback) cfg.fail("dim", "disagrees with the vector lengths");
  return static_cast<int>(d);
}

Eigen::VectorXd optional_center(const Config& cfg, int dim) {
  return cfg.has("center") ? cfg.vector("center", dim) : Eigen::VectorXd::Zero(dim);
}

Domain build(const Config& cfg) {
  const std::string shape = cfg.text("shape");
  if (shape == "ball") {
    const int d = dimension(cfg, 0);
    return make_ball(d, cfg.number("radius"), optional_center(cfg, d));
  }
  if (shape == "ellipsoid") {
    const Eigen::VectorXd axes = cfg.vector("semiaxes", 0);
    const int d = dimension(cfg, static_cast<int>(axes.size()));
    return make_ellipsoid(axes, optional_center(cfg, d));
  }
  if (shape == "box") {
    const Eigen::VectorXd sides = cfg.vector("sides", 0);
    const int d = dimension(cfg, static_cast<int>(sides.size()));
    return make_box(sides, optional_center(cfg, d));
  }
  if (shape == "annulus") {
    const int d = dimension(cfg, 0);
    return make_annulus(d, cfg.number("inner"), cfg.number("outer"), optional_center(cfg, d));
  }
  if (shape == "two_balls") {
    const int d = dimension(cfg, 0);
    return make_two_balls(cfg.vector("center1", d), cfg.number("radius1"),
                          cfg.vector("center2", d), cfg.number("radius2"));
  }
  if (shape == "implicit") {
    const int d = dimension(cfg, 0);
    const auto box = cfg.numbers("bbox");
    if (static_cast<int>(box.size()) != 2 * d) cfg.fail("bbox", "expected lo1..lod,hi1..hid");
    BoundingBox bbox{Eigen::Map<const Eigen::VectorXd>(box.data(), d),
                     Eigen::Map<const Eigen::VectorXd>(box.data() + d, d)};
    std::optional<double> volume;
    if (cfg.has("volume")) volume = cfg.number("volume");
    try {
      return make_implicit(d, cfg.text("expr"), bbox, volume);
    } catch (const ParseError& e) {
      cfg.fail("expr", e.what());
    }
  }
  cfg.fail("shape", "unknown shape '" + shape + "'");
}

}  // namespace

Domain parse_domain_config(std::istream& in, const std::string& source) {
  std::map<std::string, Entry> entries;
  std::string raw;
  int line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    const auto hash = raw.find('#');
    const std::string line = trim(hash == std::string::npos ? raw : raw.substr(0, hash));
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ParseError(source + ":" + std::to_string(line_no) + ": expected key=value");
    }
    const std::string key = trim(line.substr(0, eq));
    if (key.empty()) throw ParseError(source + ":" + std::to_string(line_no) + ": empty key");
    if (entries.count(key)) {
      throw ParseError(source + ":" + std::to_string(line_no) + ": duplicate key '" + key + "'");
    }
    entries[key] = {trim(line.substr(eq + 1)), line_no};
  }
  const Config cfg(std::move(entries), source);
  try {
    Domain domain = build(cfg);
    cfg.reject_unused();
    return domain;
  } catch (const DomainError& e) {
    throw ParseError(source + ": " + e.what());
  }
}

Domain parse_domain_config_string(const std::string& text) {
  std::istringstream in(text);
  return parse_domain_config(in, "<string>");
}

Domain load_domain_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open domain config '" + path + "'");
  return parse_domain_config(in, path);
}

}  // namespace freeplate
