#include "fracspec/config.hpp"

#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <type_traits>

#include "fracspec/grid.hpp"

namespace fracspec::cli {
namespace {

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) {
    return {};
  }
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

template <typename T>
T parse_number(const std::string& key, const std::string& text) {
  T value{};
  const char* begin = text.data();
  const char* end = begin + text.size();
  const auto [ptr, ec] = std::from_chars(begin, end, value);
  if (ec != std::errc() || ptr != end) {
    throw PreconditionError("config key '" + key + "': cannot parse '" + text + "'");
  }
  return value;
}

template <typename T>
std::vector<T> parse_list(const std::string& key, const std::string& text) {
  std::vector<T> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (!item.empty()) {
      out.push_back(parse_number<T>(key, item));
    }
  }
  return out;
}


// Shortest representation that reads back to the same double.
std::string format_double(double v) {
  char buf[32];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, ptr);
}

template <typename T>
std::string join(const std::vector<T>& v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i > 0) {
      out += ',';
    }
    if constexpr (std::is_floating_point_v<T>) {
      out += format_double(v[i]);
    } else {
      out += std::to_string(v[i]);
    }
  }
  return out;
}

}  // namespace

RunConfig RunConfig::parse(std::istream& is) {
  RunConfig cfg;
  std::string line;
  int lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string::npos) {
      line.erase(hash);
    }
    line = trim(line);
    if (line.empty()) {
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw PreconditionError("config line " + std::to_string(lineno) + ": expected key = value");
    }
    const std::string key = trim(line.substr(0, eq));
    if (key.empty()) {
      throw PreconditionError("config line " + std::to_string(lineno) + ": empty key");
    }
    cfg.set(key, trim(line.substr(eq + 1)));
  }
  return cfg;
}

RunConfig RunConfig::from_file(const std::filesystem::path& path) {
  std::ifstream is(path);
  if (!is) {
    throw IoError("cannot open config file " + path.string());
  }
  return parse(is);
}

void RunConfig::set(const std::string& key, const std::string& value) { values_[key] = value; }

void RunConfig::apply_overrides(const std::vector<std::string>& args) {
  for (std::size_t i = 0; i < args.size(); ++i) {
    const std::string& flag = args[i];
    if (flag.rfind("--", 0) != 0 || flag.size() < 3) {
      throw PreconditionError("unexpected argument '" + flag + "'");
    }
    std::string key = flag.substr(2);
    if (const auto eq = key.find('='); eq != std::string::npos) {
      set(key.substr(0, eq), key.substr(eq + 1));
      continue;
    }
    if (i + 1 >= args.size()) {
      throw PreconditionError("missing value for '" + flag + "'");
    }
    set(key, args[++i]);
  }
}

std::string RunConfig::lookup(const std::string& key, const std::string& fallback) const {
  const auto it = values_.find(key);
  return it == values_.end() ? fallback : it->second;
}

std::string RunConfig::get_string(const std::string& key, const std::string& fallback) const {
  const std::string v = lookup(key, fallback);
  resolved_[key] = v;
  return v;
}

double RunConfig::get_double(const std::string& key, double fallback) const {
  const double v = has(key) ? parse_number<double>(key, lookup(key, "")) : fallback;
  resolved_[key] = format_double(v);
  return v;
}

int RunConfig::get_int(const std::string& key, int fallback) const {
  const int v = has(key) ? parse_number<int>(key, lookup(key, "")) : fallback;
  resolved_[key] = std::to_string(v);
  return v;
}

std::uint64_t RunConfig::get_seed(const std::string& key, std::uint64_t fallback) const {
  const std::uint64_t v = has(key) ? parse_number<std::uint64_t>(key, lookup(key, "")) : fallback;
  resolved_[key] = std::to_string(v);
  return v;
}

bool RunConfig::get_bool(const std::string& key, bool fallback) const {
  bool v = fallback;
  if (has(key)) {
    const std::string text = lookup(key, "");
    if (text == "true" || text == "1" || text == "yes") {
      v = true;
    } else if (text == "false" || text == "0" || text == "no") {
      v = false;
    } else {
      throw PreconditionError("config key '" + key + "': expected a boolean, got '" + text + "'");
    }
  }
  resolved_[key] = v ? "true" : "false";
  return v;
}

std::vector<int> RunConfig::get_int_list(const std::string& key,
                                         const std::vector<int>& fallback) const {
  const auto v = has(key) ? parse_list<int>(key, lookup(key, "")) : fallback;
  resolved_[key] = join(v);
  return v;
}

std::vector<double> RunConfig::get_double_list(const std::string& key,
                                               const std::vector<double>& fallback) const {
  const auto v = has(key) ? parse_list<double>(key, lookup(key, "")) : fallback;
  resolved_[key] = join(v);
  return v;
}

void RunConfig::reject_unused() const {
  for (const auto& [key, value] : values_) {
    if (resolved_.count(key) == 0) {
      throw PreconditionError("unknown config key '" + key + "'");
    }
  }
}

void RunConfig::write_manifest(std::ostream& os,
                               const std::map<std::string, std::string>& extra) const {
  std::map<std::string, std::string> all = resolved_;
  for (const auto& [k, v] : extra) {
    all[k] = v;
  }
  for (const auto& [k, v] : all) {
    os << k << " = " << v << '\n';
  }
}

void RunConfig::write_manifest(const std::filesystem::path& path,
                               const std::map<std::string, std::string>& extra) const {
  std::ofstream os(path);
  if (!os) {
    throw IoError("cannot open " + path.string() + " for writing");
  }
  write_manifest(os, extra);
}

}  // namespace fracspec::cli
