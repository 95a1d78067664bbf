// Flat key=value run configuration with command-line overrides.
#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <set>
#include <string>
#include <vector>

namespace fracspec::cli {

class RunConfig {
 public:
  /// Lines "key = value"; '#' starts a comment; blank lines ignored.
  static RunConfig parse(std::istream& is);
  static RunConfig from_file(const std::filesystem::path& path);

  void set(const std::string& key, const std::string& value);
  /// Applies "--key value" pairs (later entries win).
  void apply_overrides(const std::vector<std::string>& args);

  bool has(const std::string& key) const { return values_.count(key) != 0; }

  // Getters record the value they resolve (including defaults) for the
  // manifest. Malformed values throw PreconditionError.
  std::string get_string(const std::string& key, const std::string& fallback) const;
  double get_double(const std::string& key, double fallback) const;
  int get_int(const std::string& key, int fallback) const;
  std::uint64_t get_seed(const std::string& key, std::uint64_t fallback) const;
  bool get_bool(const std::string& key, bool fallback) const;
  std::vector<int> get_int_list(const std::string& key, const std::vector<int>& fallback) const;
  std::vector<double> get_double_list(const std::string& key,
                                      const std::vector<double>& fallback) const;

  /// Throws PreconditionError naming any supplied key no getter asked for.
  void reject_unused() const;

  /// Resolved configuration, sorted by key, one "key = value" per line.
  void write_manifest(std::ostream& os, const std::map<std::string, std::string>& extra = {}) const;
  void write_manifest(const std::filesystem::path& path,
                      const std::map<std::string, std::string>& extra = {}) const;

 private:
  std::string lookup(const std::string& key, const std::string& fallback) const;

  std::map<std::string, std::string> values_;
  mutable std::map<std::string, std::string> resolved_;
};

}  // namespace fracspec::cli
