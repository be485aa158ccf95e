#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace seqgen {

// Flat key/value file with optional [section] headers. Lines are
// "key = value"; lines starting with '#' are comments (inline comments
// are not supported because '#' is a tile symbol in values); whitespace
// is trimmed. Keys inside a section are stored as "section.key". Used
// for tile vocabularies and run configuration.
class KeyValueFile {
 public:
  KeyValueFile() = default;

  static KeyValueFile parse(const std::string& text);
  static KeyValueFile load(const std::string& path);

  bool has(const std::string& key) const;
  const std::string& get(const std::string& key) const;            // throws ParseError if absent
  std::string get_or(const std::string& key, std::string fallback) const;
  long get_int(const std::string& key) const;
  double get_real(const std::string& key) const;
  std::vector<std::string> get_list(const std::string& key) const;  // whitespace-separated

  void set(const std::string& key, std::string value);
  const std::map<std::string, std::string>& entries() const { return entries_; }

 private:
  std::map<std::string, std::string> entries_;
};

}  // namespace seqgen
