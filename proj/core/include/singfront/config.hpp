#pragma once

// Minimal reader for the sectioned key = value files used for problem and
// simulation configs (a TOML subset: [section] headers, "quoted strings",
// bare numbers and booleans, '#' comments).

#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace singfront::config {

struct Value {
  std::string text;
  bool quoted = false;
  int line = 0;

  double as_number(const std::string& key) const;
  bool as_bool(const std::string& key) const;
  const std::string& as_string(const std::string& key) const;
};

using Section = std::map<std::string, Value>;

struct Document {
  std::map<std::string, Section> sections;

  /// Empty section when absent.
  const Section& section(const std::string& name) const;
};

/// Throws ParseError naming the line on malformed input, duplicate keys, or
/// entries outside a section.
Document parse(std::string_view text);

Document read_file(const std::string& path);

/// Throws ParseError when the document holds a section outside `allowed`, or
/// a key of `section` outside `keys`.
void require_known(const Document& doc, const std::vector<std::string>& allowed);
void require_known_keys(const Section& section, const std::string& name,
                        const std::vector<std::string>& keys);

std::string quote(std::string_view s);

}  // namespace singfront::config
