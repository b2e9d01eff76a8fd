#include "singfront/config.hpp"

#include <algorithm>
#include <cctype>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "singfront/error.hpp"

namespace singfront::config {

namespace {

std::string trim(std::string_view s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string(s.substr(b, e - b));
}

[[noreturn]] void fail(int line, const std::string& what) {
  throw ParseError("line " + std::to_string(line) + ": " + what);
}

// Strips a trailing comment that is not inside a quoted string.
std::string strip_comment(const std::string& line) {
  bool in_string = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (c == '\\' && in_string) {
      ++i;
    } else if (c == '"') {
      in_string = !in_string;
    } else if (c == '#' && !in_string) {
      return line.substr(0, i);
    }
  }
  return line;
}

Value parse_value(const std::string& raw, int line) {
  Value v;
  v.line = line;
  if (raw.empty()) fail(line, "missing value");
  if (raw.front() == '"') {
    if (raw.size() < 2 || raw.back() != '"') fail(line, "unterminated string");
    std::string out;
    for (std::size_t i = 1; i + 1 < raw.size(); ++i) {
      if (raw[i] == '\\' && i + 2 < raw.size()) {
        ++i;
        out += raw[i] == 'n' ? '\n' : raw[i];
      } else if (raw[i] == '"') {
        fail(line, "unexpected quote inside string");
      } else {
        out += raw[i];
      }
    }
    v.text = out;
    v.quoted = true;
  } else {
    if (raw.find_first_of(" \t\"") != std::string::npos) fail(line, "unquoted value contains spaces");
    v.text = raw;
  }
  return v;
}

}  // namespace

double Value::as_number(const std::string& key) const {
  if (quoted) fail(line, "key '" + key + "' expects a number, got a string");
  char* end = nullptr;
  const double d = std::strtod(text.c_str(), &end);
  if (text.empty() || end != text.c_str() + text.size()) {
    fail(line, "key '" + key + "' expects a number, got '" + text + "'");
  }
  return d;
}

bool Value::as_bool(const std::string& key) const {
  if (!quoted && text == "true") return true;
  if (!quoted && text == "false") return false;
  fail(line, "key '" + key + "' expects true or false");
}

const std::string& Value::as_string(const std::string& key) const {
  if (!quoted) fail(line, "key '" + key + "' expects a quoted string");
  return text;
}

const Section& Document::section(const std::string& name) const {
  static const Section kEmpty;
  auto it = sections.find(name);
  return it == sections.end() ? kEmpty : it->second;
}

Document parse(std::string_view text) {
  Document doc;
  std::istringstream in{std::string(text)};
  std::string raw;
  std::string current;
  bool have_section = false;
  int line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    const std::string line = trim(strip_comment(raw));
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']') fail(line_no, "malformed section header");
      current = trim(std::string_view(line).substr(1, line.size() - 2));
      if (current.empty()) fail(line_no, "empty section name");
      if (doc.sections.count(current)) fail(line_no, "duplicate section [" + current + "]");
      doc.sections[current];
      have_section = true;
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos) fail(line_no, "expected key = value");
    if (!have_section) fail(line_no, "entry outside of any section");
    const std::string key = trim(std::string_view(line).substr(0, eq));
    if (key.empty()) fail(line_no, "empty key");
    auto& section = doc.sections[current];
    if (section.count(key)) fail(line_no, "duplicate key '" + key + "'");
    section[key] = parse_value(trim(std::string_view(line).substr(eq + 1)), line_no);
  }
  return doc;
}

Document read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse(buf.str());
}

void require_known(const Document& doc, const std::vector<std::string>& allowed) {
  for (const auto& [name, section] : doc.sections) {
    if (std::find(allowed.begin(), allowed.end(), name) == allowed.end()) {
      throw ParseError("unknown section [" + name + "]");
    }
  }
}

void require_known_keys(const Section& section, const std::string& name,
                        const std::vector<std::string>& keys) {
  for (const auto& [key, value] : section) {
    if (std::find(keys.begin(), keys.end(), key) == keys.end()) {
      fail(value.line, "unknown key '" + key + "' in [" + name + "]");
    }
  }
}

std::string quote(std::string_view s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  out += '"';
  return out;
}

}  // namespace singfront::config
