#include "qsp/report.hpp"

#include <cctype>
#include <cstring>

namespace qsp {

void Report::add(std::string key, std::string v) { entries.emplace_back(std::move(key), std::move(v)); }

void Report::check(std::string key, bool ok, const std::string& detail) {
  std::string v = ok ? "pass" : "FAIL";
  if (!detail.empty()) v += " " + detail;
  add(std::move(key), std::move(v));
  passed = passed && ok;
}

void Report::append(const Report& other) {
  for (const auto& e : other.entries) entries.push_back(e);
  passed = passed && other.passed;
}

std::string kv_key(const std::string& key) {
  std::string out;
  for (char c : key) {
    const bool keep = std::isalnum(static_cast<unsigned char>(c)) || std::strchr("._^+-", c) != nullptr;
    if (keep)
      out += c;
    else if (!out.empty() && out.back() != '_')
      out += '_';
  }
  while (!out.empty() && out.back() == '_') out.pop_back();
  return out;
}

std::string render(const Report& r, Format f) {
  std::string out;
  if (r.value) {
    out = f == Format::text ? *r.value : "result=" + *r.value;
    out += "\n";
  }
  for (const auto& [k, v] : r.entries) out += (f == Format::text ? k + ": " : kv_key(k) + "=") + v + "\n";
  return out;
}

}  // namespace qsp
