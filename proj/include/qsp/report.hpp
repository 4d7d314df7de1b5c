#pragma once

// Command results: an ordered key/value record, or a single bare value.

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace qsp {

enum class Format { text, kv };

struct Report {
  std::optional<std::string> value;
  std::vector<std::pair<std::string, std::string>> entries;
  bool passed = true;

  void add(std::string key, std::string value);
  /// Adds "pass ..." or "FAIL ..." and folds the verdict into `passed`.
  void check(std::string key, bool ok, const std::string& detail = "");
  void append(const Report& other);
};

/// Key as written in kv output: characters outside [A-Za-z0-9._^+-] become
/// '_', runs of '_' collapse and trailing '_' is dropped.
std::string kv_key(const std::string& key);

/// text: "key: value" lines, or the bare value; kv: "key=value" lines.
std::string render(const Report& r, Format f);

}  // namespace qsp
