#pragma once

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iterator>
#include <sstream>
#include <string>
#include <string_view>

#include <nlohmann/json.hpp>

#include "ftks/errors.hpp"
#include "ftks/instance.hpp"

namespace ftks {

using ordered_json = nlohmann::ordered_json;

namespace detail {

inline std::int64_t require_int(const nlohmann::json& doc, const char* key) {
  if (!doc.contains(key)) throw ParseError(std::string("missing field \"") + key + "\"");
  const auto& v = doc.at(key);
  if (!v.is_number_integer()) throw ParseError(std::string("field \"") + key + "\" must be an integer");
  return v.get<std::int64_t>();
}

inline const nlohmann::json& require_array(const nlohmann::json& doc, const char* key) {
  if (!doc.contains(key)) throw ParseError(std::string("missing field \"") + key + "\"");
  const auto& v = doc.at(key);
  if (!v.is_array()) throw ParseError(std::string("field \"") + key + "\" must be an array");
  return v;
}

}  // namespace detail

/// Parses and validates an instance document:
/// {"n", "f", "k", "m", "ell": [n ints], "dist": [(n+f)^2 numbers]}.
inline Instance load_instance(std::string_view document) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(document.begin(), document.end());
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("malformed JSON: ") + e.what());
  }
  if (!doc.is_object()) throw ParseError("instance document must be a JSON object");

  const auto n = detail::require_int(doc, "n");
  const auto f = detail::require_int(doc, "f");
  const auto k = detail::require_int(doc, "k");
  const auto m = detail::require_int(doc, "m");
  if (n < 0 || f < 0) throw ParseError("n and f must be nonnegative");

  std::vector<int> ell;
  for (const auto& e : detail::require_array(doc, "ell")) {
    if (!e.is_number_integer()) throw ParseError("ell entries must be integers");
    ell.push_back(e.get<int>());
  }
  std::vector<double> dist;
  for (const auto& e : detail::require_array(doc, "dist")) {
    if (!e.is_number()) throw ParseError("dist entries must be numbers");
    dist.push_back(e.get<double>());
  }
  const auto points = static_cast<std::size_t>(n + f);
  if (ell.size() != static_cast<std::size_t>(n)) throw ParseError("ell must have n entries");
  if (dist.size() != points * points) throw ParseError("dist must have (n+f)^2 entries");

  Instance inst(static_cast<std::size_t>(n), static_cast<std::size_t>(f), static_cast<int>(k),
                static_cast<int>(m), std::move(ell), std::move(dist));
  validate_instance(inst);
  return inst;
}

/// Canonical document: two-space indentation, keys in schema order, trailing
/// newline. load_instance(save_instance(i)) == i.
inline std::string save_instance(const Instance& inst) {
  ordered_json doc;
  doc["n"] = inst.num_clients();
  doc["f"] = inst.num_facilities();
  doc["k"] = inst.k();
  doc["m"] = inst.m();
  doc["ell"] = std::vector<int>(inst.ells().begin(), inst.ells().end());
  doc["dist"] = std::vector<double>(inst.dist_table().begin(), inst.dist_table().end());
  return doc.dump(2) + "\n";
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open " + path);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

inline Instance load_instance_file(const std::string& path) { return load_instance(read_file(path)); }

/// 64-bit FNV-1a of the canonical serialization, as 16 hex digits.
inline std::string instance_digest(const Instance& inst) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : save_instance(inst)) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace ftks
