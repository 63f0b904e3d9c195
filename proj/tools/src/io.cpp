#include "hysnet_cli/io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <initializer_list>
#include <sstream>

#include "json.hpp"

#include "hysnet/error.hpp"

namespace hysnet::cli {

namespace {

using nlohmann::json;

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError(path.string() + ": cannot open file");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

json parse_json(std::string_view text, const std::string& source) {
  try {
    return json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    const auto upto = std::min<std::size_t>(e.byte, text.size());
    const auto line = 1 + std::count(text.begin(), text.begin() + static_cast<std::ptrdiff_t>(upto), '\n');
    throw ParseError(source + ":" + std::to_string(line) + ": invalid JSON (" + e.what() + ")");
  }
}

void reject_unknown(const json& obj, std::initializer_list<std::string_view> allowed, const std::string& where) {
  for (const auto& [key, _] : obj.items())
    if (std::find(allowed.begin(), allowed.end(), key) == allowed.end())
      throw ParseError(where + ": unknown field \"" + key + "\"");
}

const json& require(const json& obj, const char* key, const std::string& where) {
  const auto it = obj.find(key);
  if (it == obj.end()) throw ParseError(where + ": missing field \"" + key + "\"");
  return *it;
}

double number_at(const json& obj, const char* key, const std::string& where) {
  const json& v = require(obj, key, where);
  if (!v.is_number()) throw ParseError(where + "." + key + ": expected a number");
  const double x = v.get<double>();
  if (!std::isfinite(x)) throw ParseError(where + "." + key + ": expected a finite number");
  return x;
}

int integer_at(const json& obj, const char* key, const std::string& where) {
  const json& v = require(obj, key, where);
  if (!v.is_number_integer()) throw ParseError(where + "." + key + ": expected an integer");
  return v.get<int>();
}

void check_version(const json& root, const std::string& source, bool required) {
  if (!root.contains("version")) {
    if (required) throw ParseError(source + ": missing field \"version\"");
    return;
  }
  if (integer_at(root, "version", source) != 1) throw ParseError(source + ".version: unsupported version");
}

}  // namespace

SpringNetwork parse_network(std::string_view text, const std::string& source) {
  const json root = parse_json(text, source);
  if (!root.is_object()) throw ParseError(source + ": top level must be an object");
  reject_unknown(root, {"version", "node_count", "springs", "constraint"}, source);
  check_version(root, source, true);
  const int n = integer_at(root, "node_count", source);

  const json& springs = require(root, "springs", source);
  if (!springs.is_array()) throw ParseError(source + ".springs: expected an array");
  std::vector<Spring> out;
  for (std::size_t k = 0; k < springs.size(); ++k) {
    const std::string where = source + ".springs[" + std::to_string(k) + "]";
    const json& s = springs[k];
    if (!s.is_object()) throw ParseError(where + ": expected an object");
    reject_unknown(s, {"i", "j", "a", "r"}, where);
    out.push_back({integer_at(s, "i", where), integer_at(s, "j", where), number_at(s, "a", where),
                   number_at(s, "r", where)});
  }

  const json& c = require(root, "constraint", source);
  const std::string cw = source + ".constraint";
  if (!c.is_object()) throw ParseError(cw + ": expected an object");
  reject_unknown(c, {"i", "j"}, cw);
  const int ci = integer_at(c, "i", cw);
  const int cj = integer_at(c, "j", cw);
  if (std::min(ci, cj) != 1 || std::max(ci, cj) != n)
    throw ParseError(cw + ": the driven pair must be (1, node_count)");

  try {
    return SpringNetwork(n, std::move(out));
  } catch (const InvalidArgument& e) {
    throw ParseError(source + ": " + e.what());
  }
}

SpringNetwork load_network(const std::filesystem::path& path) {
  return parse_network(read_file(path), path.string());
}

Signal parse_signal(std::string_view text, const std::string& source) {
  const json root = parse_json(text, source);
  if (!root.is_object()) throw ParseError(source + ": top level must be an object");
  reject_unknown(root, {"version", "breakpoints"}, source);
  check_version(root, source, false);
  const json& bps = require(root, "breakpoints", source);
  if (!bps.is_array() || bps.empty()) throw ParseError(source + ".breakpoints: expected a nonempty array");
  std::vector<SignalPoint> pts;
  for (std::size_t k = 0; k < bps.size(); ++k) {
    const std::string where = source + ".breakpoints[" + std::to_string(k) + "]";
    if (!bps[k].is_object()) throw ParseError(where + ": expected an object");
    reject_unknown(bps[k], {"t", "g"}, where);
    pts.push_back({number_at(bps[k], "t", where), number_at(bps[k], "g", where)});
  }
  if (pts.front().t != 0.0 || pts.front().g != 0.0)
    throw ParseError(source + ".breakpoints[0]: first breakpoint must be {\"t\": 0, \"g\": 0}");
  try {
    return Signal(std::move(pts));
  } catch (const InvalidArgument& e) {
    throw ParseError(source + ".breakpoints: " + e.what());
  }
}

Signal load_signal(const std::filesystem::path& path) { return parse_signal(read_file(path), path.string()); }

std::string format_number(double x) {
  if (x == 0.0) return "0";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

}  // namespace hysnet::cli
