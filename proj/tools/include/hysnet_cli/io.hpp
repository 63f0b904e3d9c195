#pragma once

#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>

#include "hysnet/hysteresis.hpp"
#include "hysnet/network.hpp"

namespace hysnet::cli {

/// Malformed input file. The message names the file and the offending field
/// or line.
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Network file:
///   {"version": 1, "node_count": N,
///    "springs": [{"i": 1, "j": 2, "a": 1.0, "r": 1.0}, ...],
///    "constraint": {"i": 1, "j": N}}
SpringNetwork parse_network(std::string_view text, const std::string& source = "<network>");
SpringNetwork load_network(const std::filesystem::path& path);

/// Signal file: {"version": 1, "breakpoints": [{"t": 0, "g": 0}, ...]}.
/// "version" is optional; the first breakpoint must be (0, 0).
Signal parse_signal(std::string_view text, const std::string& source = "<signal>");
Signal load_signal(const std::filesystem::path& path);

/// Shortest decimal text that reads back to the same double.
std::string format_number(double x);

}  // namespace hysnet::cli
