#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "hysnet_cli/cli.hpp"
#include "hysnet_cli/io.hpp"

using namespace hysnet;
using namespace hysnet::cli;

namespace {

const std::string kData = HYSNET_DATA_DIR;

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run_cli(std::vector<std::string> args) {
  args.insert(args.begin(), "hysnet");
  std::ostringstream out, err;
  const int code = run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string data(const std::string& name) { return kData + "/" + name; }

std::filesystem::path write_temp(const std::string& name, const std::string& text) {
  const auto p = std::filesystem::temp_directory_path() / ("hysnet_test_" + name);
  std::ofstream(p) << text;
  return p;
}

std::vector<std::vector<double>> csv_rows(const std::string& text) {
  std::vector<std::vector<double>> rows;
  std::istringstream in(text);
  std::string line;
  std::getline(in, line);  // header
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::vector<double> row;
    std::istringstream ls(line);
    std::string cell;
    while (std::getline(ls, cell, ',')) row.push_back(std::stod(cell));
    rows.push_back(row);
  }
  return rows;
}

}  // namespace

TEST(FormatNumber, ShortestRoundTrip) {
  EXPECT_EQ(format_number(0.0), "0");
  EXPECT_EQ(format_number(-0.0), "0");
  EXPECT_EQ(format_number(0.1), "0.1");
  EXPECT_EQ(format_number(2.5), "2.5");
  EXPECT_EQ(std::stod(format_number(1.0 / 3.0)), 1.0 / 3.0);
}

TEST(ParseNetwork, Valid) {
  const auto net = parse_network(R"({"version": 1, "node_count": 3,
    "springs": [{"i": 2, "j": 3, "a": 1, "r": 2}, {"i": 1, "j": 2, "a": 1, "r": 1}],
    "constraint": {"i": 1, "j": 3}})");
  EXPECT_EQ(net.node_count(), 3);
  EXPECT_EQ(net.label(0), "1_2");
}

TEST(ParseNetwork, ErrorsNameTheField) {
  auto message = [](const std::string& text) {
    try {
      parse_network(text, "net.json");
    } catch (const ParseError& e) {
      return std::string(e.what());
    }
    return std::string();
  };
  EXPECT_NE(message(R"({"node_count": 3, "springs": [], "constraint": {"i": 1, "j": 3}})").find("version"),
            std::string::npos);
  const std::string bad_a = R"({"version": 1, "node_count": 3,
    "springs": [{"i": 1, "j": 2, "a": "x", "r": 1}, {"i": 2, "j": 3, "a": 1, "r": 1}],
    "constraint": {"i": 1, "j": 3}})";
  EXPECT_NE(message(bad_a).find("springs[0].a"), std::string::npos);
  const std::string extra = R"({"version": 1, "node_count": 3, "colour": 1,
    "springs": [{"i": 1, "j": 2, "a": 1, "r": 1}, {"i": 2, "j": 3, "a": 1, "r": 1}],
    "constraint": {"i": 1, "j": 3}})";
  EXPECT_NE(message(extra).find("colour"), std::string::npos);
  const std::string driven = R"({"version": 1, "node_count": 3,
    "springs": [{"i": 1, "j": 2, "a": 1, "r": 1}, {"i": 2, "j": 3, "a": 1, "r": 1}],
    "constraint": {"i": 1, "j": 2}})";
  EXPECT_NE(message(driven).find("constraint"), std::string::npos);
  EXPECT_NE(message("{\n\"version\": 1,\n oops").find("net.json:3"), std::string::npos);
}

TEST(ParseSignal, FirstBreakpointMustBeOrigin) {
  EXPECT_THROW(parse_signal(R"({"breakpoints": [{"t": 0, "g": 1}]})"), ParseError);
  EXPECT_THROW(parse_signal(R"({"breakpoints": [{"t": 0, "g": 0}, {"t": 0, "g": 1}]})"), ParseError);
  EXPECT_EQ(parse_signal(R"({"breakpoints": [{"t": 0, "g": 0}, {"t": 2, "g": 1}]})").size(), 2U);
}

TEST(Cli, NoArgumentsIsUsageError) { EXPECT_EQ(run_cli({}).code, kParseError); }

TEST(Cli, MissingFileIsParseError) {
  const auto r = run_cli({"simulate", data("missing.json"), data("zero.json")});
  EXPECT_EQ(r.code, kParseError);
  EXPECT_NE(r.err.find("missing.json"), std::string::npos);
}

TEST(Cli, UnknownFormatIsParseError) {
  EXPECT_EQ(run_cli({"check", data("chain2.json"), "--format", "xml"}).code, kParseError);
}

TEST(CliSimulate, ZeroSignal) {
  const auto r = run_cli({"simulate", data("chain2.json"), data("zero.json")});
  ASSERT_EQ(r.code, kOk) << r.err;
  EXPECT_EQ(r.out.substr(0, r.out.find('\n')), "t,g,sigma_1_2,sigma_2_3,R");
  for (const auto& row : csv_rows(r.out))
    for (std::size_t k = 1; k < row.size(); ++k) EXPECT_EQ(row[k], 0.0);
}

TEST(CliSimulate, ChainTriangle) {
  const auto r = run_cli({"simulate", data("chain2.json"), data("triangle.json")});
  ASSERT_EQ(r.code, kOk) << r.err;
  const auto rows = csv_rows(r.out);
  ASSERT_FALSE(rows.empty());
  // At g = 4 both springs carry their yield force of the weaker one.
  bool seen_peak = false;
  for (const auto& row : rows)
    if (row[1] == 4.0) {
      EXPECT_NEAR(row[2], 1.0, 1e-12);
      EXPECT_NEAR(row[3], 1.0, 1e-12);
      EXPECT_NEAR(row[4], -1.0, 1e-12);
      seen_peak = true;
    }
  EXPECT_TRUE(seen_peak);
  EXPECT_NEAR(rows.back()[2], -1.0, 1e-12);
}

TEST(CliSimulate, Deterministic) {
  const auto a = run_cli({"simulate", data("five_node.json"), data("triangle.json"), "--dt-max", "0.01"});
  const auto b = run_cli({"simulate", data("five_node.json"), data("triangle.json"), "--dt-max", "0.01"});
  ASSERT_EQ(a.code, kOk) << a.err;
  EXPECT_EQ(a.out, b.out);
}

TEST(CliSimulate, JsonFormat) {
  const auto r = run_cli({"simulate", data("chain2.json"), data("triangle.json"), "--format", "json"});
  ASSERT_EQ(r.code, kOk) << r.err;
  EXPECT_EQ(r.out.front(), '{');
  EXPECT_NE(r.out.find("\"sigma\""), std::string::npos);
}

TEST(CliCheck, ChainPasses) {
  const auto r = run_cli({"check", data("chain2.json")});
  ASSERT_EQ(r.code, kOk) << r.err;
  EXPECT_NE(r.out.find("overall=true"), std::string::npos);
  const auto pos = r.out.find("# reaction stops\na,rho\n");
  ASSERT_NE(pos, std::string::npos);
  const auto rows = csv_rows(r.out.substr(pos + std::string("# reaction stops\n").size()));
  ASSERT_EQ(rows.size(), 1U);
  EXPECT_NEAR(rows[0][0], 0.5, 1e-15);
  EXPECT_NEAR(rows[0][1], 2.0, 1e-15);
}

TEST(CliCheck, DoubleHitFailsWithExitFour) {
  const auto r = run_cli({"check", data("double_hit.json")});
  EXPECT_EQ(r.code, kCheckFailed);
  EXPECT_NE(r.out.find("unit_dim_drops=false"), std::string::npos);
  EXPECT_NE(r.out.find("\nunit_dim_drops,"), std::string::npos);
}

TEST(CliCheck, BridgeFailsOmega) {
  const auto r = run_cli({"check", data("bridge.json"), "--format", "json"});
  EXPECT_EQ(r.code, kCheckFailed);
  EXPECT_NE(r.out.find("\"omega_contained\": false"), std::string::npos);
}

TEST(CliCompare, ChainTriangleAgrees) {
  const auto sig = write_temp("small_triangle.json", R"({"breakpoints": [{"t": 0, "g": 0}, {"t": 1, "g": 2}, {"t": 2, "g": -1.5}]})");
  const auto r = run_cli({"compare", data("chain2.json"), sig.string()});
  ASSERT_EQ(r.code, kOk) << r.err;
  for (const auto& row : csv_rows(r.out)) EXPECT_LE(row[2], 1e-12);
  EXPECT_NE(r.out.find("equivalent=true"), std::string::npos);
}

TEST(CliCompare, BeyondHorizonExitsThree) {
  const auto r = run_cli({"compare", data("chain2.json"), data("triangle.json")});
  EXPECT_EQ(r.code, kHorizonViolation);
  EXPECT_NE(r.err.find("L = 2"), std::string::npos);
}

TEST(CliCompare, AllowBeyondSaturationWarns) {
  const auto r = run_cli({"compare", data("chain2.json"), data("triangle.json"), "--allow-beyond-saturation"});
  EXPECT_EQ(r.code, kOk);
  EXPECT_NE(r.err.find("warning"), std::string::npos);
}
