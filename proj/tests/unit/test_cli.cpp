#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include "cli.hpp"
#include "json_io.hpp"
#include "shimura/error.hpp"

namespace shimura {
namespace {

namespace fs = std::filesystem;
using io::Json;

struct RunResult {
  int code = 0;
  std::string out;
  std::string err;
};

RunResult run(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::vector<fs::path> fixture_files() {
  std::vector<fs::path> files;
  for (const auto& entry : fs::recursive_directory_iterator(SHIMURA_FIXTURE_DIR))
    if (entry.path().extension() == ".json") files.push_back(entry.path());
  std::sort(files.begin(), files.end());
  return files;
}

class Golden : public ::testing::TestWithParam<fs::path> {};

TEST_P(Golden, MatchesRecordedOutput) {
  std::ifstream in(GetParam());
  const Json fixture = Json::parse(in);
  const auto args = fixture.at("args").get<std::vector<std::string>>();
  const RunResult r = run(args);
  EXPECT_EQ(r.code, fixture.at("exit").get<int>()) << r.err;
  EXPECT_EQ(Json::parse(r.out), fixture.at("stdout"));
  // Identical arguments give identical bytes.
  EXPECT_EQ(run(args).out, r.out);
}

INSTANTIATE_TEST_SUITE_P(Fixtures, Golden, ::testing::ValuesIn(fixture_files()),
                         [](const ::testing::TestParamInfo<fs::path>& info) {
                           std::string name = info.param.parent_path().filename().string() + "_" +
                                              info.param.stem().string();
                           for (char& c : name)
                             if (!std::isalnum(static_cast<unsigned char>(c))) c = '_';
                           return name;
                         });

TEST(Cli, FixtureCorpusCoversEverySubcommand) {
  std::set<std::string> seen;
  for (const auto& f : fixture_files()) seen.insert(f.parent_path().filename().string());
  for (const char* sub : {"witt-check", "newton-slopes", "p-rank", "pel-decompose", "frobenius-chain", "polygons",
                          "mass-formula", "display-deform", "degeneracy", "classify-stability", "hn-hodge", "deuring",
                          "cartier"})
    EXPECT_TRUE(seen.count(sub)) << sub;
}

TEST(Cli, ExitCodes) {
  EXPECT_EQ(run({"--help"}).code, 0);
  EXPECT_EQ(run({}).code, 1);
  EXPECT_EQ(run({"no-such-command"}).code, 1);
  EXPECT_EQ(run({"witt-check"}).code, 1);  // --p is required
  EXPECT_EQ(run({"newton-slopes", "--input", "/nonexistent/file.json"}).code, 1);
  const RunResult bad_json = run({"newton-slopes", "--input", "{\"ctx\": "});
  EXPECT_EQ(bad_json.code, 1);
  EXPECT_EQ(Json::parse(bad_json.out).at("error"), "ParseError");
  const RunResult not_prime = run({"witt-check", "--p", "4"});
  EXPECT_EQ(not_prime.code, 2);
  EXPECT_EQ(Json::parse(not_prime.out).at("error"), "NotPrime");
  EXPECT_FALSE(not_prime.err.empty());
}

TEST(Cli, ErrorKindsHaveDistinctNames) {
  std::set<std::string> names;
  for (int k = 0; k <= static_cast<int>(ErrorKind::ParseError); ++k)
    names.emplace(name(static_cast<ErrorKind>(k)));
  EXPECT_EQ(names.size(), static_cast<std::size_t>(ErrorKind::ParseError) + 1);
}

TEST(Cli, TableReport) {
  const RunResult r = run({"pel-decompose", "--p", "3", "--n", "2", "--f", "2", "--g", "2", "--report", "table"});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("total_rank"), std::string::npos);
  EXPECT_NE(r.out.find("phibar_2*"), std::string::npos);
  EXPECT_THROW(Json::parse(r.out), Json::exception);
}

TEST(Cli, InlineAndFileInputAgree) {
  const std::string crystal = R"({"ctx":{"p":3,"m":2,"n":6},"rank":2,"frobenius":[[0,1],[3,0]]})";
  const fs::path path = fs::temp_directory_path() / "shimura_cli_crystal.json";
  std::ofstream(path) << crystal;
  EXPECT_EQ(run({"newton-slopes", "--input", crystal}).out, run({"newton-slopes", "--input", path.string()}).out);
  fs::remove(path);
}

TEST(Cli, BigIntegersSurviveRoundTrip) {
  const WittContext ctx = make_context(3, 1, 60);
  const WittElem x = ctx.from_integer(mpz_class("123456789012345678901234567"));
  const Json j = io::to_json(x);
  EXPECT_EQ(io::parse_elem(ctx, j), x);
}

}  // namespace
}  // namespace shimura
