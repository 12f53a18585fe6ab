#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <gtest/gtest.h>
#include <json.hpp>

#include "lp2/error.hpp"
#include "lp2_cli.hpp"

using lp2::cli::dispatch;
using nlohmann::json;

namespace {

struct Run {
  int code;
  std::string out, err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream o, e;
  int c = dispatch(args, o, e);
  return {c, o.str(), e.str()};
}

std::string first_line(const std::string& s) { return s.substr(0, s.find('\n')); }

}  // namespace

TEST(Cli, NoArgumentsIsUsage) {
  auto r = run({});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("usage: lp2"), std::string::npos);
  EXPECT_TRUE(r.out.empty());
}

TEST(Cli, UnknownCommand) {
  auto r = run({"frobnicate"});
  EXPECT_NE(r.code, 0);
  EXPECT_NE(r.err.find("usage"), std::string::npos);
}

TEST(Cli, BadOptions) {
  EXPECT_EQ(run({"series", "--tol", "1e-2"}).code, 2);
  EXPECT_EQ(run({"series", "--tol", "1e-14"}).code, 2);
  EXPECT_EQ(run({"series", "--format", "xml"}).code, 2);
  EXPECT_EQ(run({"series", "--y", "abc"}).code, 2);
}

TEST(Cli, LibraryErrorsAreJson) {
  auto r = run({"series", "--y", "0.5"});
  EXPECT_EQ(r.code, 1);
  auto j = json::parse(first_line(r.err));
  EXPECT_EQ(j["error"], "domain");
  EXPECT_TRUE(j.contains("context"));
  auto p = run({"periods", "--y", "10"});
  EXPECT_EQ(p.code, 1);
  EXPECT_EQ(json::parse(first_line(p.err))["error"], "domain");
}

TEST(Cli, VerifyAppendix) {
  auto r = run({"verify-appendix", "--tol", "1e-11"});
  ASSERT_EQ(r.code, 0) << r.err;
  auto j = json::parse(r.out);
  EXPECT_EQ(j["command"], "verify-appendix");
  EXPECT_FALSE(j["flagged"].get<bool>());
  EXPECT_DOUBLE_EQ(j["config"]["tolerance"].get<double>(), 1e-11);
}

TEST(Cli, MirrorObjects) {
  auto r = run({"mirror-objects"});
  ASSERT_EQ(r.code, 0) << r.err;
  auto j = json::parse(r.out);
  auto s = j["results"].dump();
  EXPECT_NE(s.find("[0,0,1]"), std::string::npos) << s;
  EXPECT_NE(s.find("[-1,3,0]"), std::string::npos) << s;
  EXPECT_NE(s.find("[0,1,0]"), std::string::npos) << s;
}

TEST(Cli, CsvHeaders) {
  auto h = [](std::vector<std::string> a) {
    a.push_back("--format");
    a.push_back("csv");
    auto r = run(a);
    EXPECT_EQ(r.code, 0) << r.err;
    return first_line(r.out);
  };
  EXPECT_EQ(h({"series"}), "y_re,y_im,source,w0_re,w0_im,w1_re,w1_im,w2_re,w2_im");
  EXPECT_EQ(h({"monodromy"}), "row,col,value,raw_re,raw_im");
  EXPECT_EQ(h({"periods"}), "y_re,y_im,k,I_re,I_im,err,B_expansion_re,B_expansion_im");
  EXPECT_EQ(h({"mirror-objects"}), "name,basis,c0,c1,c2");
  EXPECT_EQ(h({"ktheory-table"}), "table,row,col,value");
  EXPECT_EQ(h({"reproduce"}), "step,pass,metric,threshold");
}

TEST(Cli, RepeatableY) {
  auto r = run({"series", "--y", "0.01", "--y", "0.002,0.003", "--format", "csv"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("0.002"), std::string::npos);
  EXPECT_NE(r.out.find("0.01"), std::string::npos);
}

TEST(Cli, ParseComplex) {
  EXPECT_EQ(lp2::cli::parse_complex("1.5,-2"), std::complex<double>(1.5, -2.0));
  EXPECT_EQ(lp2::cli::parse_complex("1e3"), std::complex<double>(1000.0, 0.0));
  EXPECT_THROW(lp2::cli::parse_complex("1,"), lp2::Error);
  EXPECT_THROW(lp2::cli::parse_complex("x"), lp2::Error);
}

TEST(Cli, RunConfigValidate) {
  lp2::cli::RunConfig c;
  EXPECT_NO_THROW(c.validate());
  c.tolerance = 1e-13;
  EXPECT_THROW(c.validate(), lp2::Error);
}

TEST(Cli, OutFileAndDeterminism) {
  auto a = run({"reproduce"});
  auto b = run({"reproduce"});
  ASSERT_EQ(a.code, 0) << a.err;
  EXPECT_EQ(a.out, b.out);
  auto path = std::filesystem::temp_directory_path() / "lp2_cli_test_out.json";
  auto c = run({"reproduce", "--out", path.string()});
  EXPECT_EQ(c.code, 0);
  EXPECT_TRUE(c.out.empty());
  std::ifstream f(path, std::ios::binary);
  std::stringstream s;
  s << f.rdbuf();
  EXPECT_EQ(s.str(), a.out);
  std::filesystem::remove(path);
  auto j = json::parse(a.out);
  EXPECT_TRUE(j["results"]["pass"].get<bool>());
}

TEST(Cli, PrecisionFromEnvironment) {
  setenv("LP2_PRECISION", "extended", 1);
  auto r = run({"verify-appendix"});
  unsetenv("LP2_PRECISION");
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(json::parse(r.out)["config"]["precision"], "extended");
  auto d = run({"verify-appendix", "--precision", "double"});
  EXPECT_EQ(json::parse(d.out)["config"]["precision"], "double");
}
