#include <gtest/gtest.h>

#include <cstdio>
#include <fstream>
#include <sstream>

#include "subsym/error.hpp"
#include "subsym/spec_io.hpp"
#include "support.hpp"

using namespace subsym;
using subsym::oracle::corpus_names;
using subsym::oracle::corpus_path;

namespace {

const char *kTm1d = R"({"name": "tm", "dim": 1, "size": [2], "alphabet": ["0", "1"],
  "rules": {"0": ["0", "1"], "1": ["1", "0"]}})";

std::string error_of(const std::string &text) {
  try {
    parse_spec(text);
  } catch (const ParseError &e) {
    return e.what();
  }
  return "";
}

std::string slurp(const std::string &path) {
  std::ifstream in(path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

} // namespace

TEST(SpecIo, ParsesThueMorse) {
  const SubstitutionSpec s = parse_spec(kTm1d);
  EXPECT_EQ(s.name, "tm");
  EXPECT_EQ(s.dim, 1u);
  EXPECT_EQ(s.size, (std::vector<std::int64_t>{2}));
  const RectSubstitution theta = to_substitution(s);
  EXPECT_EQ(theta.rule(1).cells(), (std::vector<Symbol>{1, 0}));
}

TEST(SpecIo, NestingPutsCoordinateOneInnermost) {
  const auto theta = to_substitution(parse_spec(R"({"name": "n", "dim": 2, "size": [3, 2],
    "alphabet": ["a", "b"],
    "rules": {"a": [["a", "b", "b"], ["b", "a", "a"]], "b": [["b", "b", "b"], ["a", "a", "a"]]}})"));
  EXPECT_EQ(theta.size(), (LatticeVec{3, 2}));
  EXPECT_EQ(theta.rule(0).at({1, 0}), 1);
  EXPECT_EQ(theta.rule(0).at({0, 1}), 1);
  EXPECT_EQ(theta.rule(0).at({2, 1}), 0);
  EXPECT_EQ(theta.rule(1).at({2, 1}), 0);
}

TEST(SpecIo, ThueMorseTwoDimensionsIsBijective) {
  const auto theta = to_substitution(read_spec_file(corpus_path("tm2d")));
  EXPECT_TRUE(is_bijective(theta));
  Rect::from_extent({2, 2}).for_each([&](const LatticeVec &m) {
    for (Symbol a = 0; a < 2; ++a)
      EXPECT_EQ(theta.rule(a).at(m), (a + m[0] + m[1]) % 2);
  });
}

TEST(SpecIo, LocatedErrors) {
  EXPECT_NE(error_of(R"({"name": "t", "dim": 1, "size": [2], "alphabet": ["0", "1"],
    "rules": {"0": ["0", "1", "1"], "1": ["1", "0"]}})")
                .find("$.rules.0"),
            std::string::npos);
  EXPECT_NE(error_of(R"({"name": "t", "dim": 2, "size": [2, 2], "alphabet": ["0", "1"],
    "rules": {"0": [["0", "1"], ["1"]], "1": [["1", "0"], ["0", "1"]]}})")
                .find("$.rules.0[1]"),
            std::string::npos);
  EXPECT_NE(error_of(R"({"name": "t", "dim": 1, "size": [1], "alphabet": ["0", "1"],
    "rules": {"0": ["0"], "1": ["1"]}})")
                .find("$.size[0]"),
            std::string::npos);
  EXPECT_NE(error_of(R"({"name": "t", "dim": 1, "size": [2], "alphabet": ["0", "1"],
    "rules": {"0": ["0", "2"], "1": ["1", "0"]}})")
                .find("unknown symbol '2'"),
            std::string::npos);
  EXPECT_NE(error_of(R"({"name": "t", "dim": 1, "size": [2], "alphabet": ["0", "1"], "extra": 1,
    "rules": {"0": ["0", "1"], "1": ["1", "0"]}})")
                .find("$.extra"),
            std::string::npos);
  EXPECT_NE(error_of(R"({"name": "t", "dim": 1, "size": [2], "alphabet": ["0", "0"],
    "rules": {"0": ["0", "0"]}})")
                .find("duplicate"),
            std::string::npos);
  EXPECT_NE(error_of(R"({"name": "t", "dim": 1, "size": [2], "alphabet": ["0", "1"],
    "rules": {"0": ["0", "1"]}})")
                .find("no rule for symbol '1'"),
            std::string::npos);
  EXPECT_NE(error_of("{\n  \"name\": \"t\",\n  \"dim\": 1,,\n}").find("3:"), std::string::npos);
  EXPECT_NE(error_of(R"({"name": "t", "dim": 7, "size": [2], "alphabet": ["0", "1"],
    "rules": {}})")
                .find("$.dim"),
            std::string::npos);
  EXPECT_THROW(read_spec_file("/nonexistent/x.spec"), ParseError);
}

TEST(SpecIo, CanonicalRoundTrip) {
  for (const auto &name : corpus_names()) {
    const std::string text = slurp(corpus_path(name));
    const SubstitutionSpec s = parse_spec(text);
    const std::string canon = serialize_spec(s);
    EXPECT_EQ(canon, text) << name; // corpus files are stored canonically
    EXPECT_EQ(parse_spec(canon), s);
    EXPECT_EQ(serialize_spec(parse_spec(canon)), canon);
    EXPECT_EQ(from_substitution(to_substitution(s), s.name), s);
  }
}

TEST(SpecIo, HashIsStableAndDiscriminating) {
  const SubstitutionSpec a = parse_spec(kTm1d);
  SubstitutionSpec b = a;
  b.name = "other";
  EXPECT_EQ(spec_hash(a).size(), 16u);
  EXPECT_EQ(spec_hash(a), spec_hash(parse_spec(serialize_spec(a))));
  EXPECT_NE(spec_hash(a), spec_hash(b));
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char c : serialize_spec(a))
    h = (h ^ c) * 1099511628211ull;
  char hex[17];
  std::snprintf(hex, sizeof hex, "%016llx", static_cast<unsigned long long>(h));
  EXPECT_EQ(spec_hash(a), hex);
}
