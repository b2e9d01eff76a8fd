#include <gtest/gtest.h>

#include "singfront/config.hpp"
#include "singfront/error.hpp"

namespace config = singfront::config;

TEST(Config, ReadsSectionsAndValues) {
  const auto doc = config::parse(
      "# leading comment\n"
      "[problem]\n"
      "alpha = 2   # trailing comment\n"
      "f = \"u # not a comment\"\n"
      "\n"
      "[numerics]\n"
      "rtol = 1e-9\n");
  ASSERT_EQ(doc.sections.size(), 2u);
  const auto& p = doc.section("problem");
  EXPECT_EQ(p.at("alpha").as_number("alpha"), 2.0);
  EXPECT_EQ(p.at("f").as_string("f"), "u # not a comment");
  EXPECT_EQ(doc.section("numerics").at("rtol").as_number("rtol"), 1e-9);
  EXPECT_TRUE(doc.section("absent").empty());
}

TEST(Config, Booleans) {
  const auto doc = config::parse("[s]\na = true\nb = false\nc = \"true\"\n");
  const auto& s = doc.section("s");
  EXPECT_TRUE(s.at("a").as_bool("a"));
  EXPECT_FALSE(s.at("b").as_bool("b"));
  EXPECT_THROW(s.at("c").as_bool("c"), singfront::ParseError);
}

TEST(Config, RejectsMalformedInput) {
  EXPECT_THROW(config::parse("alpha = 1\n"), singfront::ParseError);
  EXPECT_THROW(config::parse("[a]\nx = 1\nx = 2\n"), singfront::ParseError);
  EXPECT_THROW(config::parse("[a]\n[a]\n"), singfront::ParseError);
  EXPECT_THROW(config::parse("[a]\nx = \"open\n"), singfront::ParseError);
  EXPECT_THROW(config::parse("[a\n"), singfront::ParseError);
  EXPECT_THROW(config::parse("[a]\njust text\n"), singfront::ParseError);
  EXPECT_THROW(config::parse("[a]\nx =\n"), singfront::ParseError);
  EXPECT_THROW(config::parse("[a]\nx = 1 2\n"), singfront::ParseError);
}

TEST(Config, TypeMismatchNamesTheKey) {
  const auto doc = config::parse("[a]\nx = \"1\"\ny = abc\n");
  try {
    doc.section("a").at("y").as_number("y");
    FAIL();
  } catch (const singfront::ParseError& e) {
    EXPECT_NE(std::string(e.what()).find("'y'"), std::string::npos);
    EXPECT_NE(std::string(e.what()).find("line 3"), std::string::npos);
  }
  EXPECT_THROW(doc.section("a").at("x").as_number("x"), singfront::ParseError);
  EXPECT_THROW(doc.section("a").at("y").as_string("y"), singfront::ParseError);
}

TEST(Config, UnknownSectionsAndKeys) {
  const auto doc = config::parse("[a]\nx = 1\n[b]\n");
  EXPECT_NO_THROW(config::require_known(doc, {"a", "b"}));
  EXPECT_THROW(config::require_known(doc, {"a"}), singfront::ParseError);
  EXPECT_NO_THROW(config::require_known_keys(doc.section("a"), "a", {"x"}));
  EXPECT_THROW(config::require_known_keys(doc.section("a"), "a", {"z"}), singfront::ParseError);
}

TEST(Config, QuoteRoundTrips) {
  const std::string tricky = "a \"b\" \\ c";
  const auto doc = config::parse("[s]\nk = " + config::quote(tricky) + "\n");
  EXPECT_EQ(doc.section("s").at("k").as_string("k"), tricky);
}

TEST(Config, MissingFile) {
  EXPECT_THROW(config::read_file("/nonexistent/problem.toml"), singfront::ParseError);
}
