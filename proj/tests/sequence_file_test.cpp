#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <limits>
#include <random>

#include "schoenberg/sequence_file.hpp"

using namespace schoenberg;

TEST(SequenceFile, ExactLayout) {
  const ExactSeq seq(1, {Rational(1, 2), Rational(-3, 10), 0});
  EXPECT_EQ(serialize_sequence(seq),
            "{\n"
            "  \"dimension\": 1,\n"
            "  \"kind\": \"exact\",\n"
            "  \"n_max\": 2,\n"
            "  \"values\": [\n"
            "    \"1/2\",\n"
            "    \"-3/10\",\n"
            "    \"0\"\n"
            "  ]\n"
            "}\n");
}

TEST(SequenceFile, FloatShortestRoundTrip) {
  EXPECT_EQ(format_double(0.1), "0.1");
  EXPECT_EQ(format_double(-2.0), "-2");
  EXPECT_EQ(parse_double("1e-300"), 1e-300);
  EXPECT_THROW(parse_double("nan"), sequence_file_error);
  EXPECT_THROW(parse_double("inf"), sequence_file_error);
  EXPECT_THROW(parse_double("1.5x"), sequence_file_error);
  EXPECT_THROW(parse_double(""), sequence_file_error);
}

TEST(SequenceFile, RationalParsing) {
  EXPECT_EQ(parse_rational("-7/3"), Rational(-7, 3));
  EXPECT_EQ(parse_rational("12"), 12);
  EXPECT_EQ(parse_rational("0"), 0);
  EXPECT_THROW(parse_rational("2/4"), sequence_file_error);
  EXPECT_THROW(parse_rational("1/0"), sequence_file_error);
  EXPECT_THROW(parse_rational("1/-3"), sequence_file_error);
  EXPECT_THROW(parse_rational("0.5"), sequence_file_error);
  EXPECT_THROW(parse_rational(" 1/2"), sequence_file_error);
}

TEST(SequenceFile, RoundTripIsByteIdentical) {
  std::mt19937_64 rng(17);
  std::uniform_int_distribution<std::int64_t> num(-1000000, 1000000);
  std::uniform_int_distribution<std::int64_t> den(1, 999999);
  std::uniform_real_distribution<double> real(-1.0, 1.0);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t len = 1 + trial % 13;
    std::vector<Rational> ev;
    std::vector<double> fv;
    for (std::size_t i = 0; i < len; ++i) {
      ev.emplace_back(num(rng), den(rng));
      fv.push_back(real(rng) * std::pow(10.0, trial % 40 - 20));
    }
    for (const AnySeq& seq : {AnySeq(ExactSeq(1 + trial % 5, ev)), AnySeq(FloatSeq(2, fv))}) {
      const std::string text = serialize_sequence(seq);
      const AnySeq back = parse_sequence(text);
      EXPECT_EQ(back, seq);
      EXPECT_EQ(serialize_sequence(back), text);
    }
  }
}

TEST(SequenceFile, FileRoundTrip) {
  const auto path = std::filesystem::temp_directory_path() / "schoenberg_sequence_file_test.json";
  const AnySeq seq = FloatSeq(3, {0.25, 1.0 / 3.0, std::numeric_limits<double>::min()});
  write_sequence_file(path.string(), seq);
  const std::string first = read_text_file(path.string());
  write_sequence_file(path.string(), read_sequence_file(path.string()));
  EXPECT_EQ(read_text_file(path.string()), first);
  std::filesystem::remove(path);
  EXPECT_THROW(read_sequence_file(path.string()), sequence_file_error);
}

TEST(SequenceFile, Rejections) {
  const char* bad[] = {
      "{",
      "[]",
      R"({"dimension": 1, "n_max": 1, "kind": "exact"})",
      R"({"dimension": 0, "n_max": 0, "kind": "exact", "values": ["1"]})",
      R"({"dimension": 1, "n_max": -1, "kind": "exact", "values": []})",
      R"({"dimension": 1, "n_max": 2, "kind": "exact", "values": ["1", "0"]})",
      R"({"dimension": 1, "n_max": 1, "kind": "exact", "values": ["1", "2/4"]})",
      R"({"dimension": 1, "n_max": 1, "kind": "exact", "values": ["1", 0]})",
      R"({"dimension": 1, "n_max": 0, "kind": "decimal", "values": ["1"]})",
      R"({"dimension": 1, "n_max": 0, "kind": "float", "values": ["nan"]})",
      R"({"dimension": 1.5, "n_max": 0, "kind": "float", "values": ["1"]})",
  };
  for (const char* text : bad) EXPECT_THROW(parse_sequence(text), sequence_file_error) << text;
}

TEST(SequenceFile, AcceptsAnyKeyOrder) {
  const AnySeq seq = parse_sequence(R"({"values": ["1/3", "2/3"], "kind": "exact", "n_max": 1, "dimension": 2})");
  EXPECT_EQ(seq, AnySeq(ExactSeq(2, {Rational(1, 3), Rational(2, 3)})));
}
