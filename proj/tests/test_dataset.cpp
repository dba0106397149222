#include <doctest.h>

#include <cmath>

#include "abduct/dataset.hpp"
#include "helpers.hpp"

using namespace abduct;

TEST_SUITE("dataset") {

TEST_CASE("masking trivial processes") {
  Rng rng(7);
  std::vector<bool> a{true, false, true};

  PartialExample none = mask(a, IndependentMask{0.0}, rng);
  CHECK(none.to_string() == "101");

  PartialExample all = mask(a, IndependentMask{1.0}, rng);
  CHECK(all.to_string() == "***");

  PartialExample subset = mask(a, FixedSubsetMask{{1}}, rng);
  CHECK(subset.to_string() == "1*1");
}

TEST_CASE("masking hides but never corrupts") {
  Rng rng(8);
  for (int round = 0; round < 200; ++round) {
    std::size_t n = 1 + rand_below(rng, 10);
    std::vector<bool> a = abduct::testing::random_assignment(rng, n);

    MaskProcess process;
    switch (rand_below(rng, 3)) {
      case 0: process = IndependentMask{rand_unit(rng)}; break;
      case 1: {
        FixedSubsetMask fixed;
        for (std::size_t i = 0; i < n; ++i)
          if (rand_bool(rng, 0.3)) fixed.hidden.push_back(static_cast<std::uint32_t>(i));
        process = fixed;
        break;
      }
      default: {
        ValueDependentMask dep;
        dep.hide.resize(n);
        for (auto& cell : dep.hide) cell = {rand_unit(rng), rand_unit(rng)};
        process = dep;
        break;
      }
    }

    PartialExample rho = mask(a, process, rng);
    REQUIRE(rho.size() == n);
    for (std::size_t i = 0; i < n; ++i) {
      if (rho.observed(i)) CHECK((rho[i] == TriValue::True) == a[i]);
    }
  }
}

TEST_CASE("independent mask hits its rate") {
  Rng rng(9);
  const double p = 0.3;
  const std::size_t coords = 100000;
  std::vector<bool> a(coords, true);
  PartialExample rho = mask(a, IndependentMask{p}, rng);
  std::size_t hidden = 0;
  for (std::size_t i = 0; i < coords; ++i)
    if (!rho.observed(i)) ++hidden;
  double rate = static_cast<double>(hidden) / coords;
  double sigma = std::sqrt(p * (1 - p) / coords);
  CHECK(std::abs(rate - p) <= 3 * sigma);
}

TEST_CASE("csv loads the documented shape") {
  Dataset d = load_dataset_string("x1,x2\n1,*\n0,1", DataFormat::Csv);
  CHECK(d.n == 2);
  REQUIRE(d.rows.size() == 2);
  CHECK(d.rows[0].to_string() == "1*");
  CHECK(d.rows[1].to_string() == "01");

  // '?' is an accepted alias on input, canonicalized to '*'.
  Dataset alias = load_dataset_string("a\n?\n", DataFormat::Csv);
  CHECK(alias.rows[0].to_string() == "*");
}

TEST_CASE("csv rejects bad cells with position") {
  try {
    load_dataset_string("x1,x2\n1,2\n", DataFormat::Csv);
    FAIL("expected a format error");
  } catch (const FormatError& e) {
    std::string what = e.what();
    CHECK(what.find("row 1") != std::string::npos);
    CHECK(what.find("column 2") != std::string::npos);
  }
  CHECK_THROWS_AS(load_dataset_string("x1,x2\n1\n", DataFormat::Csv), FormatError);
  CHECK_THROWS_AS(load_dataset_string("x1,x1\n1,1\n", DataFormat::Csv), FormatError);
  CHECK_THROWS_AS(load_dataset_string("", DataFormat::Csv), FormatError);
}

TEST_CASE("empty rows section is a valid dataset") {
  Dataset d = load_dataset_string("x1,x2\n", DataFormat::Csv);
  CHECK(d.n == 2);
  CHECK(d.rows.empty());
  CHECK(save_dataset_string(d, DataFormat::Csv) == "x1,x2\n");
}

TEST_CASE("jsonl format") {
  Dataset d;
  d.n = 3;
  d.attribute_names = Dataset::default_names(3);
  d.rows.push_back(PartialExample::from_string("1*0"));
  std::string text = save_dataset_string(d, DataFormat::Jsonl);
  CHECK(text == "{\"attributes\":[\"x1\",\"x2\",\"x3\"]}\n{\"values\":\"1*0\"}\n");

  Dataset back = load_dataset_string(text, DataFormat::Jsonl);
  CHECK(back.n == 3);
  REQUIRE(back.rows.size() == 1);
  CHECK(back.rows[0] == d.rows[0]);

  CHECK_THROWS_AS(load_dataset_string("{\"attributes\":[\"x1\"]}\n{\"values\":\"10\"}\n",
                                      DataFormat::Jsonl),
                  FormatError);
}

TEST_CASE("save and load round-trip") {
  Rng rng(10);
  for (int round = 0; round < 50; ++round) {
    Dataset d;
    d.n = 1 + rand_below(rng, 6);
    d.attribute_names = Dataset::default_names(d.n);
    std::size_t rows = rand_below(rng, 8);
    for (std::size_t i = 0; i < rows; ++i)
      d.rows.push_back(abduct::testing::random_partial(rng, d.n, 0.6));

    for (DataFormat format : {DataFormat::Csv, DataFormat::Jsonl}) {
      std::string text = save_dataset_string(d, format);
      Dataset back = load_dataset_string(text, format);
      CHECK(back.attribute_names == d.attribute_names);
      CHECK(back.rows == d.rows);
      // canonical files reload to canonical files
      CHECK(save_dataset_string(back, format) == text);
    }
  }
}

}  // TEST_SUITE
