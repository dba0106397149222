#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "abduct/partial_example.hpp"
#include "abduct/rng.hpp"

namespace abduct {

/// A set of partial examples over a fixed attribute universe.
struct Dataset {
  std::vector<std::string> attribute_names;  // unique; defaults x1..xn
  std::vector<PartialExample> rows;
  std::size_t n = 0;

  std::size_t size() const { return rows.size(); }

  static std::vector<std::string> default_names(std::size_t n);
};

// Masking processes: how a total assignment loses coordinates. Masking hides,
// never corrupts, so an observed coordinate always equals the ground truth.

struct IndependentMask {
  double hide_probability = 0.0;
};

struct FixedSubsetMask {
  std::vector<std::uint32_t> hidden;  // attribute indices, always masked
};

struct ValueDependentMask {
  // hide[attr][value] = probability of masking that attribute given its value
  std::vector<std::array<double, 2>> hide;
};

using MaskProcess = std::variant<IndependentMask, FixedSubsetMask, ValueDependentMask>;

PartialExample mask(const std::vector<bool>& assignment, const MaskProcess& process, Rng& rng);

enum class DataFormat { Csv, Jsonl };

struct FormatError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// CSV: header of attribute names, then rows of cells in {0,1,*} ('?' accepted
// for '*'). JSONL: first line {"attributes":[...]}, then {"values":"10*"} per
// row. save_dataset output reloads to an equal dataset and is byte-stable.
Dataset load_dataset(std::istream& in, DataFormat format);
void save_dataset(const Dataset& d, std::ostream& out, DataFormat format);

Dataset load_dataset_string(const std::string& text, DataFormat format);
std::string save_dataset_string(const Dataset& d, DataFormat format);

}  // namespace abduct
