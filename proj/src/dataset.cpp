#include "abduct/dataset.hpp"

#include <algorithm>
#include <istream>
#include <ostream>
#include <sstream>
#include <unordered_set>

#include <json.hpp>

namespace abduct {

std::vector<std::string> Dataset::default_names(std::size_t n) {
  std::vector<std::string> names;
  names.reserve(n);
  for (std::size_t i = 0; i < n; ++i) names.push_back("x" + std::to_string(i + 1));
  return names;
}

PartialExample mask(const std::vector<bool>& assignment, const MaskProcess& process, Rng& rng) {
  const std::size_t n = assignment.size();
  PartialExample out(n);
  auto keep = [&](std::size_t i) {
    out[i] = assignment[i] ? TriValue::True : TriValue::False;
  };

  if (const auto* ind = std::get_if<IndependentMask>(&process)) {
    if (ind->hide_probability < 0.0 || ind->hide_probability > 1.0)
      throw std::invalid_argument("hide probability must be in [0,1]");
    for (std::size_t i = 0; i < n; ++i) {
      if (!rand_bool(rng, ind->hide_probability)) keep(i);
    }
    return out;
  }
  if (const auto* fixed = std::get_if<FixedSubsetMask>(&process)) {
    std::vector<bool> hidden(n, false);
    for (std::uint32_t a : fixed->hidden) {
      if (a >= n) throw std::invalid_argument("hidden attribute index out of range");
      hidden[a] = true;
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (!hidden[i]) keep(i);
    }
    return out;
  }
  const auto& dep = std::get<ValueDependentMask>(process);
  if (dep.hide.size() != n)
    throw std::invalid_argument("value-dependent mask table must cover every attribute");
  for (std::size_t i = 0; i < n; ++i) {
    double p = dep.hide[i][assignment[i] ? 1 : 0];
    if (p < 0.0 || p > 1.0) throw std::invalid_argument("hide probability must be in [0,1]");
    if (!rand_bool(rng, p)) keep(i);
  }
  return out;
}

// ---------------------------------------------------------------------------
// CSV

namespace {

std::vector<std::string> split_lines(std::istream& in) {
  std::vector<std::string> lines;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    lines.push_back(line);
  }
  return lines;
}

std::string trim(const std::string& s) {
  std::size_t b = s.find_first_not_of(" \t");
  if (b == std::string::npos) return "";
  std::size_t e = s.find_last_not_of(" \t");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split_cells(const std::string& line) {
  std::vector<std::string> cells;
  std::string cur;
  for (char c : line) {
    if (c == ',') {
      cells.push_back(trim(cur));
      cur.clear();
    } else {
      cur += c;
    }
  }
  cells.push_back(trim(cur));
  return cells;
}

void check_names(const std::vector<std::string>& names) {
  std::unordered_set<std::string> seen;
  for (const std::string& name : names) {
    if (name.empty()) throw FormatError("empty attribute name");
    if (!seen.insert(name).second)
      throw FormatError("duplicate attribute name \"" + name + "\"");
  }
}

Dataset load_csv(std::istream& in) {
  std::vector<std::string> lines = split_lines(in);
  if (lines.empty()) throw FormatError("missing CSV header");
  Dataset d;
  d.attribute_names = split_cells(lines[0]);
  check_names(d.attribute_names);
  d.n = d.attribute_names.size();
  for (std::size_t r = 1; r < lines.size(); ++r) {
    if (lines[r].empty()) {
      if (r + 1 == lines.size()) break;  // trailing newline
      throw FormatError("empty row " + std::to_string(r));
    }
    std::vector<std::string> cells = split_cells(lines[r]);
    if (cells.size() != d.n)
      throw FormatError("ragged row " + std::to_string(r) + ": expected " + std::to_string(d.n) +
                        " cells, found " + std::to_string(cells.size()));
    PartialExample row(d.n);
    for (std::size_t c = 0; c < cells.size(); ++c) {
      if (cells[c].size() != 1 || !trivalue_from_char(cells[c][0]))
        throw FormatError("illegal cell value \"" + cells[c] + "\" at row " + std::to_string(r) +
                          ", column " + std::to_string(c + 1));
      row[c] = *trivalue_from_char(cells[c][0]);
    }
    d.rows.push_back(std::move(row));
  }
  return d;
}

void save_csv(const Dataset& d, std::ostream& out) {
  for (std::size_t i = 0; i < d.attribute_names.size(); ++i) {
    if (i) out << ',';
    out << d.attribute_names[i];
  }
  out << '\n';
  for (const PartialExample& row : d.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out << ',';
      out << to_char(row[i]);
    }
    out << '\n';
  }
}

// ---------------------------------------------------------------------------
// JSONL

Dataset load_jsonl(std::istream& in) {
  std::vector<std::string> lines = split_lines(in);
  if (lines.empty()) throw FormatError("missing JSONL attribute line");
  Dataset d;
  try {
    nlohmann::json header = nlohmann::json::parse(lines[0]);
    if (!header.contains("attributes") || !header["attributes"].is_array())
      throw FormatError("first JSONL line must carry an \"attributes\" array");
    for (const auto& name : header["attributes"])
      d.attribute_names.push_back(name.get<std::string>());
  } catch (const nlohmann::json::exception& e) {
    throw FormatError(std::string("JSONL line 1: ") + e.what());
  }
  check_names(d.attribute_names);
  d.n = d.attribute_names.size();
  for (std::size_t r = 1; r < lines.size(); ++r) {
    if (lines[r].empty()) {
      if (r + 1 == lines.size()) break;
      throw FormatError("empty JSONL line " + std::to_string(r + 1));
    }
    std::string values;
    try {
      nlohmann::json obj = nlohmann::json::parse(lines[r]);
      values = obj.at("values").get<std::string>();
    } catch (const nlohmann::json::exception& e) {
      throw FormatError("JSONL line " + std::to_string(r + 1) + ": " + e.what());
    }
    if (values.size() != d.n)
      throw FormatError("JSONL row " + std::to_string(r) + ": expected " + std::to_string(d.n) +
                        " values, found " + std::to_string(values.size()));
    try {
      d.rows.push_back(PartialExample::from_string(values));
    } catch (const std::invalid_argument& e) {
      throw FormatError("JSONL row " + std::to_string(r) + ": " + e.what());
    }
  }
  return d;
}

void save_jsonl(const Dataset& d, std::ostream& out) {
  nlohmann::json header;
  header["attributes"] = d.attribute_names;
  out << header.dump() << '\n';
  for (const PartialExample& row : d.rows) {
    nlohmann::json obj;
    obj["values"] = row.to_string();
    out << obj.dump() << '\n';
  }
}

}  // namespace

Dataset load_dataset(std::istream& in, DataFormat format) {
  return format == DataFormat::Csv ? load_csv(in) : load_jsonl(in);
}

void save_dataset(const Dataset& d, std::ostream& out, DataFormat format) {
  if (format == DataFormat::Csv)
    save_csv(d, out);
  else
    save_jsonl(d, out);
}

Dataset load_dataset_string(const std::string& text, DataFormat format) {
  std::istringstream in(text);
  return load_dataset(in, format);
}

std::string save_dataset_string(const Dataset& d, DataFormat format) {
  std::ostringstream out;
  save_dataset(d, out, format);
  return out.str();
}

}  // namespace abduct
