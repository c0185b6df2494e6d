// Copyright 2026 The shapeclass Authors.
// SPDX-License-Identifier: Apache-2.0

#include "shapeclass/dataio.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <charconv>
#include <fstream>
#include <sstream>

#include "shapeclass/error.hpp"
#include "shapeclass/prng.hpp"

namespace shapeclass {

const char* const kFeatureCsvHeader =
    "id,area,major_axis_length,minor_axis_length,eccentricity,orientation,"
    "convex_area,filled_area,euler_number,equiv_diameter,solidity,extent,class";

namespace {

std::string to_lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return s;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

bool parse_double_token(std::string_view token, double& out) {
  const char* begin = token.data();
  const char* end = token.data() + token.size();
  const auto [ptr, ec] = std::from_chars(begin, end, out);
  return ec == std::errc() && ptr == end && !token.empty();
}

// Splits one data line on commas, honoring single/double quotes.
std::vector<std::string> split_fields(std::string_view line, std::size_t line_no) {
  std::vector<std::string> fields;
  std::size_t i = 0;
  const std::size_t n = line.size();
  for (;;) {
    while (i < n && (line[i] == ' ' || line[i] == '\t')) ++i;
    std::string field;
    if (i < n && (line[i] == '\'' || line[i] == '"')) {
      const char quote = line[i++];
      const std::size_t close = line.find(quote, i);
      if (close == std::string_view::npos) {
        throw DataParseError("unterminated quoted value", line_no);
      }
      field.assign(line.substr(i, close - i));
      i = close + 1;
      while (i < n && (line[i] == ' ' || line[i] == '\t')) ++i;
      if (i < n && line[i] != ',') {
        throw DataParseError("unexpected characters after quoted value", line_no);
      }
    } else {
      const std::size_t comma = line.find(',', i);
      const std::size_t stop = comma == std::string_view::npos ? n : comma;
      field.assign(trim(line.substr(i, stop - i)));
      i = stop;
    }
    fields.push_back(std::move(field));
    if (i >= n) break;
    ++i;  // consume comma
  }
  return fields;
}

bool needs_quotes(std::string_view s) {
  if (s.empty()) return true;
  return s.find_first_of(" \t,'\"{}%") != std::string_view::npos;
}

std::string quoted_if_needed(const std::string& s) {
  if (!needs_quotes(s)) return s;
  if (s.find('\'') == std::string::npos) return "'" + s + "'";
  if (s.find('"') == std::string::npos) return "\"" + s + "\"";
  throw Error("value mixes both quote characters: " + s);
}

// Reads an optionally quoted token starting at `i`; advances past it.
std::string read_token(std::string_view line, std::size_t& i, std::size_t line_no) {
  const std::size_t n = line.size();
  while (i < n && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
  if (i >= n) return {};
  if (line[i] == '\'' || line[i] == '"') {
    const char quote = line[i++];
    const std::size_t close = line.find(quote, i);
    if (close == std::string_view::npos) {
      throw DataParseError("unterminated quoted name", line_no);
    }
    std::string tok(line.substr(i, close - i));
    i = close + 1;
    return tok;
  }
  const std::size_t start = i;
  while (i < n && !std::isspace(static_cast<unsigned char>(line[i]))) ++i;
  return std::string(line.substr(start, i - start));
}

int nominal_index(const AttributeSpec& attr, const std::string& value,
                  std::size_t line_no) {
  const auto it = std::find(attr.values.begin(), attr.values.end(), value);
  if (it == attr.values.end()) {
    throw DataParseError("nominal value '" + value + "' not in declared set of attribute '" +
                             attr.name + "'",
                         line_no);
  }
  return static_cast<int>(it - attr.values.begin());
}

std::vector<double> parse_row(const std::vector<std::string>& fields,
                              const std::vector<AttributeSpec>& attributes,
                              std::size_t line_no) {
  if (fields.size() != attributes.size()) {
    throw DataParseError("row has " + std::to_string(fields.size()) + " values, expected " +
                             std::to_string(attributes.size()),
                         line_no);
  }
  std::vector<double> row(fields.size());
  for (std::size_t c = 0; c < fields.size(); ++c) {
    const std::string& field = fields[c];
    if (field == "?") {
      throw DataParseError("missing value '?' is not supported", line_no);
    }
    const AttributeSpec& attr = attributes[c];
    if (attr.is_nominal()) {
      row[c] = nominal_index(attr, field, line_no);
    } else {
      double v = 0.0;
      if (!parse_double_token(field, v)) {
        throw DataParseError("value '" + field + "' is not numeric for attribute '" +
                                 attr.name + "'",
                             line_no);
      }
      row[c] = v;
    }
  }
  return row;
}

}  // namespace

std::string format_double(double v) {
  std::array<char, 64> buf;
  const auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  return std::string(buf.data(), ptr);
}

Dataset parse_arff(const std::string& text) {
  Dataset ds;
  std::istringstream in(text);
  std::string raw;
  std::size_t line_no = 0;
  bool in_data = false;
  bool saw_data = false;

  while (std::getline(in, raw)) {
    ++line_no;
    if (!raw.empty() && raw.back() == '\r') raw.pop_back();
    const std::string_view line = trim(raw);
    if (line.empty() || line.front() == '%') continue;

    if (!in_data) {
      if (line.front() != '@') {
        throw DataParseError("expected a header directive", line_no);
      }
      std::size_t i = 1;
      std::size_t word_end = i;
      while (word_end < line.size() &&
             !std::isspace(static_cast<unsigned char>(line[word_end]))) {
        ++word_end;
      }
      const std::string keyword = to_lower(std::string(line.substr(i, word_end - i)));
      i = word_end;

      if (keyword == "relation") {
        ds.relation_name = read_token(line, i, line_no);
      } else if (keyword == "attribute") {
        AttributeSpec attr;
        attr.name = read_token(line, i, line_no);
        if (attr.name.empty()) throw DataParseError("attribute without a name", line_no);
        while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
        if (i >= line.size()) throw DataParseError("attribute without a kind", line_no);
        if (line[i] == '{') {
          attr.kind = AttributeSpec::Kind::kNominal;
          const std::size_t close = line.find('}', i);
          if (close == std::string_view::npos) {
            throw DataParseError("nominal specification missing '}'", line_no);
          }
          const auto values = split_fields(line.substr(i + 1, close - i - 1), line_no);
          for (const std::string& v : values) {
            if (v.empty()) throw DataParseError("empty nominal value", line_no);
            if (std::find(attr.values.begin(), attr.values.end(), v) != attr.values.end()) {
              throw DataParseError("duplicate nominal value '" + v + "'", line_no);
            }
            attr.values.push_back(v);
          }
          if (attr.values.empty()) {
            throw DataParseError("nominal attribute with no values", line_no);
          }
        } else {
          const std::string kind = to_lower(read_token(line, i, line_no));
          if (kind == "numeric" || kind == "real" || kind == "integer") {
            attr.kind = AttributeSpec::Kind::kNumeric;
          } else {
            throw DataParseError("unknown attribute kind '" + kind + "'", line_no);
          }
        }
        ds.attributes.push_back(std::move(attr));
      } else if (keyword == "data") {
        if (ds.attributes.empty()) {
          throw DataParseError("@data before any @attribute", line_no);
        }
        if (!ds.attributes.back().is_nominal()) {
          throw DataParseError("last attribute must be nominal", line_no);
        }
        in_data = true;
        saw_data = true;
      } else {
        throw DataParseError("unknown directive '@" + keyword + "'", line_no);
      }
      continue;
    }

    ds.instances.push_back(parse_row(split_fields(line, line_no), ds.attributes, line_no));
  }

  if (!saw_data) {
    throw DataParseError("no @data section", line_no == 0 ? 1 : line_no);
  }
  return ds;
}

std::string write_arff(const Dataset& ds) {
  std::string out;
  out += "@relation " + quoted_if_needed(ds.relation_name) + "\n";
  for (const AttributeSpec& attr : ds.attributes) {
    out += "@attribute " + quoted_if_needed(attr.name) + " ";
    if (attr.is_nominal()) {
      out += "{";
      for (std::size_t i = 0; i < attr.values.size(); ++i) {
        if (i) out += ",";
        out += quoted_if_needed(attr.values[i]);
      }
      out += "}";
    } else {
      out += "numeric";
    }
    out += "\n";
  }
  out += "@data\n";
  for (const auto& row : ds.instances) {
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (c) out += ",";
      const AttributeSpec& attr = ds.attributes[c];
      if (attr.is_nominal()) {
        out += quoted_if_needed(attr.values[static_cast<std::size_t>(row[c])]);
      } else {
        out += format_double(row[c]);
      }
    }
    out += "\n";
  }
  return out;
}

Dataset parse_csv(const std::string& text) {
  std::istringstream in(text);
  std::string raw;
  std::size_t line_no = 0;

  if (!std::getline(in, raw)) throw DataParseError("empty file: missing header", 1);
  ++line_no;
  if (!raw.empty() && raw.back() == '\r') raw.pop_back();

  std::vector<std::string> header;
  {
    std::string_view view = raw;
    std::size_t start = 0;
    for (;;) {
      const std::size_t comma = view.find(',', start);
      header.emplace_back(trim(view.substr(start, comma - start)));
      if (comma == std::string_view::npos) break;
      start = comma + 1;
    }
  }
  const bool has_ids = !header.empty() && header.front() == "id";
  const std::size_t first_attr = has_ids ? 1 : 0;
  if (header.size() - first_attr < 1) {
    throw DataParseError("header declares no data columns", 1);
  }

  Dataset ds;
  ds.relation_name = "data";
  for (std::size_t c = first_attr; c < header.size(); ++c) {
    AttributeSpec attr;
    attr.name = header[c];
    attr.kind = c + 1 == header.size() ? AttributeSpec::Kind::kNominal
                                       : AttributeSpec::Kind::kNumeric;
    ds.attributes.push_back(std::move(attr));
  }

  while (std::getline(in, raw)) {
    ++line_no;
    if (!raw.empty() && raw.back() == '\r') raw.pop_back();
    if (trim(raw).empty()) continue;

    std::vector<std::string> fields;
    {
      std::string_view view = raw;
      std::size_t start = 0;
      for (;;) {
        const std::size_t comma = view.find(',', start);
        fields.emplace_back(trim(view.substr(start, comma - start)));
        if (comma == std::string_view::npos) break;
        start = comma + 1;
      }
    }
    if (fields.size() != header.size()) {
      throw DataParseError("row has " + std::to_string(fields.size()) + " fields, expected " +
                               std::to_string(header.size()),
                           line_no);
    }

    std::vector<double> row(ds.attributes.size());
    for (std::size_t c = 0; c < ds.attributes.size(); ++c) {
      const std::string& field = fields[first_attr + c];
      AttributeSpec& attr = ds.attributes[c];
      if (attr.is_nominal()) {
        auto it = std::find(attr.values.begin(), attr.values.end(), field);
        if (it == attr.values.end()) {
          attr.values.push_back(field);  // first-appearance order
          it = std::prev(attr.values.end());
        }
        row[c] = static_cast<double>(it - attr.values.begin());
      } else {
        double v = 0.0;
        if (!parse_double_token(field, v)) {
          throw DataParseError("column '" + attr.name + "': value '" + field +
                                   "' is not numeric",
                               line_no);
        }
        row[c] = v;
      }
    }
    if (has_ids) ds.ids.push_back(fields[0]);
    ds.instances.push_back(std::move(row));
  }

  if (!ds.instances.empty() && ds.attributes.back().values.empty()) {
    throw DataParseError("class column has no values", line_no);
  }
  return ds;
}

std::string write_csv(const Dataset& ds) {
  const bool has_ids = !ds.ids.empty();
  if (has_ids && ds.ids.size() != ds.instances.size()) {
    throw Error("id metadata does not match instance count");
  }
  std::string out;
  if (has_ids) out += "id,";
  for (std::size_t c = 0; c < ds.attributes.size(); ++c) {
    if (c) out += ",";
    out += ds.attributes[c].name;
  }
  out += "\n";
  for (std::size_t i = 0; i < ds.instances.size(); ++i) {
    if (has_ids) {
      out += ds.ids[i];
      out += ",";
    }
    const auto& row = ds.instances[i];
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (c) out += ",";
      const AttributeSpec& attr = ds.attributes[c];
      if (attr.is_nominal()) {
        out += attr.values[static_cast<std::size_t>(row[c])];
      } else {
        out += format_double(row[c]);
      }
    }
    out += "\n";
  }
  return out;
}

namespace {

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

bool ends_with_nocase(const std::string& s, const std::string& suffix) {
  if (s.size() < suffix.size()) return false;
  return to_lower(s.substr(s.size() - suffix.size())) == suffix;
}

}  // namespace

Dataset parse_data_file(const std::string& path) {
  const std::string text = read_text_file(path);
  if (ends_with_nocase(path, ".arff")) return parse_arff(text);
  if (ends_with_nocase(path, ".csv")) return parse_csv(text);
  throw Error("unsupported data file extension (want .arff or .csv): " + path);
}

void write_data_file(const Dataset& ds, const std::string& path) {
  std::string text;
  if (ends_with_nocase(path, ".arff")) {
    text = write_arff(ds);
  } else if (ends_with_nocase(path, ".csv")) {
    text = write_csv(ds);
  } else {
    throw Error("unsupported data file extension (want .arff or .csv): " + path);
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot open file for writing: " + path);
  out << text;
  if (!out) throw Error("write failed: " + path);
}

FoldPlan stratified_folds(const Dataset& ds, int k, std::uint64_t seed) {
  if (k < 2) throw Error("fold count must be at least 2");
  const std::size_t n = ds.n_instances();
  if (static_cast<std::size_t>(k) > n) {
    throw Error("fold count " + std::to_string(k) + " exceeds instance count " +
                std::to_string(n));
  }

  const std::size_t n_classes = ds.n_classes();
  std::vector<std::vector<std::uint32_t>> per_class(n_classes);
  for (std::size_t i = 0; i < n; ++i) {
    per_class[static_cast<std::size_t>(ds.class_of(i))].push_back(
        static_cast<std::uint32_t>(i));
  }

  FoldPlan plan;
  plan.k = k;
  plan.seed = seed;
  plan.assignment.assign(n, 0);
  Prng rng = Prng::stream(seed, "folds");
  for (std::size_t c = 0; c < n_classes; ++c) {
    auto& indices = per_class[c];
    rng.shuffle(indices);
    for (std::size_t j = 0; j < indices.size(); ++j) {
      plan.assignment[indices[j]] = static_cast<int>((c + j) % static_cast<std::size_t>(k));
    }
  }
  return plan;
}

}  // namespace shapeclass
