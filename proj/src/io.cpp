#include "idealflow/io.hpp"

#include <charconv>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

namespace idealflow::io {

namespace {

std::string quote(const std::string& field) {
  if (field.find_first_of(",\"\n\r") == std::string::npos) return field;
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

// RFC 4180 subset: quoted fields with doubled quotes; no embedded newlines.
std::vector<std::string> split_csv_line(std::string_view line, std::size_t line_no) {
  std::vector<std::string> fields;
  std::string field;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        field += '"';
        ++i;
      } else if (c == '"') {
        quoted = false;
      } else {
        field += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      fields.push_back(std::move(field));
      field.clear();
    } else {
      field += c;
    }
  }
  if (quoted) throw Error(ErrorKind::kParse, "line " + std::to_string(line_no) + ": unterminated quote");
  fields.push_back(std::move(field));
  return fields;
}

template <typename T, typename Format>
std::string labelled_csv(const Labels& labels, const Matrix<T>& m, Format format) {
  if (labels.size() != m.rows() || !m.is_square()) {
    throw Error(ErrorKind::kDimensionMismatch, "labels do not match matrix");
  }
  std::string out;
  for (const auto& l : labels) out += "," + quote(l);
  out += "\n";
  for (std::size_t i = 0; i < m.rows(); ++i) {
    out += quote(labels[i]);
    for (std::size_t j = 0; j < m.cols(); ++j) out += "," + format(m(i, j));
    out += "\n";
  }
  return out;
}

template <typename T, typename Parse>
Matrix<T> convert(const CsvMatrix& csv, Parse parse) {
  Matrix<T> m(csv.cells.size(), csv.col_labels.size());
  for (std::size_t i = 0; i < csv.cells.size(); ++i)
    for (std::size_t j = 0; j < csv.col_labels.size(); ++j) m(i, j) = parse(csv.cells[i][j]);
  return m;
}

std::int64_t parse_int(const std::string& text) {
  std::int64_t v = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc{} || ptr != text.data() + text.size()) {
    throw Error(ErrorKind::kParse, "not an integer: '" + text + "'");
  }
  return v;
}

double parse_real(const std::string& text) {
  char* end = nullptr;
  const double v = std::strtod(text.c_str(), &end);
  if (text.empty() || end != text.c_str() + text.size()) {
    throw Error(ErrorKind::kParse, "not a number: '" + text + "'");
  }
  return v;
}

template <typename T, typename Value>
nlohmann::json entries_json(const Labels& labels, const Matrix<T>& m, Value value) {
  if (labels.size() != m.rows()) throw Error(ErrorKind::kDimensionMismatch, "labels do not match matrix");
  auto rows = nlohmann::json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    auto row = nlohmann::json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(value(m(i, j)));
    rows.push_back(std::move(row));
  }
  return {{"nodes", labels}, {"entries", std::move(rows)}};
}

}  // namespace

std::string format_real(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

std::string format_hop(HopCount h) { return h.finite() ? std::to_string(h.value()) : "inf"; }

std::string matrix_csv(const Labels& labels, const IntMatrix& m) {
  return labelled_csv(labels, m, [](std::int64_t v) { return std::to_string(v); });
}

std::string matrix_csv(const Labels& labels, const RealMatrix& m) {
  return labelled_csv(labels, m, format_real);
}

std::string matrix_csv(const Labels& labels, const HopMatrix& m) {
  return labelled_csv(labels, m, format_hop);
}

CsvMatrix parse_matrix_csv(std::string_view text) {
  CsvMatrix csv;
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    auto fields = split_csv_line(line, line_no);
    if (line_no == 1) {
      csv.col_labels.assign(fields.begin() + 1, fields.end());
      continue;
    }
    if (fields.size() != csv.col_labels.size() + 1) {
      throw Error(ErrorKind::kParse, "line " + std::to_string(line_no) + ": expected " +
                                         std::to_string(csv.col_labels.size() + 1) + " fields");
    }
    csv.row_labels.push_back(fields.front());
    csv.cells.emplace_back(fields.begin() + 1, fields.end());
  }
  if (csv.row_labels != csv.col_labels) {
    throw Error(ErrorKind::kParse, "row labels do not match header labels");
  }
  return csv;
}

IntMatrix to_int_matrix(const CsvMatrix& csv) { return convert<std::int64_t>(csv, parse_int); }

RealMatrix to_real_matrix(const CsvMatrix& csv) { return convert<double>(csv, parse_real); }

HopMatrix to_hop_matrix(const CsvMatrix& csv) {
  return convert<HopCount>(csv, [](const std::string& s) {
    return s == "inf" ? HopCount::unreachable() : HopCount(parse_int(s));
  });
}

nlohmann::json set_matrix_json(const Labels& labels, const SetMatrix& m) {
  if (labels.size() != m.rows()) throw Error(ErrorKind::kDimensionMismatch, "labels do not match matrix");
  auto rows = nlohmann::json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    auto row = nlohmann::json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) {
      // std::set iterates in ascending order.
      row.push_back(std::vector<TrajectoryId>(m(i, j).begin(), m(i, j).end()));
    }
    rows.push_back(std::move(row));
  }
  return {{"nodes", labels}, {"sets", std::move(rows)}};
}

SetMatrix set_matrix_from_json(const nlohmann::json& j) {
  try {
    const auto n = j.at("nodes").size();
    const auto& rows = j.at("sets");
    if (rows.size() != n) throw Error(ErrorKind::kParse, "sets has wrong row count");
    auto m = SetMatrix::square(n);
    for (std::size_t i = 0; i < n; ++i) {
      if (rows[i].size() != n) throw Error(ErrorKind::kParse, "sets has a ragged row");
      for (std::size_t k = 0; k < n; ++k) {
        for (const auto& id : rows[i][k]) m(i, k).insert(id.get<TrajectoryId>());
      }
    }
    return m;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::kParse, e.what());
  }
}

nlohmann::json matrix_json(const Labels& labels, const IntMatrix& m) {
  return entries_json(labels, m, [](std::int64_t v) { return nlohmann::json(v); });
}

nlohmann::json matrix_json(const Labels& labels, const HopMatrix& m) {
  return entries_json(labels, m, [](HopCount h) {
    return h.finite() ? nlohmann::json(h.value()) : nlohmann::json("inf");
  });
}

nlohmann::json matrix_json(const Labels& labels, const RealMatrix& m) {
  // Emit the same 12-digit value the CSV carries so both formats agree.
  return entries_json(labels, m, [](double v) { return nlohmann::json(parse_real(format_real(v))); });
}

nlohmann::json ideal_flow_json(const Labels& labels, const IdealFlowMatrix& f) {
  auto j = matrix_json(labels, f.flow);
  j["scale_mode"] = to_string(f.mode);
  return j;
}

IdealFlowMatrix ideal_flow_from_json(const nlohmann::json& j) {
  try {
    const auto& rows = j.at("entries");
    const auto n = j.at("nodes").size();
    auto m = RealMatrix::square(n);
    if (rows.size() != n) throw Error(ErrorKind::kParse, "entries has wrong row count");
    for (std::size_t i = 0; i < n; ++i) {
      if (rows[i].size() != n) throw Error(ErrorKind::kParse, "entries has a ragged row");
      for (std::size_t k = 0; k < n; ++k) m(i, k) = rows[i][k].get<double>();
    }
    return {std::move(m), parse_scale_mode(j.at("scale_mode").get<std::string>())};
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::kParse, e.what());
  }
}

nlohmann::json report_json(const Labels& labels, const VerificationReport& r) {
  auto defects = nlohmann::json::array();
  for (const auto& d : r.defects) {
    defects.push_back({{"row", labels.at(d.row)},
                       {"col", labels.at(d.col)},
                       {"lhs", d.lhs},
                       {"rhs", d.rhs}});
  }
  return {{"identity", r.identity},
          {"holds", r.holds},
          {"defect_count", r.defect_count},
          {"defects", std::move(defects)}};
}

std::string vector_csv(const Labels& labels, std::span<const double> values, std::string_view header) {
  if (labels.size() != values.size()) throw Error(ErrorKind::kDimensionMismatch, "labels do not match vector");
  std::string out = "node," + std::string(header) + "\n";
  for (std::size_t i = 0; i < values.size(); ++i) {
    out += quote(labels[i]) + "," + format_real(values[i]) + "\n";
  }
  return out;
}

std::string convergence_csv(const ConvergenceSeries& series) {
  std::string out = "cumulative_nt,linf_distance\n";
  for (const auto& p : series.points) {
    out += std::to_string(p.cumulative_steps) + "," + format_real(p.linf_distance) + "\n";
  }
  return out;
}

void write_file(const std::string& path, std::string_view content) {
  std::ofstream file(path, std::ios::binary | std::ios::trunc);
  if (!file) throw Error(ErrorKind::kIo, "cannot write " + path);
  file.write(content.data(), static_cast<std::streamsize>(content.size()));
  if (!file) throw Error(ErrorKind::kIo, "write failed for " + path);
}

std::string read_file(const std::string& path) {
  std::ifstream file(path, std::ios::binary);
  if (!file) throw Error(ErrorKind::kIo, "cannot open " + path);
  std::stringstream buffer;
  buffer << file.rdbuf();
  return buffer.str();
}

}  // namespace idealflow::io
