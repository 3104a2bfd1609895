#pragma once

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "idealflow/ideal_flow.hpp"
#include "idealflow/matrix.hpp"
#include "idealflow/random_walk.hpp"
#include "idealflow/relations.hpp"
#include "idealflow/trajectory.hpp"

namespace idealflow::io {

using Labels = std::vector<std::string>;

// Reals are written with 12 significant digits; unreachable hops as `inf`.
std::string format_real(double x);
std::string format_hop(HopCount h);

// Labelled matrix CSV: header row `,<l1>,<l2>,...`, then `<li>,<v>,...`.
std::string matrix_csv(const Labels& labels, const IntMatrix& m);
std::string matrix_csv(const Labels& labels, const RealMatrix& m);
std::string matrix_csv(const Labels& labels, const HopMatrix& m);

struct CsvMatrix {
  Labels row_labels;
  Labels col_labels;
  std::vector<std::vector<std::string>> cells;
};

// Throws Parse on ragged rows or mismatched label lists.
CsvMatrix parse_matrix_csv(std::string_view text);
IntMatrix to_int_matrix(const CsvMatrix& csv);
RealMatrix to_real_matrix(const CsvMatrix& csv);
HopMatrix to_hop_matrix(const CsvMatrix& csv);

// {"nodes": [...], "sets": [[[ids...], ...], ...]} with ids ascending.
nlohmann::json set_matrix_json(const Labels& labels, const SetMatrix& m);
SetMatrix set_matrix_from_json(const nlohmann::json& j);

// {"nodes": [...], "entries": [[...]]}; unreachable hops become "inf".
nlohmann::json matrix_json(const Labels& labels, const IntMatrix& m);
nlohmann::json matrix_json(const Labels& labels, const HopMatrix& m);
nlohmann::json matrix_json(const Labels& labels, const RealMatrix& m);

// {"nodes": [...], "scale_mode": "...", "entries": [[...]]}
nlohmann::json ideal_flow_json(const Labels& labels, const IdealFlowMatrix& f);
IdealFlowMatrix ideal_flow_from_json(const nlohmann::json& j);

nlohmann::json report_json(const Labels& labels, const VerificationReport& r);

// `node,pi` then one row per node.
std::string vector_csv(const Labels& labels, std::span<const double> values,
                       std::string_view header = "pi");

// `cumulative_nt,linf_distance`
std::string convergence_csv(const ConvergenceSeries& series);

void write_file(const std::string& path, std::string_view content);
std::string read_file(const std::string& path);

}  // namespace idealflow::io
