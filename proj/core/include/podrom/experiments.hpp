#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "podrom/rom.hpp"

namespace podrom {

enum class Example { Cex1, Cex2 };
enum class OutFormat { Csv, Markdown };

/// Study parameters. dt_list/r_list empty means per-study defaults; dq unset
/// runs both the noDQ and DQ cases; ic_kind unset picks the L2 projection in
/// the noDQ case and the Ritz projection in the DQ case.
struct StudyConfig {
  Example example = Example::Cex1;
  int k = 128;
  double alpha = 1.0;
  double delta = 0.01;
  double nu = 1.0;
  double T = 1.0;
  double rom_T = 0.0;  // 0 = same horizon as T
  std::vector<double> dt_list;
  std::vector<int> r_list;
  int r_proj = 4;       // rank probed by the cex2 projection tables
  double dt_rom = 0.01; // time step of the cex2 ROM tables
  double h = 1.0 / 4096.0;
  Space space = Space::L2;
  std::optional<bool> dq;
  std::optional<InitialProjection> ic_kind;
  CnForcing cn_forcing = CnForcing::Average;
  unsigned long long seed = 0;
  std::string output;  // empty = stdout
  OutFormat format = OutFormat::Csv;
};

StudyConfig default_config(Example example);

/// Rejects incompatible parameters (k*dt not integer, T/dt not integer,
/// invalid mesh width). Throws std::invalid_argument.
void validate_config(const StudyConfig& cfg);

/// Flat key = value text, '#' comments, keys named after the fields.
StudyConfig load_config_file(const std::string& path, StudyConfig base);
void apply_config_entry(StudyConfig& cfg, const std::string& key,
                        const std::string& value);

/// Accepts plain decimals and fractions like "1/4096".
double parse_number(const std::string& text);

/// Rectangular numeric table. When row_labels is non-empty it holds one text
/// cell per row and headers.front() names that column.
struct TableReport {
  std::string label;
  std::vector<std::string> headers;
  std::vector<std::string> row_labels;
  std::vector<std::vector<double>> rows;
  std::string provenance;
};

/// Per-step projection errors and scaling factors, noDQ and DQ.
std::vector<TableReport> study_cex1_projection(const StudyConfig& cfg);
/// ROM error ratios over the dt sweep, noDQ and DQ.
std::vector<TableReport> study_cex1_rom(const StudyConfig& cfg);
/// Projection scaling factors over dt and ROM error ratios over r.
std::vector<TableReport> study_cex2(const StudyConfig& cfg);

/// Exact-identity, inequality, and invariance checks; one row per property
/// with the worst observed constant. Failures are rows, not exceptions.
TableReport run_property_suite(const StudyConfig& cfg);
bool property_suite_passed(const TableReport& report);

/// CSV with RFC-4180 quoting and %.4e cells, or Markdown pipe tables.
void emit(const TableReport& report, OutFormat format, std::ostream& os);
void emit_full_precision_csv(const TableReport& report, std::ostream& os);

/// path empty: print everything to the stream-equivalent of stdout.
/// Otherwise path is a directory; each table is written as NN-<slug>.<ext>
/// plus a NN-<slug>.full.csv sidecar with %.17g cells.
void write_reports(const std::vector<TableReport>& reports, const std::string& path,
                   OutFormat format);

}  // namespace podrom
