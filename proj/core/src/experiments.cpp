#include "podrom/experiments.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace podrom {

namespace {

std::string csv_quote(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

std::string format_cell(double v, const char* fmt) {
  char buf[40];
  std::snprintf(buf, sizeof buf, fmt, v);
  return buf;
}

std::string slugify(const std::string& label) {
  std::string slug;
  for (char c : label) {
    if (std::isalnum(static_cast<unsigned char>(c))) {
      slug += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    } else if (!slug.empty() && slug.back() != '-') {
      slug += '-';
    }
  }
  while (!slug.empty() && slug.back() == '-') slug.pop_back();
  return slug.empty() ? "table" : slug;
}

void emit_csv(const TableReport& report, std::ostream& os, const char* fmt) {
  bool first = true;
  for (const auto& h : report.headers) {
    if (!first) os << ',';
    os << csv_quote(h);
    first = false;
  }
  os << "\n";
  for (std::size_t i = 0; i < report.rows.size(); ++i) {
    first = true;
    if (!report.row_labels.empty()) {
      os << csv_quote(report.row_labels[i]);
      first = false;
    }
    for (double v : report.rows[i]) {
      if (!first) os << ',';
      os << format_cell(v, fmt);
      first = false;
    }
    os << "\n";
  }
}

void emit_markdown(const TableReport& report, std::ostream& os) {
  os << "### " << report.label << "\n";
  if (!report.provenance.empty()) os << "*" << report.provenance << "*\n";
  os << "\n|";
  for (const auto& h : report.headers) os << ' ' << h << " |";
  os << "\n|";
  for (std::size_t i = 0; i < report.headers.size(); ++i) os << " --- |";
  os << "\n";
  for (std::size_t i = 0; i < report.rows.size(); ++i) {
    os << '|';
    if (!report.row_labels.empty()) os << ' ' << report.row_labels[i] << " |";
    for (double v : report.rows[i]) os << ' ' << format_cell(v, "%.4e") << " |";
    os << "\n";
  }
}

}  // namespace

double parse_number(const std::string& text) {
  const auto slash = text.find('/');
  try {
    std::size_t pos = 0;
    if (slash == std::string::npos) {
      const double v = std::stod(text, &pos);
      if (pos != text.size()) throw std::invalid_argument(text);
      return v;
    }
    const double num = std::stod(text.substr(0, slash), &pos);
    const double den = std::stod(text.substr(slash + 1), &pos);
    if (den == 0.0) throw std::invalid_argument(text);
    return num / den;
  } catch (const std::exception&) {
    throw std::invalid_argument("parse_number: cannot parse '" + text + "'");
  }
}

StudyConfig default_config(Example example) {
  StudyConfig cfg;
  cfg.example = example;
  if (example == Example::Cex1) {
    cfg.k = 128;
    cfg.T = 1.0;
    cfg.dt_list = {1.0 / 4, 1.0 / 8, 1.0 / 16, 1.0 / 32, 1.0 / 64, 1.0 / 128};
  } else {
    cfg.k = 100;
    cfg.alpha = 1.0;
    cfg.delta = 0.01;
    cfg.T = 0.2;
    cfg.rom_T = 0.05;
    cfg.dt_list = {0.05, 0.04, 0.02, 0.01};
    cfg.r_list = {1, 2, 3, 4, 5, 6};
  }
  return cfg;
}

void validate_config(const StudyConfig& cfg) {
  if (cfg.h <= 0.0) throw std::invalid_argument("config: h must be positive");
  const double n_elems = 1.0 / cfg.h;
  if (std::abs(n_elems - std::round(n_elems)) > 1e-9 || n_elems < 2.0) {
    throw std::invalid_argument("config: 1/h must be an integer >= 2");
  }
  if (cfg.nu <= 0.0) throw std::invalid_argument("config: nu must be positive");
  if (cfg.T <= 0.0) throw std::invalid_argument("config: T must be positive");
  if (cfg.k < 1) throw std::invalid_argument("config: k must be >= 1");
  auto check_dt = [&](double dt) {
    if (dt <= 0.0) throw std::invalid_argument("config: dt must be positive");
    const double steps = cfg.T / dt;
    if (std::abs(steps - std::round(steps)) > 1e-9 * std::max(1.0, steps)) {
      throw std::invalid_argument("config: T/dt must be an integer");
    }
    const double kdt = cfg.k * dt;
    if (std::abs(kdt - std::round(kdt)) > 1e-9 * std::max(1.0, kdt) ||
        std::round(kdt) < 1.0) {
      std::ostringstream msg;
      msg << "config: dt = " << dt << " violates k*dt in N (k = " << cfg.k
          << "); the example solutions vanish at x = 1 only on such grids "
             "(homogeneous Dirichlet boundary condition)";
      throw std::invalid_argument(msg.str());
    }
  };
  for (double dt : cfg.dt_list) check_dt(dt);
  if (cfg.example == Example::Cex2) check_dt(cfg.dt_rom);
  for (int r : cfg.r_list) {
    if (r < 1) throw std::invalid_argument("config: ranks must be >= 1");
  }
  if (cfg.r_proj < 1) throw std::invalid_argument("config: r_proj must be >= 1");
}

void apply_config_entry(StudyConfig& cfg, const std::string& key,
                        const std::string& value) {
  auto parse_list = [](const std::string& v) {
    std::vector<std::string> items;
    std::string cur;
    for (char c : v) {
      if (c == ',' || c == ' ' || c == '\t') {
        if (!cur.empty()) items.push_back(std::move(cur)), cur.clear();
      } else {
        cur += c;
      }
    }
    if (!cur.empty()) items.push_back(std::move(cur));
    return items;
  };

  if (key == "example") {
    if (value == "cex1") cfg.example = Example::Cex1;
    else if (value == "cex2") cfg.example = Example::Cex2;
    else throw std::invalid_argument("config: unknown example '" + value + "'");
  } else if (key == "k") {
    cfg.k = static_cast<int>(parse_number(value));
  } else if (key == "alpha") {
    cfg.alpha = parse_number(value);
  } else if (key == "delta") {
    cfg.delta = parse_number(value);
  } else if (key == "nu") {
    cfg.nu = parse_number(value);
  } else if (key == "T") {
    cfg.T = parse_number(value);
  } else if (key == "rom_T") {
    cfg.rom_T = parse_number(value);
  } else if (key == "dt_list") {
    cfg.dt_list.clear();
    for (const auto& item : parse_list(value)) cfg.dt_list.push_back(parse_number(item));
  } else if (key == "r_list") {
    cfg.r_list.clear();
    for (const auto& item : parse_list(value))
      cfg.r_list.push_back(static_cast<int>(parse_number(item)));
  } else if (key == "r_proj") {
    cfg.r_proj = static_cast<int>(parse_number(value));
  } else if (key == "dt_rom") {
    cfg.dt_rom = parse_number(value);
  } else if (key == "h") {
    cfg.h = parse_number(value);
  } else if (key == "space") {
    if (value == "l2") cfg.space = Space::L2;
    else if (value == "h1" || value == "h10") cfg.space = Space::H10;
    else throw std::invalid_argument("config: unknown space '" + value + "'");
  } else if (key == "dq") {
    if (value == "true" || value == "1") cfg.dq = true;
    else if (value == "false" || value == "0") cfg.dq = false;
    else if (value == "both") cfg.dq.reset();
    else throw std::invalid_argument("config: dq must be true/false/both");
  } else if (key == "ic_kind") {
    if (value == "l2") cfg.ic_kind = InitialProjection::L2;
    else if (value == "ritz") cfg.ic_kind = InitialProjection::Ritz;
    else if (value == "default") cfg.ic_kind.reset();
    else throw std::invalid_argument("config: ic_kind must be l2/ritz/default");
  } else if (key == "cn_forcing") {
    if (value == "average" || value == "avg") cfg.cn_forcing = CnForcing::Average;
    else if (value == "midpoint") cfg.cn_forcing = CnForcing::Midpoint;
    else throw std::invalid_argument("config: cn_forcing must be average or midpoint");
  } else if (key == "seed") {
    try {
      cfg.seed = std::stoull(value);
    } catch (const std::exception&) {
      throw std::invalid_argument("config: seed must be a non-negative integer");
    }
  } else if (key == "output") {
    cfg.output = value;
  } else if (key == "format") {
    if (value == "csv") cfg.format = OutFormat::Csv;
    else if (value == "md" || value == "markdown") cfg.format = OutFormat::Markdown;
    else throw std::invalid_argument("config: format must be csv or md");
  } else {
    throw std::invalid_argument("config: unknown key '" + key + "'");
  }
}

StudyConfig load_config_file(const std::string& path, StudyConfig base) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("config: cannot open '" + path + "'");
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    auto trim = [](std::string s) {
      const auto b = s.find_first_not_of(" \t\r");
      const auto e = s.find_last_not_of(" \t\r");
      return b == std::string::npos ? std::string{} : s.substr(b, e - b + 1);
    };
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw std::invalid_argument("config: missing '=' at " + path + ":" +
                                  std::to_string(line_no));
    }
    apply_config_entry(base, trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
  }
  return base;
}

void emit(const TableReport& report, OutFormat format, std::ostream& os) {
  if (format == OutFormat::Csv) {
    emit_csv(report, os, "%.4e");
  } else {
    emit_markdown(report, os);
  }
}

void emit_full_precision_csv(const TableReport& report, std::ostream& os) {
  emit_csv(report, os, "%.17g");
}

void write_reports(const std::vector<TableReport>& reports, const std::string& path,
                   OutFormat format) {
  if (path.empty()) {
    for (const auto& report : reports) {
      std::cout << "# " << report.label << "\n";
      emit(report, format, std::cout);
      std::cout << "\n";
    }
    return;
  }
  namespace fs = std::filesystem;
  fs::create_directories(path);
  const char* ext = format == OutFormat::Csv ? ".csv" : ".md";
  int index = 0;
  for (const auto& report : reports) {
    char prefix[16];
    std::snprintf(prefix, sizeof prefix, "%02d-", index++);
    const std::string stem = prefix + slugify(report.label);
    {
      std::ofstream out(fs::path(path) / (stem + ext));
      if (!out) throw std::runtime_error("write_reports: cannot write to " + path);
      emit(report, format, out);
    }
    {
      std::ofstream out(fs::path(path) / (stem + ".full.csv"));
      if (!out) throw std::runtime_error("write_reports: cannot write to " + path);
      emit_full_precision_csv(report, out);
    }
  }
}

}  // namespace podrom
