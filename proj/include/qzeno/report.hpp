#pragma once

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include "qzeno/experiment.hpp"

namespace qzeno {

namespace detail {

inline std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

inline std::string strip_report_extension(const std::string& path) {
  for (const char* ext : {".csv", ".json"}) {
    std::string suffix(ext);
    if (path.size() > suffix.size() &&
        path.compare(path.size() - suffix.size(), suffix.size(), suffix) == 0)
      return path.substr(0, path.size() - suffix.size());
  }
  return path;
}

inline void write_text_file(const std::string& path,
                            const std::string& content) {
  std::filesystem::path p(path);
  std::error_code ec;
  if (p.has_parent_path())
    std::filesystem::create_directories(p.parent_path(), ec);
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open output file: " + path);
  out << content;
  out.flush();
  if (!out) throw IoError("failed writing output file: " + path);
}

}  // namespace detail

// Writes the report; returns the paths produced. CSV gets one file per
// series (single series: <base>.csv, otherwise <base>.<mode>.csv); JSON is
// a single <base>.json with the metadata block.
inline std::vector<std::string> emit_report(const RunReport& report,
                                            ReportFormat format,
                                            const std::string& output_path) {
  const std::string base = detail::strip_report_extension(output_path);
  std::vector<std::string> written;

  if (format == ReportFormat::Json) {
    nlohmann::json j{{"metadata", report.metadata}};
    nlohmann::json series = nlohmann::json::array();
    for (const ReportSeries& s : report.series)
      series.push_back(
          {{"mode", s.mode}, {"columns", s.columns}, {"rows", s.rows}});
    j["series"] = series;
    std::string path = base + ".json";
    detail::write_text_file(path, j.dump(2) + "\n");
    written.push_back(path);
    return written;
  }

  for (const ReportSeries& s : report.series) {
    std::string path = report.series.size() == 1
                           ? base + ".csv"
                           : base + "." + s.mode + ".csv";
    std::string content;
    for (size_t k = 0; k < s.columns.size(); ++k) {
      if (k) content += ',';
      content += s.columns[k];
    }
    content += ",mode\n";
    for (const std::vector<double>& row : s.rows) {
      for (size_t k = 0; k < row.size(); ++k) {
        if (k) content += ',';
        content += detail::format_double(row[k]);
      }
      content += ',';
      content += s.mode;
      content += '\n';
    }
    detail::write_text_file(path, content);
    written.push_back(path);
  }
  return written;
}

}  // namespace qzeno
