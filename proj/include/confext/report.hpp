#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "confext/params.hpp"

namespace confext {

struct ResultRow {
  std::string name;
  double value = 0.0;
  std::optional<double> reference;
  std::optional<double> residual;
  std::optional<double> tolerance;
  std::optional<bool> pass;
};

struct ResultTable {
  std::string name;
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
};

struct RunReport {
  std::string command;
  std::optional<ParamTriple> params;
  std::optional<ExponentSet> exponents;
  std::vector<ResultRow> results;
  std::vector<ResultTable> tables;
  int level = 0;
  double two_level_delta = 0.0;
  std::int64_t runtime_ms = 0;
  std::optional<bool> pass;
  std::optional<std::string> timestamp;

  // Adds a row; residual is |value - reference| / |reference| (absolute when
  // the reference is 0) and pass is residual <= tolerance.
  ResultRow& check(std::string name, double value, double reference, double tolerance);
  ResultRow& value(std::string name, double v);
  ResultRow& flag(std::string name, bool ok);
  // AND of every row's pass flag (and of any explicit pass already set)
  bool all_pass() const;
};

enum class Format { Json, Csv };

std::string to_json(const RunReport& r);
RunReport from_json(const std::string& text);
std::string to_csv(const RunReport& r);
inline constexpr const char* kCsvHeader = "name,value,reference,residual,tolerance,pass";

// Writes to path, or stdout when path is empty. Throws Error on an unwritable path.
void emit(const RunReport& r, Format f, const std::string& path);

}  // namespace confext
