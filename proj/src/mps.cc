// Copyright 2026 The dashmip Authors.
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "dash/mps.h"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <unordered_map>
#include <vector>

namespace dash {
namespace {

// Bounds at or beyond this magnitude are read as infinite.
constexpr double kMpsInfinity = 1e30;

enum class Section {
  kNone = 0,
  kName,
  kObjSense,
  kRows,
  kColumns,
  kRhs,
  kRanges,
  kBounds,
  kEndata,
};

const char* SectionName(Section s) {
  switch (s) {
    case Section::kNone: return "(start)";
    case Section::kName: return "NAME";
    case Section::kObjSense: return "OBJSENSE";
    case Section::kRows: return "ROWS";
    case Section::kColumns: return "COLUMNS";
    case Section::kRhs: return "RHS";
    case Section::kRanges: return "RANGES";
    case Section::kBounds: return "BOUNDS";
    case Section::kEndata: return "ENDATA";
  }
  return "?";
}

std::vector<std::string_view> Tokenize(std::string_view line) {
  std::vector<std::string_view> tokens;
  size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t' ||
                               line[i] == '\r')) {
      ++i;
    }
    const size_t start = i;
    while (i < line.size() && line[i] != ' ' && line[i] != '\t' &&
           line[i] != '\r') {
      ++i;
    }
    if (i > start) tokens.push_back(line.substr(start, i - start));
  }
  return tokens;
}

std::string Upper(std::string_view s) {
  std::string out(s);
  for (char& c : out) {
    if (c >= 'a' && c <= 'z') c = static_cast<char>(c - 'a' + 'A');
  }
  return out;
}

struct RowInfo {
  int index = -1;  // -1 for the objective row
  RowSense sense = RowSense::kLe;
};

class MpsReader {
 public:
  MipProblem Parse(std::string_view text);

 private:
  [[noreturn]] void Fail(const std::string& msg) const {
    throw MpsError(line_no_, msg);
  }
  double Number(std::string_view token) const;
  void EnterSection(Section next);
  void ParseRowLine(const std::vector<std::string_view>& tok);
  void ParseColumnLine(const std::vector<std::string_view>& tok);
  void ParseRhsLine(const std::vector<std::string_view>& tok);
  void ParseRangeLine(const std::vector<std::string_view>& tok);
  void ParseBoundLine(const std::vector<std::string_view>& tok);
  const RowInfo& LookupRow(std::string_view name) const;
  int LookupColumn(std::string_view name) const;
  MipProblem Finish();

  int line_no_ = 0;
  Section section_ = Section::kNone;
  bool in_integer_block_ = false;
  bool awaiting_objsense_ = false;

  MipProblem problem_;
  std::optional<std::string> objective_row_;
  std::unordered_map<std::string, RowInfo> rows_;
  std::unordered_map<std::string, int> columns_;
  std::map<std::pair<int, int>, int> seen_entries_;  // (row, col) -> line
  std::vector<bool> lower_set_;
  std::vector<bool> upper_set_;
  std::vector<std::optional<double>> ranges_;
};

double MpsReader::Number(std::string_view token) const {
  double value = 0.0;
  const std::string upper = Upper(token);
  if (upper == "INF" || upper == "+INF" || upper == "INFINITY" ||
      upper == "+INFINITY") {
    return kInfinity;
  }
  if (upper == "-INF" || upper == "-INFINITY") return -kInfinity;
  const char* begin = token.data();
  if (!token.empty() && token.front() == '+') ++begin;
  auto [ptr, ec] = std::from_chars(begin, token.data() + token.size(), value);
  if (ec != std::errc() || ptr != token.data() + token.size()) {
    Fail("invalid number '" + std::string(token) + "'");
  }
  return value;
}

void MpsReader::EnterSection(Section next) {
  if (static_cast<int>(next) <= static_cast<int>(section_)) {
    Fail(std::string("section ") + SectionName(next) + " out of order (after " +
         SectionName(section_) + ")");
  }
  if (next >= Section::kColumns && section_ < Section::kRows) {
    Fail(std::string("section ") + SectionName(next) + " before ROWS");
  }
  if (next > Section::kColumns && section_ < Section::kColumns &&
      next != Section::kEndata) {
    Fail(std::string("section ") + SectionName(next) + " before COLUMNS");
  }
  section_ = next;
}

const RowInfo& MpsReader::LookupRow(std::string_view name) const {
  auto it = rows_.find(std::string(name));
  if (it == rows_.end()) Fail("unknown row '" + std::string(name) + "'");
  return it->second;
}

int MpsReader::LookupColumn(std::string_view name) const {
  auto it = columns_.find(std::string(name));
  if (it == columns_.end()) Fail("unknown column '" + std::string(name) + "'");
  return it->second;
}

void MpsReader::ParseRowLine(const std::vector<std::string_view>& tok) {
  if (tok.size() != 2) Fail("ROWS entry needs a sense and a name");
  const std::string sense = Upper(tok[0]);
  const std::string name(tok[1]);
  if (rows_.contains(name)) Fail("duplicate row '" + name + "'");
  if (sense == "N") {
    if (objective_row_) {
      Fail("duplicate objective row '" + name + "' (objective is '" +
           *objective_row_ + "')");
    }
    objective_row_ = name;
    problem_.objective_name = name;
    rows_[name] = RowInfo{-1, RowSense::kLe};
    return;
  }
  RowSense row_sense;
  if (sense == "L") {
    row_sense = RowSense::kLe;
  } else if (sense == "G") {
    row_sense = RowSense::kGe;
  } else if (sense == "E") {
    row_sense = RowSense::kEq;
  } else {
    Fail("unknown row sense '" + sense + "'");
  }
  const int index = problem_.AddRow(name, {}, row_sense, 0.0);
  rows_[name] = RowInfo{index, row_sense};
  ranges_.emplace_back();
}

void MpsReader::ParseColumnLine(const std::vector<std::string_view>& tok) {
  if (tok.size() >= 3 && Upper(tok[1]) == "'MARKER'") {
    const std::string marker = Upper(tok[2]);
    if (marker == "'INTORG'") {
      in_integer_block_ = true;
    } else if (marker == "'INTEND'") {
      in_integer_block_ = false;
    } else {
      Fail("unknown marker " + std::string(tok[2]));
    }
    return;
  }
  if (tok.size() != 3 && tok.size() != 5) {
    Fail("COLUMNS entry needs a column and one or two (row, value) pairs");
  }
  const std::string col_name(tok[0]);
  int col;
  if (auto it = columns_.find(col_name); it != columns_.end()) {
    col = it->second;
  } else {
    col = problem_.AddVariable(col_name, 0.0, 0.0, kInfinity,
                               in_integer_block_ ? VarKind::kInteger
                                                 : VarKind::kContinuous);
    columns_[col_name] = col;
    lower_set_.push_back(false);
    upper_set_.push_back(false);
  }
  for (size_t k = 1; k + 1 < tok.size(); k += 2) {
    const RowInfo& row = LookupRow(tok[k]);
    const double value = Number(tok[k + 1]);
    auto [it, inserted] = seen_entries_.emplace(std::make_pair(row.index, col),
                                                line_no_);
    if (!inserted) {
      Fail("duplicate entry for column '" + col_name + "' in row '" +
           std::string(tok[k]) + "' (first on line " +
           std::to_string(it->second) + ")");
    }
    if (row.index < 0) {
      problem_.objective[col] = value;
    } else if (value != 0.0) {
      problem_.rows[row.index].coeffs.emplace_back(col, value);
    }
  }
}

void MpsReader::ParseRhsLine(const std::vector<std::string_view>& tok) {
  if (tok.size() < 2) Fail("RHS entry too short");
  const size_t first = tok.size() % 2 == 1 ? 1 : 0;
  for (size_t k = first; k + 1 < tok.size(); k += 2) {
    const RowInfo& row = LookupRow(tok[k]);
    const double value = Number(tok[k + 1]);
    if (row.index < 0) {
      problem_.objective_offset = -value;
    } else {
      problem_.rows[row.index].rhs = value;
    }
  }
}

void MpsReader::ParseRangeLine(const std::vector<std::string_view>& tok) {
  if (tok.size() < 2) Fail("RANGES entry too short");
  const size_t first = tok.size() % 2 == 1 ? 1 : 0;
  for (size_t k = first; k + 1 < tok.size(); k += 2) {
    const RowInfo& row = LookupRow(tok[k]);
    if (row.index < 0) Fail("RANGES entry on the objective row");
    ranges_[row.index] = Number(tok[k + 1]);
  }
}

void MpsReader::ParseBoundLine(const std::vector<std::string_view>& tok) {
  if (tok.size() < 2) Fail("BOUNDS entry too short");
  const std::string type = Upper(tok[0]);
  const bool valueless = type == "FR" || type == "MI" || type == "PL" ||
                         type == "BV";
  // Layout is "type [set] column [value]"; the set name is optional.
  int col = -1;
  std::optional<double> value;
  if (valueless) {
    if (tok.size() == 2) {
      col = LookupColumn(tok[1]);
    } else if (tok.size() == 3) {
      // Either "type set column" or "type column value" (BV only).
      if (columns_.contains(std::string(tok[2]))) {
        col = LookupColumn(tok[2]);
      } else {
        col = LookupColumn(tok[1]);
        value = Number(tok[2]);
      }
    } else if (tok.size() == 4) {
      col = LookupColumn(tok[2]);
      value = Number(tok[3]);
    } else {
      Fail("malformed " + type + " bound");
    }
  } else {
    if (tok.size() == 3) {
      col = LookupColumn(tok[1]);
      value = Number(tok[2]);
    } else if (tok.size() == 4) {
      col = LookupColumn(tok[2]);
      value = Number(tok[3]);
    } else {
      Fail("malformed " + type + " bound");
    }
  }
  double& lb = problem_.lower[col];
  double& ub = problem_.upper[col];
  auto clamp_inf = [](double v) {
    if (v >= kMpsInfinity) return kInfinity;
    if (v <= -kMpsInfinity) return -kInfinity;
    return v;
  };
  if (type == "UP" || type == "UI") {
    ub = clamp_inf(*value);
    if (ub < 0.0 && !lower_set_[col]) lb = -kInfinity;
    upper_set_[col] = true;
    if (type == "UI") problem_.kinds[col] = VarKind::kInteger;
  } else if (type == "LO" || type == "LI") {
    lb = clamp_inf(*value);
    lower_set_[col] = true;
    if (type == "LI") problem_.kinds[col] = VarKind::kInteger;
  } else if (type == "FX") {
    lb = ub = *value;
    lower_set_[col] = upper_set_[col] = true;
  } else if (type == "FR") {
    lb = -kInfinity;
    ub = kInfinity;
    lower_set_[col] = upper_set_[col] = true;
  } else if (type == "MI") {
    lb = -kInfinity;
    lower_set_[col] = true;
  } else if (type == "PL") {
    ub = kInfinity;
    upper_set_[col] = true;
  } else if (type == "BV") {
    lb = 0.0;
    ub = 1.0;
    problem_.kinds[col] = VarKind::kBinary;
    lower_set_[col] = upper_set_[col] = true;
  } else {
    Fail("unsupported bound type '" + type + "'");
  }
}

MipProblem MpsReader::Finish() {
  if (!objective_row_) Fail("no objective (N) row");
  for (int j = 0; j < problem_.num_vars(); ++j) {
    if (problem_.kinds[j] == VarKind::kContinuous) continue;
    if (!lower_set_[j] && !upper_set_[j]) {
      problem_.lower[j] = 0.0;
      problem_.upper[j] = 1.0;
    }
    if (problem_.lower[j] == 0.0 && problem_.upper[j] == 1.0) {
      problem_.kinds[j] = VarKind::kBinary;
    }
  }
  // Expand ranged rows into a GE/LE pair.
  const int original_rows = problem_.num_rows();
  for (int i = 0; i < original_rows; ++i) {
    if (!ranges_[i]) continue;
    Row& row = problem_.rows[i];
    const double r = std::abs(*ranges_[i]);
    double lo = row.rhs;
    double hi = row.rhs;
    switch (row.sense) {
      case RowSense::kLe: lo = row.rhs - r; break;
      case RowSense::kGe: hi = row.rhs + r; break;
      case RowSense::kEq:
        if (*ranges_[i] >= 0.0) {
          hi = row.rhs + r;
        } else {
          lo = row.rhs - r;
        }
        break;
    }
    Row upper_row{row.name + "_rng", row.coeffs, RowSense::kLe, hi};
    row.sense = RowSense::kGe;
    row.rhs = lo;
    problem_.rows.push_back(std::move(upper_row));
  }
  return std::move(problem_);
}

MipProblem MpsReader::Parse(std::string_view text) {
  size_t pos = 0;
  while (pos <= text.size() && section_ != Section::kEndata) {
    size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_no_;
    if (line.empty() || line.front() == '*') {
      if (end == text.size()) break;
      continue;
    }
    const auto tok = Tokenize(line);
    if (tok.empty()) {
      if (end == text.size()) break;
      continue;
    }
    const bool header = line.front() != ' ' && line.front() != '\t';
    if (header) {
      const std::string keyword = Upper(tok[0]);
      awaiting_objsense_ = false;
      if (keyword == "NAME") {
        EnterSection(Section::kName);
        if (tok.size() > 1) problem_.name = std::string(tok[1]);
      } else if (keyword == "OBJSENSE") {
        EnterSection(Section::kObjSense);
        if (tok.size() > 1) {
          const std::string s = Upper(tok[1]);
          problem_.sense = (s == "MAX" || s == "MAXIMIZE") ? ObjSense::kMaximize
                                                          : ObjSense::kMinimize;
        } else {
          awaiting_objsense_ = true;
        }
      } else if (keyword == "ROWS") {
        EnterSection(Section::kRows);
      } else if (keyword == "COLUMNS") {
        EnterSection(Section::kColumns);
      } else if (keyword == "RHS") {
        EnterSection(Section::kRhs);
      } else if (keyword == "RANGES") {
        EnterSection(Section::kRanges);
      } else if (keyword == "BOUNDS") {
        EnterSection(Section::kBounds);
      } else if (keyword == "ENDATA") {
        EnterSection(Section::kEndata);
      } else if (keyword == "MAX" || keyword == "MAXIMIZE" || keyword == "MIN" ||
                 keyword == "MINIMIZE") {
        if (section_ != Section::kObjSense) Fail("unexpected " + keyword);
        problem_.sense = (keyword == "MAX" || keyword == "MAXIMIZE")
                             ? ObjSense::kMaximize
                             : ObjSense::kMinimize;
      } else {
        Fail("unknown or unsupported section '" + keyword + "'");
      }
      continue;
    }
    switch (section_) {
      case Section::kObjSense: {
        const std::string s = Upper(tok[0]);
        if (s == "MAX" || s == "MAXIMIZE") {
          problem_.sense = ObjSense::kMaximize;
        } else if (s == "MIN" || s == "MINIMIZE") {
          problem_.sense = ObjSense::kMinimize;
        } else {
          Fail("unknown objective sense '" + s + "'");
        }
        break;
      }
      case Section::kRows: ParseRowLine(tok); break;
      case Section::kColumns: ParseColumnLine(tok); break;
      case Section::kRhs: ParseRhsLine(tok); break;
      case Section::kRanges: ParseRangeLine(tok); break;
      case Section::kBounds: ParseBoundLine(tok); break;
      default: Fail("data line outside of any section");
    }
  }
  if (section_ < Section::kRows) {
    line_no_ = std::max(line_no_, 1);
    Fail("missing ROWS section");
  }
  return Finish();
}

std::string FormatNumber(double v) {
  if (v == kInfinity) return "1e+30";
  if (v == -kInfinity) return "-1e+30";
  char buf[32];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, ptr);
}

}  // namespace

MpsError::MpsError(int line, const std::string& message)
    : std::runtime_error("MPS line " + std::to_string(line) + ": " + message),
      line_(line) {}

MipProblem ParseMps(std::string_view text) { return MpsReader().Parse(text); }

MipProblem ReadMpsFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  MipProblem problem = ParseMps(buffer.str());
  if (problem.name.empty()) {
    const size_t slash = path.find_last_of('/');
    problem.name = path.substr(slash == std::string::npos ? 0 : slash + 1);
  }
  return problem;
}

std::string WriteMps(const MipProblem& problem) {
  const int n = problem.num_vars();
  auto var_name = [&](int j) {
    return j < static_cast<int>(problem.var_names.size()) &&
                   !problem.var_names[j].empty()
               ? problem.var_names[j]
               : "C" + std::to_string(j);
  };
  auto row_name = [&](int i) {
    return problem.rows[i].name.empty() ? "R" + std::to_string(i)
                                        : problem.rows[i].name;
  };
  const std::string obj =
      problem.objective_name.empty() ? "OBJ" : problem.objective_name;

  // Column-major view of the constraint matrix.
  std::vector<std::vector<std::pair<int, double>>> columns(n);
  for (int i = 0; i < problem.num_rows(); ++i) {
    for (const auto& [var, coef] : problem.rows[i].coeffs) {
      columns[var].emplace_back(i, coef);
    }
  }

  std::ostringstream os;
  os << "NAME " << (problem.name.empty() ? "PROBLEM" : problem.name) << "\n";
  if (problem.sense == ObjSense::kMaximize) os << "OBJSENSE\n    MAX\n";
  os << "ROWS\n N  " << obj << "\n";
  for (int i = 0; i < problem.num_rows(); ++i) {
    const char* s = problem.rows[i].sense == RowSense::kLe   ? "L"
                    : problem.rows[i].sense == RowSense::kGe ? "G"
                                                             : "E";
    os << " " << s << "  " << row_name(i) << "\n";
  }
  os << "COLUMNS\n";
  bool in_int = false;
  int marker = 0;
  for (int j = 0; j < n; ++j) {
    const bool integral = problem.kinds[j] != VarKind::kContinuous;
    if (integral != in_int) {
      os << "    MARKER" << marker++ << " 'MARKER' "
         << (integral ? "'INTORG'" : "'INTEND'") << "\n";
      in_int = integral;
    }
    const std::string name = var_name(j);
    if (problem.objective[j] != 0.0 || columns[j].empty()) {
      os << "    " << name << "  " << obj << "  "
         << FormatNumber(problem.objective[j]) << "\n";
    }
    for (const auto& [row, coef] : columns[j]) {
      os << "    " << name << "  " << row_name(row) << "  " << FormatNumber(coef)
         << "\n";
    }
  }
  if (in_int) os << "    MARKER" << marker++ << " 'MARKER' 'INTEND'\n";
  os << "RHS\n";
  for (int i = 0; i < problem.num_rows(); ++i) {
    if (problem.rows[i].rhs != 0.0) {
      os << "    RHS  " << row_name(i) << "  " << FormatNumber(problem.rows[i].rhs)
         << "\n";
    }
  }
  if (problem.objective_offset != 0.0) {
    os << "    RHS  " << obj << "  " << FormatNumber(-problem.objective_offset)
       << "\n";
  }
  os << "BOUNDS\n";
  for (int j = 0; j < n; ++j) {
    const std::string name = var_name(j);
    const double lb = problem.lower[j];
    const double ub = problem.upper[j];
    const VarKind kind = problem.kinds[j];
    if (kind == VarKind::kBinary) {
      os << " BV BND  " << name << "\n";
      if (lb == 0.0 && ub == 1.0) continue;
    }
    if (lb == ub) {
      os << " FX BND  " << name << "  " << FormatNumber(lb) << "\n";
      continue;
    }
    if (lb == -kInfinity && ub == kInfinity) {
      os << " FR BND  " << name << "\n";
      continue;
    }
    const bool explicit_needed = kind != VarKind::kContinuous || ub < 0.0;
    if (lb == -kInfinity) {
      os << " MI BND  " << name << "\n";
    } else if (lb != 0.0 || explicit_needed) {
      os << " LO BND  " << name << "  " << FormatNumber(lb) << "\n";
    }
    if (ub != kInfinity) {
      os << " UP BND  " << name << "  " << FormatNumber(ub) << "\n";
    } else if (explicit_needed) {
      os << " PL BND  " << name << "\n";
    }
  }
  os << "ENDATA\n";
  return os.str();
}

void WriteMpsFile(const MipProblem& problem, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << WriteMps(problem);
}

std::vector<std::string> ListMpsFiles(const std::string& directory) {
  namespace fs = std::filesystem;
  if (!fs::is_directory(directory)) {
    throw std::runtime_error("not a directory: " + directory);
  }
  std::vector<std::string> files;
  for (const auto& entry : fs::directory_iterator(directory)) {
    if (entry.is_regular_file() && entry.path().extension() == ".mps") {
      files.push_back(entry.path().string());
    }
  }
  std::sort(files.begin(), files.end());
  return files;
}

std::string InstanceName(const std::string& path) {
  return std::filesystem::path(path).stem().string();
}

}  // namespace dash
