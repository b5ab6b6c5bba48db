#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "crl/forms.hpp"
#include "crl/json_io.hpp"
#include "crl/partition.hpp"

namespace crl::cli {

enum class Format { Json, Csv, Table };

struct RunConfig {
  std::string command;
  std::string coeffs;
  bool scaled = false;  // --basis scaled
  std::optional<std::string> partition;
  std::optional<int> hook;
  int starts = 200;
  std::uint64_t seed = 1234567;
  int threads = 1;
  std::optional<double> tol;
  Format format = Format::Table;
  int k = 1;               // lop
  std::optional<int> n;    // verify-table
};

struct Table {
  std::string title;
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
};

/// What a command produced: the JSON document is the full-precision result;
/// tables and notes are the human view of it.
struct Report {
  Json json;
  std::vector<Table> tables;
  std::vector<std::string> notes;
  bool all_pass = true;  // verify-table only
};

Report cmd_degrees(const Partition& lambda);
Report cmd_solve(const RationalForm& h, const RunConfig& config);
Report cmd_realrank(const RationalForm& h, const RunConfig& config);
/// n in 2..7, or every n when empty. Throws OutOfTable otherwise.
Report cmd_verify_table(std::optional<int> n);
Report cmd_lop(const RationalForm& h, int k);

std::string render(const Report& report, Format format);

/// 6 significant digits, as in the printed tables.
std::string fmt(double x);

/// Parses argv, runs the command and writes the rendered report. Returns 0
/// on success, 1 when verify-table has a FAIL cell, 2 on a library error,
/// and the CLI11 code on a usage error.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace crl::cli
