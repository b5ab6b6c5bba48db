#include <map>
#include <sstream>

#include "crl/error.hpp"
#include "crl/partition.hpp"

namespace crl {

namespace {

struct RawRow {
  const char* lambda;
  const char* multidegree;
  long special;
  long generic;
  const char* hooks;  // space separated labels
};

// Census of multiple root loci for n <= 7: polar classes, the two ED
// degrees, and the hooks whose join is the dual variety.
constexpr RawRow kRows[] = {
    {"2", "2,2", 2, 4, "2"},
    {"3", "0,3,4", 3, 7, "21"},
    {"21", "4,3,0", 3, 7, "3"},
    {"4", "0,0,4,6", 4, 10, "211"},
    {"31", "0,6,6,0", 4, 12, "31"},
    {"211", "6,4,0,0", 4, 10, "4"},
    {"22", "0,4,6,3", 7, 13, "4 4"},
    {"5", "0,0,0,5,8", 5, 13, "2111"},
    {"41", "0,0,8,9,0", 5, 17, "311"},
    {"311", "0,9,8,0,0", 5, 17, "41"},
    {"2111", "8,5,0,0,0", 5, 13, "5"},
    {"221", "0,12,16,6,0", 16, 34, "5 5"},
    {"32", "0,0,12,21,12", 21, 45, "41 5"},
    {"6", "0,0,0,0,6,10", 6, 16, "21111"},
    {"51", "0,0,0,10,12,0", 6, 22, "3111"},
    {"411", "0,0,12,12,0,0", 6, 24, "411"},
    {"3111", "0,12,10,0,0,0", 6, 22, "51"},
    {"21111", "10,6,0,0,0,0", 6, 16, "6"},
    {"2211", "0,24,30,10,0,0", 28, 64, "6 6"},
    {"222", "0,0,8,16,12,4", 20, 40, "6 6 6"},
    {"33", "0,0,0,9,18,12", 19, 39, "51 51"},
    {"321", "0,0,36,56,24,0", 44, 116, "51 6"},
    {"42", "0,0,0,16,30,18", 26, 64, "411 6"},
    {"7", "0,0,0,0,0,7,12", 7, 19, "211111"},
    {"61", "0,0,0,0,12,15,0", 7, 27, "31111"},
    {"511", "0,0,0,15,16,0,0", 7, 31, "4111"},
    {"4111", "0,0,16,15,0,0,0", 7, 31, "511"},
    {"31111", "0,15,12,0,0,0,0", 7, 27, "61"},
    {"211111", "12,7,0,0,0,0,0", 7, 19, "7"},
    {"22111", "0,40,48,15,0,0,0", 43, 103, "7 7"},
    {"2221", "0,0,32,60,40,10,0", 62, 142, "7 7 7"},
    {"3211", "0,0,72,105,40,0,0", 73, 217, "61 7"},
    {"322", "0,0,0,36,80,66,24", 94, 206, "61 7 7"},
    {"331", "0,0,0,27,48,24,0", 39, 99, "61 61"},
    {"421", "0,0,0,48,80,36,0", 52, 164, "511 7"},
    {"43", "0,0,0,0,24,51,36", 51, 111, "511 61"},
    {"52", "0,0,0,0,20,39,24", 31, 83, "4111 7"},
};

// Single-digit labels only (n <= 7).
Partition from_label(const std::string& label) {
  std::vector<int> parts;
  for (char c : label) parts.push_back(c - '0');
  return Partition(std::move(parts));
}

std::vector<Table1Row> build() {
  std::vector<Table1Row> rows;
  for (const RawRow& raw : kRows) {
    Table1Row row;
    row.lambda = from_label(raw.lambda);
    std::stringstream md(raw.multidegree);
    std::string cell;
    while (std::getline(md, cell, ',')) row.multidegree.push_back(std::stoll(cell));
    row.ed = EdDegrees{raw.special, raw.generic};
    std::stringstream hk(raw.hooks);
    while (hk >> cell) row.hooks.push_back(from_label(cell));
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace

const std::vector<Table1Row>& table1() {
  static const std::vector<Table1Row> rows = build();
  return rows;
}

const Table1Row& table1_lookup(const Partition& lambda) {
  if (lambda.size() > 7) throw Error(ErrorKind::OutOfTable, "census covers n <= 7 only");
  for (const auto& row : table1()) {
    if (row.lambda == lambda) return row;
  }
  throw Error(ErrorKind::OutOfTable, "no census row for " + lambda.to_string());
}

}  // namespace crl
