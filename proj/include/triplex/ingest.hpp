#pragma once

#include <filesystem>
#include <string>
#include <utility>
#include <vector>

#include "triplex/labeled.hpp"

namespace triplex {

/// Mapping between two classification schemes as a set of code pairs.
struct ConcordanceTable {
  std::string source_scheme;
  std::string target_scheme;
  std::vector<std::pair<std::string, std::string>> pairs;  // sorted, deduplicated
};

struct PatentRecord {
  int year = 0;
  std::string id;
  std::string tech_class;
  std::vector<std::pair<std::string, double>> country_shares;  // sums to 1
};

enum class Counting { Fractional, Integer };

enum class PairOrientation { SourceIsRow, SourceIsCol };

/// Reads `year,country,product_code,value` rows, keeps the requested year,
/// truncates codes to `digit_level` characters, and sums duplicates.
ValuedMatrix load_trade(const std::filesystem::path& path, int year, int digit_level);

/// Reads `year,patent_id,class,country,share` rows into a country x class
/// count matrix. Fractional counting credits each country its inventor
/// share; integer counting credits 1 per country per (patent, class).
ValuedMatrix load_patents(const std::filesystem::path& path, int year, Counting counting);

/// Parsed patent records of one year, one per (patent, class), shares
/// aggregated by country.
std::vector<PatentRecord> load_patent_records(const std::filesystem::path& path, int year);

/// Reads `source_code,target_code` rows.
ConcordanceTable load_concordance(const std::filesystem::path& path, std::string source_scheme,
                                  std::string target_scheme);

/// Relational composition of the tables in order; (s, u) is present iff a
/// path s -> ... -> u exists through every table.
ConcordanceTable chain_concordances(const std::vector<ConcordanceTable>& tables);

struct IncidenceResult {
  BinaryIncidence matrix;
  std::vector<std::string> removed_rows;
  std::vector<std::string> removed_cols;
};

/// Incidence matrix over the given label lists: a cell is 1 iff the
/// corresponding pair is in the table; the result is pruned.
IncidenceResult concordance_to_incidence(const ConcordanceTable& table,
                                         const std::vector<std::string>& row_labels,
                                         const std::vector<std::string>& col_labels,
                                         PairOrientation orientation,
                                         AxisKind row_kind = AxisKind::Product,
                                         AxisKind col_kind = AxisKind::Technology);

/// Reads an `entity,<year>,<year>,...` grid; blank cells become missing.
IndexPanel load_panel(const std::filesystem::path& path, std::string kind = "");

}  // namespace triplex
