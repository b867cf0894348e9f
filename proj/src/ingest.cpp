#include "triplex/ingest.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <set>
#include <unordered_map>

#include "csv.hpp"

namespace triplex {

namespace {

[[noreturn]] void parse_fail(const std::filesystem::path& path, size_t line_no,
                             const std::string& what) {
  throw ParseError(path.string() + ":" + std::to_string(line_no) + ": " + what);
}

void check_header(const std::filesystem::path& path, const csv::Row& row,
                  const std::vector<std::string>& expected) {
  if (row.fields != expected) {
    std::string want;
    for (size_t i = 0; i < expected.size(); ++i) {
      if (i) want += ',';
      want += expected[i];
    }
    parse_fail(path, row.line_no, "expected header '" + want + "'");
  }
}

int parse_int(const std::filesystem::path& path, size_t line_no, const std::string& s,
              const char* what) {
  try {
    size_t pos = 0;
    int v = std::stoi(s, &pos);
    if (pos != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    parse_fail(path, line_no, std::string("bad ") + what + " '" + s + "'");
  }
}

double parse_double(const std::filesystem::path& path, size_t line_no, const std::string& s,
                    const char* what) {
  try {
    size_t pos = 0;
    double v = std::stod(s, &pos);
    if (pos != s.size() || !std::isfinite(v)) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    parse_fail(path, line_no, std::string("bad ") + what + " '" + s + "'");
  }
}

/// Builds a labeled matrix from an accumulation map keyed (row, col), with
/// lexicographically sorted labels.
ValuedMatrix to_matrix(const std::map<std::pair<std::string, std::string>, double>& cells,
                       AxisKind row_kind, AxisKind col_kind) {
  std::set<std::string> row_set, col_set;
  for (const auto& [key, value] : cells) {
    (void)value;
    row_set.insert(key.first);
    col_set.insert(key.second);
  }
  std::vector<std::string> rows(row_set.begin(), row_set.end());
  std::vector<std::string> cols(col_set.begin(), col_set.end());
  std::unordered_map<std::string, Eigen::Index> ri, ci;
  for (size_t i = 0; i < rows.size(); ++i) ri[rows[i]] = static_cast<Eigen::Index>(i);
  for (size_t j = 0; j < cols.size(); ++j) ci[cols[j]] = static_cast<Eigen::Index>(j);
  Eigen::MatrixXd values = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(rows.size()),
                                                 static_cast<Eigen::Index>(cols.size()));
  for (const auto& [key, value] : cells) {
    values(ri[key.first], ci[key.second]) = value;
  }
  return ValuedMatrix(std::move(rows), std::move(cols), std::move(values), row_kind, col_kind);
}

}  // namespace

ValuedMatrix load_trade(const std::filesystem::path& path, int year, int digit_level) {
  if (digit_level != 2 && digit_level != 3) {
    throw PreconditionError("digit level must be 2 or 3");
  }
  auto rows = csv::read_file(path);
  if (rows.empty()) throw ParseError(path.string() + ": empty file");
  check_header(path, rows[0], {"year", "country", "product_code", "value"});

  std::map<std::pair<std::string, std::string>, double> cells;
  bool year_seen = false;
  for (size_t r = 1; r < rows.size(); ++r) {
    const auto& row = rows[r];
    if (row.fields.size() != 4) parse_fail(path, row.line_no, "expected 4 fields");
    int row_year = parse_int(path, row.line_no, row.fields[0], "year");
    const std::string& country = row.fields[1];
    const std::string& code = row.fields[2];
    double value = parse_double(path, row.line_no, row.fields[3], "value");
    if (country.empty()) parse_fail(path, row.line_no, "empty country");
    if (code.empty()) parse_fail(path, row.line_no, "empty product code");
    if (value < 0.0) parse_fail(path, row.line_no, "negative value");
    if (row_year != year) continue;
    year_seen = true;
    cells[{country, code.substr(0, static_cast<size_t>(digit_level))}] += value;
  }
  if (!year_seen) {
    throw UnknownYear(path.string() + " has no rows for year " + std::to_string(year));
  }
  return to_matrix(cells, AxisKind::Country, AxisKind::Product);
}

std::vector<PatentRecord> load_patent_records(const std::filesystem::path& path, int year) {
  auto rows = csv::read_file(path);
  if (rows.empty()) throw ParseError(path.string() + ": empty file");
  check_header(path, rows[0], {"year", "patent_id", "class", "country", "share"});

  // One record per (patent, class); shares are aggregated per country and
  // must sum to 1 within each record.
  std::map<std::pair<std::string, std::string>, PatentRecord> records;
  bool year_seen = false;
  for (size_t r = 1; r < rows.size(); ++r) {
    const auto& row = rows[r];
    if (row.fields.size() != 5) parse_fail(path, row.line_no, "expected 5 fields");
    int row_year = parse_int(path, row.line_no, row.fields[0], "year");
    const std::string& id = row.fields[1];
    const std::string& tech_class = row.fields[2];
    const std::string& country = row.fields[3];
    double share = parse_double(path, row.line_no, row.fields[4], "share");
    if (id.empty()) parse_fail(path, row.line_no, "empty patent id");
    if (tech_class.empty()) parse_fail(path, row.line_no, "empty class");
    if (country.empty()) parse_fail(path, row.line_no, "patent row without inventor country");
    if (share <= 0.0) {
      throw BadShares(path.string() + ":" + std::to_string(row.line_no) +
                      ": share must be positive");
    }
    if (row_year != year) continue;
    year_seen = true;
    auto& rec = records[{id, tech_class}];
    rec.year = row_year;
    rec.id = id;
    rec.tech_class = tech_class;
    auto it = std::find_if(rec.country_shares.begin(), rec.country_shares.end(),
                           [&](const auto& cs) { return cs.first == country; });
    if (it == rec.country_shares.end()) {
      rec.country_shares.emplace_back(country, share);
    } else {
      it->second += share;
    }
  }
  if (!year_seen) {
    throw UnknownYear(path.string() + " has no rows for year " + std::to_string(year));
  }

  std::vector<PatentRecord> out;
  out.reserve(records.size());
  for (auto& [key, rec] : records) {
    double total = 0.0;
    for (const auto& [country, share] : rec.country_shares) {
      (void)country;
      total += share;
    }
    if (std::abs(total - 1.0) > 1e-9) {
      throw BadShares("patent '" + key.first + "' class '" + key.second + "': shares sum to " +
                      std::to_string(total) + ", expected 1");
    }
    out.push_back(std::move(rec));
  }
  return out;
}

ValuedMatrix load_patents(const std::filesystem::path& path, int year, Counting counting) {
  auto records = load_patent_records(path, year);
  std::map<std::pair<std::string, std::string>, double> cells;
  for (const auto& rec : records) {
    for (const auto& [country, share] : rec.country_shares) {
      cells[{country, rec.tech_class}] += (counting == Counting::Fractional) ? share : 1.0;
    }
  }
  return to_matrix(cells, AxisKind::Country, AxisKind::Technology);
}

ConcordanceTable load_concordance(const std::filesystem::path& path, std::string source_scheme,
                                  std::string target_scheme) {
  auto rows = csv::read_file(path);
  if (rows.empty()) throw ParseError(path.string() + ": empty file");
  check_header(path, rows[0], {"source_code", "target_code"});
  std::set<std::pair<std::string, std::string>> pairs;
  for (size_t r = 1; r < rows.size(); ++r) {
    const auto& row = rows[r];
    if (row.fields.size() != 2) parse_fail(path, row.line_no, "expected 2 fields");
    if (row.fields[0].empty() || row.fields[1].empty()) {
      parse_fail(path, row.line_no, "empty code");
    }
    pairs.emplace(row.fields[0], row.fields[1]);
  }
  return ConcordanceTable{std::move(source_scheme), std::move(target_scheme),
                          {pairs.begin(), pairs.end()}};
}

ConcordanceTable chain_concordances(const std::vector<ConcordanceTable>& tables) {
  if (tables.empty()) {
    throw PreconditionError("concordance chain requires at least one table");
  }
  for (size_t i = 0; i + 1 < tables.size(); ++i) {
    if (tables[i].target_scheme != tables[i + 1].source_scheme) {
      throw SchemeMismatch("cannot chain '" + tables[i].target_scheme + "' into '" +
                           tables[i + 1].source_scheme + "'");
    }
  }
  std::set<std::pair<std::string, std::string>> current(tables[0].pairs.begin(),
                                                        tables[0].pairs.end());
  for (size_t i = 1; i < tables.size(); ++i) {
    std::unordered_map<std::string, std::vector<std::string>> next_hop;
    for (const auto& [src, dst] : tables[i].pairs) next_hop[src].push_back(dst);
    std::set<std::pair<std::string, std::string>> composed;
    for (const auto& [src, mid] : current) {
      auto it = next_hop.find(mid);
      if (it == next_hop.end()) continue;
      for (const auto& dst : it->second) composed.emplace(src, dst);
    }
    current = std::move(composed);
  }
  return ConcordanceTable{tables.front().source_scheme, tables.back().target_scheme,
                          {current.begin(), current.end()}};
}

IncidenceResult concordance_to_incidence(const ConcordanceTable& table,
                                         const std::vector<std::string>& row_labels,
                                         const std::vector<std::string>& col_labels,
                                         PairOrientation orientation, AxisKind row_kind,
                                         AxisKind col_kind) {
  if (row_labels.empty() || col_labels.empty()) {
    throw PreconditionError("incidence label lists must be nonempty");
  }
  std::unordered_map<std::string, Eigen::Index> ri, ci;
  for (size_t i = 0; i < row_labels.size(); ++i) ri[row_labels[i]] = static_cast<Eigen::Index>(i);
  for (size_t j = 0; j < col_labels.size(); ++j) ci[col_labels[j]] = static_cast<Eigen::Index>(j);
  Eigen::MatrixXd values = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(row_labels.size()),
                                                 static_cast<Eigen::Index>(col_labels.size()));
  for (const auto& [src, dst] : table.pairs) {
    const std::string& row_code = (orientation == PairOrientation::SourceIsRow) ? src : dst;
    const std::string& col_code = (orientation == PairOrientation::SourceIsRow) ? dst : src;
    auto it_r = ri.find(row_code);
    auto it_c = ci.find(col_code);
    if (it_r != ri.end() && it_c != ci.end()) values(it_r->second, it_c->second) = 1.0;
  }
  BinaryIncidence raw(row_labels, col_labels, std::move(values), row_kind, col_kind);
  PruneResult pruned = prune(raw);
  return IncidenceResult{std::move(pruned.matrix), std::move(pruned.removed_rows),
                         std::move(pruned.removed_cols)};
}

IndexPanel load_panel(const std::filesystem::path& path, std::string kind) {
  auto rows = csv::read_file(path);
  if (rows.empty()) throw ParseError(path.string() + ": empty file");
  const auto& header = rows[0];
  if (header.fields.size() < 2 || header.fields[0] != "entity") {
    parse_fail(path, header.line_no, "expected header 'entity,<year>,...'");
  }
  std::vector<int> years;
  for (size_t j = 1; j < header.fields.size(); ++j) {
    years.push_back(parse_int(path, header.line_no, header.fields[j], "year"));
    if (years.size() > 1 && years[years.size() - 2] >= years.back()) {
      parse_fail(path, header.line_no, "years must be strictly increasing");
    }
  }

  std::vector<std::string> entities;
  std::set<std::string> seen;
  std::vector<std::vector<double>> grid;
  for (size_t r = 1; r < rows.size(); ++r) {
    const auto& row = rows[r];
    if (row.fields.size() != header.fields.size()) {
      parse_fail(path, row.line_no,
                 "expected " + std::to_string(header.fields.size()) + " fields, got " +
                     std::to_string(row.fields.size()));
    }
    const std::string& entity = row.fields[0];
    if (entity.empty()) parse_fail(path, row.line_no, "empty entity");
    if (!seen.insert(entity).second) {
      throw DuplicateEntity(path.string() + ":" + std::to_string(row.line_no) + ": entity '" +
                            entity + "' appears twice");
    }
    entities.push_back(entity);
    std::vector<double> values;
    for (size_t j = 1; j < row.fields.size(); ++j) {
      if (row.fields[j].empty()) {
        values.push_back(std::numeric_limits<double>::quiet_NaN());
      } else {
        values.push_back(parse_double(path, row.line_no, row.fields[j], "value"));
      }
    }
    grid.push_back(std::move(values));
  }
  if (entities.empty()) {
    throw ParseError(path.string() + ": no data rows");
  }

  Eigen::MatrixXd values(static_cast<Eigen::Index>(entities.size()),
                         static_cast<Eigen::Index>(years.size()));
  for (size_t i = 0; i < grid.size(); ++i) {
    for (size_t j = 0; j < grid[i].size(); ++j) {
      values(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = grid[i][j];
    }
  }
  if (kind.empty()) kind = path.stem().string();
  return IndexPanel(std::move(entities), std::move(years), std::move(values), std::move(kind));
}

}  // namespace triplex
