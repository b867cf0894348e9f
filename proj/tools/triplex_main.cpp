// Command line front end: eci / patci / thci / correlate / reproduce.
#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "triplex/ingest.hpp"
#include "triplex/rca.hpp"
#include "triplex/reflections.hpp"
#include "triplex/reproduce.hpp"
#include "triplex/stats.hpp"
#include "triplex/triple_helix.hpp"
#include "triplex/version.hpp"

namespace fs = std::filesystem;
using namespace triplex;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitReproductionFail = 1;
constexpr int kExitDataError = 2;
constexpr int kExitDegenerate = 3;

struct RunConfig {
  std::string command;
  fs::path trade_path;
  fs::path patents_path;
  std::vector<fs::path> concordance_paths;
  std::vector<fs::path> panel_paths;
  fs::path fixtures_dir = "data/reference";
  fs::path out_path;
  int year = 0;
  int digits = 3;
  std::string counting = "fractional";
  std::string rule;  // per-command default filled in later
  std::string method = "pearson";
  double threshold = 1.0;
  // correlate-mode selectors
  int cross_section_year = 0;
  bool cross_section = false;
  bool lagged = false;
  bool series = false;
  std::string entity;
  int lag = 0;
  std::string original_command_line;
};

EigenRule parse_rule(const std::string& s, EigenRule fallback) {
  if (s.empty()) return fallback;
  if (s == "second-largest") return EigenRule::SecondLargest;
  if (s == "largest-below-one") return EigenRule::LargestBelowOne;
  throw PreconditionError("unknown eigenvalue rule '" + s + "'");
}

CorrMethod parse_method(const std::string& s) {
  if (s == "pearson") return CorrMethod::Pearson;
  if (s == "spearman") return CorrMethod::Spearman;
  throw PreconditionError("unknown correlation method '" + s + "'");
}

Counting parse_counting(const std::string& s) {
  if (s == "fractional") return Counting::Fractional;
  if (s == "integer") return Counting::Integer;
  throw PreconditionError("unknown counting mode '" + s + "'");
}

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

/// Every command checks the whole configuration before reading any input.
void require_inputs_exist(const std::vector<fs::path>& paths) {
  for (const auto& p : paths) {
    if (!fs::exists(p)) {
      throw ParseError("input path '" + p.string() + "' does not exist");
    }
  }
}

std::ofstream open_out(const fs::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw ParseError("cannot open output path '" + path.string() + "'");
  }
  return out;
}

void write_header(std::ofstream& out, const RunConfig& cfg, const std::string& extra) {
  out << "# triplex " << TRIPLEX_VERSION << "\n";
  out << "# command: " << cfg.original_command_line << "\n";
  if (!extra.empty()) out << extra;
}

void write_index(std::ofstream& out, const ComplexityIndex& index) {
  out << "entity,value\n";
  for (size_t i = 0; i < index.labels().size(); ++i) {
    out << index.labels()[i] << "," << fmt(index.values()(static_cast<Eigen::Index>(i))) << "\n";
  }
}

void write_label_list(std::ofstream& out, const std::string& what,
                      const std::vector<std::string>& labels) {
  out << what << ":";
  if (labels.empty()) {
    out << " none";
  } else {
    for (const auto& l : labels) out << " " << l;
  }
  out << "\n";
}

void write_spectral(std::ofstream& out, const std::string& what, const SpectralResult& s,
                    const std::vector<std::string>& labels) {
  out << what << " eigenvalue: " << fmt(s.selected_eigenvalue.real());
  if (s.selected_eigenvalue.imag() != 0.0) out << "+" << fmt(s.selected_eigenvalue.imag()) << "i";
  out << "\n";
  for (const auto& w : s.warnings) out << what << " warning: " << w << "\n";
  out << what << " eigenvector:\n";
  for (size_t i = 0; i < labels.size(); ++i) {
    out << "  " << labels[i] << " " << fmt(s.eigenvector(static_cast<Eigen::Index>(i))) << "\n";
  }
}

int cmd_eci(const RunConfig& cfg) {
  require_inputs_exist({cfg.trade_path});
  EigenRule rule = parse_rule(cfg.rule, EigenRule::SecondLargest);
  ValuedMatrix trade = load_trade(cfg.trade_path, cfg.year, cfg.digits);
  BinarizeResult bin = binarize(rca(trade), cfg.threshold);
  IndexComputation comp = complexity_index_detail(bin.matrix, Axis::Rows, rule, cfg.year);

  auto out = open_out(cfg.out_path);
  std::string extra = "# rule: " + to_string(rule) + "\n# eigenvalue: " +
                      fmt(comp.spectral.selected_eigenvalue.real()) + "\n";
  write_header(out, cfg, extra);
  write_index(out, comp.index);

  auto report = open_out(fs::path(cfg.out_path.string() + ".report.txt"));
  write_label_list(report, "pruned countries", bin.removed_rows);
  write_label_list(report, "pruned products", bin.removed_cols);
  write_spectral(report, "selected", comp.spectral, comp.index.labels());
  return kExitOk;
}

int cmd_patci(const RunConfig& cfg) {
  require_inputs_exist({cfg.patents_path});
  EigenRule rule = parse_rule(cfg.rule, EigenRule::SecondLargest);
  ValuedMatrix patents = load_patents(cfg.patents_path, cfg.year, parse_counting(cfg.counting));
  BinarizeResult bin = binarize(rca(patents), cfg.threshold);
  IndexComputation comp = complexity_index_detail(bin.matrix, Axis::Rows, rule, cfg.year);

  auto out = open_out(cfg.out_path);
  std::string extra = "# rule: " + to_string(rule) + "\n# counting: " + cfg.counting +
                      "\n# eigenvalue: " + fmt(comp.spectral.selected_eigenvalue.real()) + "\n";
  write_header(out, cfg, extra);
  write_index(out, comp.index);

  auto report = open_out(fs::path(cfg.out_path.string() + ".report.txt"));
  write_label_list(report, "pruned countries", bin.removed_rows);
  write_label_list(report, "pruned technologies", bin.removed_cols);
  write_spectral(report, "selected", comp.spectral, comp.index.labels());
  return kExitOk;
}

int cmd_thci(const RunConfig& cfg) {
  std::vector<fs::path> inputs = {cfg.trade_path, cfg.patents_path};
  inputs.insert(inputs.end(), cfg.concordance_paths.begin(), cfg.concordance_paths.end());
  require_inputs_exist(inputs);
  if (cfg.concordance_paths.empty()) {
    throw ParseError("thci requires at least one --concordance file");
  }
  EigenRule rule = parse_rule(cfg.rule, EigenRule::LargestBelowOne);

  ValuedMatrix trade = load_trade(cfg.trade_path, cfg.year, cfg.digits);
  ValuedMatrix patents = load_patents(cfg.patents_path, cfg.year, parse_counting(cfg.counting));
  BinarizeResult cp = binarize(rca(trade), cfg.threshold);
  BinarizeResult ct = binarize(rca(patents), cfg.threshold);

  // Concordance files map technology classes to product codes, chained in
  // the order given on the command line.
  std::vector<ConcordanceTable> tables;
  for (size_t i = 0; i < cfg.concordance_paths.size(); ++i) {
    tables.push_back(load_concordance(cfg.concordance_paths[i], "scheme" + std::to_string(i),
                                      "scheme" + std::to_string(i + 1)));
  }
  ConcordanceTable chain = chain_concordances(tables);
  IncidenceResult pt = concordance_to_incidence(chain, cp.matrix.col_labels(),
                                                ct.matrix.col_labels(),
                                                PairOrientation::SourceIsCol);

  BuildResult built = build_system(cp.matrix, ct.matrix, pt.matrix);
  ThciComputation comp = thci_detail(built.system, rule, cfg.year);

  auto out = open_out(cfg.out_path);
  std::string extra = "# rule: " + to_string(rule) + "\n# counting: " + cfg.counting +
                      "\n# eigenvalue clockwise: " +
                      fmt(comp.clockwise.selected_eigenvalue.real()) +
                      "\n# eigenvalue counter-clockwise: " +
                      fmt(comp.counterclockwise.selected_eigenvalue.real()) + "\n";
  write_header(out, cfg, extra);
  write_index(out, comp.index);

  auto report = open_out(fs::path(cfg.out_path.string() + ".report.txt"));
  write_label_list(report, "removed countries", built.removed_countries);
  write_label_list(report, "removed products", built.removed_products);
  write_label_list(report, "removed technologies", built.removed_technologies);
  write_spectral(report, "clockwise", comp.clockwise, built.system.countries());
  write_spectral(report, "counter-clockwise", comp.counterclockwise, built.system.countries());
  return kExitOk;
}

int cmd_correlate(const RunConfig& cfg) {
  require_inputs_exist({cfg.panel_paths.begin(), cfg.panel_paths.end()});
  if (cfg.panel_paths.size() < 2) {
    throw ParseError("correlate requires at least two --panel files");
  }
  int modes = (cfg.cross_section ? 1 : 0) + (cfg.lagged ? 1 : 0) + (cfg.series ? 1 : 0);
  if (modes != 1) {
    throw ParseError("pick exactly one of --cross-section, --lagged, --series");
  }
  if (cfg.lagged && cfg.entity.empty()) {
    throw ParseError("--lagged requires --entity");
  }
  CorrMethod method = parse_method(cfg.method);

  std::vector<IndexPanel> panels;
  for (const auto& p : cfg.panel_paths) panels.push_back(load_panel(p));

  auto out = open_out(cfg.out_path);
  write_header(out, cfg, "# method: " + cfg.method + "\n");

  if (cfg.cross_section) {
    auto grid = cross_section_correlate(panels, cfg.cross_section_year, method);
    out << "pair,year,n,coefficient\n";
    for (size_t i = 0; i < panels.size(); ++i) {
      for (size_t j = i; j < panels.size(); ++j) {
        out << panels[i].kind() << "-" << panels[j].kind() << "," << cfg.cross_section_year << ","
            << grid[i][j].n_pairs << "," << fmt(grid[i][j].coefficient) << "\n";
      }
    }
  } else if (cfg.lagged) {
    out << "pair,lag,n,coefficient\n";
    for (size_t i = 0; i < panels.size(); ++i) {
      for (size_t j = i + 1; j < panels.size(); ++j) {
        auto report = lagged_correlate(panels[i].series(cfg.entity), panels[j].series(cfg.entity),
                                       method, cfg.lag);
        out << panels[i].kind() << "-" << panels[j].kind() << "," << cfg.lag << ","
            << report.n_pairs << "," << fmt(report.coefficient) << "\n";
      }
    }
  } else {
    out << "pair,year,n,coefficient\n";
    for (size_t i = 0; i < panels.size(); ++i) {
      for (size_t j = i + 1; j < panels.size(); ++j) {
        auto series = correlation_series(panels[i], panels[j], method);
        for (const auto& report : series.reports) {
          out << panels[i].kind() << "-" << panels[j].kind() << "," << *report.year << ","
              << report.n_pairs << "," << fmt(report.coefficient) << "\n";
        }
        for (const auto& [year, reason] : series.skipped) {
          std::cerr << "correlate: skipped " << panels[i].kind() << "-" << panels[j].kind() << " "
                    << year << ": " << reason << "\n";
        }
      }
    }
  }
  return kExitOk;
}

int cmd_reproduce(const RunConfig& cfg) {
  if (!fs::exists(cfg.fixtures_dir)) {
    throw ParseError("fixtures directory '" + cfg.fixtures_dir.string() + "' does not exist");
  }
  auto checks = run_reproduction(cfg.fixtures_dir);
  bool all_pass = true;
  std::ostringstream lines;
  for (const auto& c : checks) {
    all_pass = all_pass && c.pass;
    lines << (c.pass ? "PASS" : "FAIL") << "  " << c.name << ": computed " << fmt(c.computed)
          << ", target " << fmt(c.target) << " +/- " << fmt(c.tolerance) << "\n";
  }
  std::cout << lines.str();
  std::cout << (all_pass ? "all checks passed" : "REPRODUCTION FAILED") << "\n";
  if (!cfg.out_path.empty()) {
    auto out = open_out(cfg.out_path);
    write_header(out, cfg, "");
    out << lines.str();
  }
  return all_pass ? kExitOk : kExitReproductionFail;
}

}  // namespace

int main(int argc, char** argv) {
  RunConfig cfg;
  {
    std::ostringstream cmdline;
    for (int i = 1; i < argc; ++i) cmdline << (i > 1 ? " " : "") << argv[i];
    cfg.original_command_line = cmdline.str();
  }

  CLI::App app{"Economic, patent, and triple-helix complexity indices"};
  app.require_subcommand(1);

  auto add_rule = [&](CLI::App* cmd) {
    cmd->add_option("--rule", cfg.rule, "Eigenvalue rule: second-largest | largest-below-one");
  };

  auto* eci = app.add_subcommand("eci", "Economic complexity index from a trade file");
  eci->add_option("--trade", cfg.trade_path, "Trade CSV (year,country,product_code,value)")
      ->required();
  eci->add_option("--year", cfg.year, "Year to compute")->required();
  eci->add_option("--digits", cfg.digits, "Product code digit level (2 or 3)")
      ->check(CLI::IsMember({2, 3}));
  eci->add_option("--threshold", cfg.threshold, "Comparative advantage threshold");
  add_rule(eci);
  eci->add_option("--out", cfg.out_path, "Output CSV path")->required();

  auto* patci = app.add_subcommand("patci", "Patent complexity index from a patent file");
  patci->add_option("--patents", cfg.patents_path, "Patent CSV (year,patent_id,class,country,share)")
      ->required();
  patci->add_option("--year", cfg.year, "Year to compute")->required();
  patci->add_option("--counting", cfg.counting, "Patent counting: fractional | integer")
      ->check(CLI::IsMember({"fractional", "integer"}));
  patci->add_option("--threshold", cfg.threshold, "Comparative advantage threshold");
  add_rule(patci);
  patci->add_option("--out", cfg.out_path, "Output CSV path")->required();

  auto* thci = app.add_subcommand("thci", "Triple-helix complexity index");
  thci->add_option("--trade", cfg.trade_path, "Trade CSV")->required();
  thci->add_option("--patents", cfg.patents_path, "Patent CSV")->required();
  thci->add_option("--concordance", cfg.concordance_paths,
                   "Concordance CSVs (source_code,target_code), chained in order from "
                   "technology classes to product codes")
      ->required();
  thci->add_option("--year", cfg.year, "Year to compute")->required();
  thci->add_option("--digits", cfg.digits, "Product code digit level (2 or 3)")
      ->check(CLI::IsMember({2, 3}));
  thci->add_option("--counting", cfg.counting, "Patent counting: fractional | integer")
      ->check(CLI::IsMember({"fractional", "integer"}));
  thci->add_option("--threshold", cfg.threshold, "Comparative advantage threshold");
  add_rule(thci);
  thci->add_option("--out", cfg.out_path, "Output CSV path")->required();

  auto* correlate = app.add_subcommand("correlate", "Correlation reports between index panels");
  correlate->add_option("--panel", cfg.panel_paths, "Panel CSVs (entity,<year>,...)")->required();
  correlate->add_option("--method", cfg.method, "pearson | spearman")
      ->check(CLI::IsMember({"pearson", "spearman"}));
  auto* xs = correlate->add_option("--cross-section", cfg.cross_section_year,
                                   "Pairwise coefficients for one year");
  correlate->add_flag("--lagged", cfg.lagged, "Lagged correlation for one entity");
  correlate->add_flag("--series", cfg.series, "Yearly coefficient series");
  correlate->add_option("--entity", cfg.entity, "Entity for --lagged");
  correlate->add_option("--lag", cfg.lag,
                        "Years the second panel is shifted forward (first panel leads)");
  correlate->add_option("--out", cfg.out_path, "Output CSV path")->required();

  auto* reproduce = app.add_subcommand("reproduce", "Check bundled reference values");
  reproduce->add_option("--fixtures", cfg.fixtures_dir, "Reference fixture directory");
  reproduce->add_option("--out", cfg.out_path, "Also write the report to this path");

  CLI11_PARSE(app, argc, argv);
  cfg.cross_section = xs->count() > 0;

  try {
    if (eci->parsed()) return cmd_eci(cfg);
    if (patci->parsed()) return cmd_patci(cfg);
    if (thci->parsed()) return cmd_thci(cfg);
    if (correlate->parsed()) return cmd_correlate(cfg);
    if (reproduce->parsed()) return cmd_reproduce(cfg);
  } catch (const DegeneracyError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitDegenerate;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitDataError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitDataError;
  }
  return kExitDataError;
}
