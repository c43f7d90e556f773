#include <algorithm>
#include <filesystem>
#include <iostream>
#include <map>
#include <memory>
#include <sstream>

#include "common.hpp"
#include "poloc/sim/stats.hpp"

namespace poloc::cli {

namespace {

struct ReportOptions {
  std::string in;
  std::string out;
};

struct Csv {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  std::size_t column(const std::string& name) const {
    auto it = std::find(header.begin(), header.end(), name);
    if (it == header.end()) throw UsageError("CSV has no column '" + name + "'");
    return static_cast<std::size_t>(it - header.begin());
  }
};

Csv parse_csv(const std::string& text) {
  Csv csv;
  std::stringstream ss(text);
  bool first = true;
  for (std::string line; std::getline(ss, line);) {
    if (line.empty()) continue;
    std::vector<std::string> cells;
    std::stringstream ls(line);
    for (std::string c; std::getline(ls, c, ',');) cells.push_back(c);
    if (first) {
      csv.header = cells;
      first = false;
    } else {
      if (cells.size() != csv.header.size()) throw UsageError("ragged CSV row: " + line);
      csv.rows.push_back(cells);
    }
  }
  return csv;
}

std::string summarize_sweep(const std::string& name, const Csv& csv) {
  const auto c_axis = csv.column("axis_value"), c_scheme = csv.column("scheme");
  const auto c_fpr = csv.column("fpr"), c_fnr = csv.column("fnr"), c_dr = csv.column("dr");
  std::map<std::string, std::vector<const std::vector<std::string>*>> by_scheme;
  for (const auto& r : csv.rows) by_scheme[r[c_scheme]].push_back(&r);

  std::ostringstream out;
  out << "## " << name << "\n\n";
  out << "| scheme | rows | mean FPR | mean FNR | mean DR | max DR at | rho(axis, FPR) | rho(axis, FNR) |\n";
  out << "|---|---|---|---|---|---|---|---|\n";
  for (const auto& [scheme, rows] : by_scheme) {
    std::vector<double> axis, fpr, fnr, dr;
    for (const auto* r : rows) {
      axis.push_back(std::stod((*r)[c_axis]));
      fpr.push_back(std::stod((*r)[c_fpr]));
      fnr.push_back(std::stod((*r)[c_fnr]));
      dr.push_back(std::stod((*r)[c_dr]));
    }
    auto best = std::max_element(dr.begin(), dr.end()) - dr.begin();
    char buf[256];
    std::snprintf(buf, sizeof buf, "| %s | %zu | %.4f | %.4f | %.4f | %g | %.3f | %.3f |\n", scheme.c_str(),
                  rows.size(), sim::summarize(fpr).mean, sim::summarize(fnr).mean, sim::summarize(dr).mean,
                  axis[static_cast<std::size_t>(best)], sim::spearman(axis, fpr), sim::spearman(axis, fnr));
    out << buf;
  }
  out << "\n";
  return out.str();
}

void run_report(const ReportOptions& o) {
  const std::filesystem::path dir(o.in);
  if (!std::filesystem::is_directory(dir)) throw UsageError(o.in + " is not a directory");
  std::vector<std::filesystem::path> files;
  for (const auto& e : std::filesystem::directory_iterator(dir)) {
    const auto name = e.path().filename().string();
    if (name.rfind("sweep_", 0) == 0 && name.size() > 4 && name.substr(name.size() - 4) == ".csv" &&
        name.find("_timing") == std::string::npos)
      files.push_back(e.path());
  }
  std::sort(files.begin(), files.end());
  std::string text = "# Sweep report\n\n";
  if (files.empty()) text += "No sweep CSVs found.\n";
  for (const auto& f : files) text += summarize_sweep(f.stem().string(), parse_csv(read_text_file(f)));
  if (o.out.empty()) {
    std::cout << text;
  } else {
    write_output(o.out, text);
    std::cout << "wrote " << o.out << "\n";
  }
}

}  // namespace

void add_report(CLI::App& app) {
  auto o = std::make_shared<ReportOptions>();
  auto* cmd = app.add_subcommand("report", "Summarize the sweep CSVs in a results directory");
  cmd->add_option("-i,--in", o->in, "Directory written by sweep")->required();
  cmd->add_option("-o,--out", o->out, "Markdown file to write (stdout if omitted)");
  cmd->callback([o] { run_report(*o); });
}

}  // namespace poloc::cli
