#include "bsl/report_io.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "bsl/numeric.hpp"

namespace bsl {

namespace {

using ordered_json = nlohmann::ordered_json;

void dump_to(const ordered_json& doc, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  out << doc.dump(2) << "\n";
  if (!out) throw IoError("failed writing '" + path + "'");
}

std::string sibling_path(const std::string& json_path, const std::string& suffix) {
  std::filesystem::path p(json_path);
  p.replace_extension();
  return p.string() + suffix;
}

ordered_json curve_json(const Delta3Curve& curve) {
  ordered_json j;
  j["window_lengths"] = curve.window_lengths;
  j["values"] = curve.values;
  j["n_starts"] = curve.n_starts;
  if (curve.fit) {
    j["fit"] = {{"gamma0", curve.fit->slope},
                {"gamma1", curve.fit->intercept},
                {"w_min", curve.fit->w_min},
                {"w_max", curve.fit->w_max}};
  }
  if (curve.exponent) {
    j["exponent"] = {{"alpha", curve.exponent->alpha},
                     {"log_prefactor", curve.exponent->log_prefactor},
                     {"w_min", curve.exponent->w_min},
                     {"w_max", curve.exponent->w_max}};
  }
  return j;
}

}  // namespace

void write_table(const Table& table, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  out << "#";
  for (const auto& name : table.column_names) out << " " << name;
  out << "\n";
  const std::size_t rows = table.columns.empty() ? 0 : table.columns.front().size();
  for (const auto& col : table.columns) {
    if (col.size() != rows) throw ContractViolation("write_table: ragged columns");
  }
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < table.columns.size(); ++c) {
      if (c) out << ' ';
      out << format_full(table.columns[c][r]);
    }
    out << "\n";
  }
  if (!out) throw IoError("failed writing '" + path + "'");
}

Table read_table(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open '" + path + "'");
  Table table;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    if (line[0] == '#') {
      std::istringstream is(line.substr(1));
      for (std::string tok; is >> tok;) table.column_names.push_back(tok);
      continue;
    }
    std::istringstream is(line);
    std::vector<double> row;
    for (std::string tok; is >> tok;) row.push_back(parse_full(tok));
    if (table.columns.empty()) table.columns.resize(row.size());
    if (row.size() != table.columns.size()) {
      throw ParseError("inconsistent column count", line_no);
    }
    for (std::size_t c = 0; c < row.size(); ++c) table.columns[c].push_back(row[c]);
  }
  return table;
}

std::vector<std::string> write_stats_report(const StatsReport& report,
                                            const std::string& json_path) {
  ordered_json j;
  j["report"] = "bsl statistics";
  j["source"] = report.source;
  if (report.seed) j["seed"] = *report.seed;
  if (report.n_particles) j["n_particles"] = *report.n_particles;
  if (report.coupling) j["coupling"] = *report.coupling;
  if (report.ring_length) j["ring_length"] = *report.ring_length;
  if (report.n_over_c) j["n_over_c"] = *report.n_over_c;
  if (report.momentum) j["momentum"] = *report.momentum;
  if (report.cutoff) j["cutoff"] = *report.cutoff;
  if (report.e_max_certified) j["e_max_certified"] = *report.e_max_certified;
  j["uncertified"] = report.uncertified;
  j["window_begin"] = report.window_begin;
  j["window_count"] = report.window_count;
  if (report.dedup_tol) {
    j["dedup_tol"] = *report.dedup_tol;
    j["dedup_removed"] = report.dedup_removed;
  }
  if (report.unfolding) {
    const auto& u = *report.unfolding;
    j["unfolding"] = {
        {"degree", u.degree},
        {"convention", u.convention == UnfoldConvention::direct ? "direct" : "inverse"},
        {"coeffs", u.coeffs},
        {"center", u.center},
        {"halfwidth", u.halfwidth},
        {"mean_spacing", u.mean_spacing},
    };
  }

  std::vector<std::string> written{json_path};

  if (report.lsd) {
    const auto& h = *report.lsd;
    ordered_json jh;
    jh["s_max"] = h.s_max;
    jh["n_bins"] = h.counts.size();
    jh["n_samples"] = h.n_samples;
    jh["overflow_mass"] = h.overflow_mass;
    jh["counts"] = h.counts;
    jh["densities"] = h.densities;
    j["lsd"] = jh;

    Table t;
    t.column_names = {"s", "density", "poisson"};
    t.columns.resize(3);
    for (std::size_t i = 0; i < h.counts.size(); ++i) {
      t.columns[0].push_back(h.bin_center(i));
      t.columns[1].push_back(h.densities[i]);
      t.columns[2].push_back(h.poisson_bin_density(i));
    }
    const std::string path = sibling_path(json_path, ".lsd.dat");
    write_table(t, path);
    written.push_back(path);
  }

  if (report.ratio) {
    const auto& r = *report.ratio;
    j["ratio"] = {
        {"mean_chi", r.mean_chi},
        {"n_values", r.n_values},
        {"zero_spacings", r.zero_spacings},
        {"window_size", r.window_size},
        {"windowed_means", r.windowed_means},
    };
    if (!r.chi.empty()) {
      Table raw;
      raw.column_names = {"n", "chi"};
      raw.columns.resize(2);
      for (std::size_t i = 0; i < r.chi.size(); ++i) {
        raw.columns[0].push_back(static_cast<double>(i));
        raw.columns[1].push_back(r.chi[i]);
      }
      const std::string raw_path = sibling_path(json_path, ".chi.dat");
      write_table(raw, raw_path);
      written.push_back(raw_path);
    }
    Table t;
    t.column_names = {"n_center", "mean_chi"};
    t.columns.resize(2);
    for (std::size_t b = 0; b < r.windowed_means.size(); ++b) {
      t.columns[0].push_back((static_cast<double>(b) + 0.5) *
                             static_cast<double>(r.window_size));
      t.columns[1].push_back(r.windowed_means[b]);
    }
    const std::string path = sibling_path(json_path, ".chi_means.dat");
    write_table(t, path);
    written.push_back(path);
  }

  if (report.delta3) {
    j["delta3"] = curve_json(*report.delta3);
    Table t;
    t.column_names = {"W", "delta3", "poisson"};
    t.columns.resize(3);
    for (std::size_t i = 0; i < report.delta3->window_lengths.size(); ++i) {
      const double w = report.delta3->window_lengths[i];
      t.columns[0].push_back(w);
      t.columns[1].push_back(report.delta3->values[i]);
      t.columns[2].push_back(w / 15.0);
    }
    const std::string path = sibling_path(json_path, ".delta3.dat");
    write_table(t, path);
    written.push_back(path);
  }

  dump_to(j, json_path);
  return written;
}

void write_saturation_report(const SaturationReport& report, const ModelParams& params,
                             std::int64_t momentum, const std::string& path) {
  ordered_json j;
  j["report"] = "bsl saturation";
  j["n_particles"] = params.n_particles();
  j["ring_length"] = params.ring_length();
  j["coupling"] = params.coupling();
  j["n_over_c"] = params.density_ratio();
  j["momentum"] = momentum;
  j["m_small"] = report.m_small;
  j["m_large"] = report.m_large;
  j["e_max"] = report.e_max;
  j["n_levels_small"] = report.n_levels_small;
  j["n_levels_large_below_emax"] = report.n_levels_large_below_emax;
  j["new_levels_found"] = report.new_levels_found;
  j["certified"] = report.certified;
  j["match_tol"] = report.match_tol;
  j["max_paired_mismatch"] = report.max_paired_mismatch;
  auto examples = ordered_json::array();
  for (const auto& m : report.new_level_examples) {
    auto values = ordered_json::array();
    for (std::size_t i = 0; i < m.size(); ++i) values.push_back(m.value(i));
    examples.push_back(values);
  }
  j["new_level_examples"] = examples;
  dump_to(j, path);
}

void write_symmetry_report(std::span<const SymmetryPairResult> pairs,
                           const ModelParams& params, std::size_t n_levels,
                           const std::string& path) {
  ordered_json j;
  j["report"] = "bsl symmetry";
  j["n_particles"] = params.n_particles();
  j["ring_length"] = params.ring_length();
  j["coupling"] = params.coupling();
  j["n_over_c"] = params.density_ratio();
  j["levels_per_pair"] = n_levels;
  auto arr = ordered_json::array();
  bool all_passed = true;
  for (const auto& pair : pairs) {
    ordered_json p;
    p["p_a"] = pair.p_a;
    p["p_b"] = pair.p_b;
    p["cutoff_a"] = pair.cutoff_a;
    p["cutoff_b"] = pair.cutoff_b;
    p["nu"] = pair.report.nu;
    p["levels_compared"] = pair.report.levels_compared;
    p["max_deviation"] = pair.report.max_deviation;
    p["tol"] = pair.report.tol;
    p["passed"] = pair.report.passed;
    if (pair.report.first_failure) p["first_failure"] = *pair.report.first_failure;
    arr.push_back(p);
    all_passed = all_passed && pair.report.passed;
  }
  j["pairs"] = arr;
  j["all_passed"] = all_passed;
  dump_to(j, path);
}

}  // namespace bsl
