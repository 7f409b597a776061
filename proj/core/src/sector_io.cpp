#include "bsl/sector_io.hpp"

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <map>
#include <sstream>

#include "bsl/numeric.hpp"

namespace bsl {

namespace {

std::string format_quantum_number(std::int64_t twice) {
  if (twice % 2 == 0) return std::to_string(twice / 2);
  return std::to_string(twice) + "/2";
}

std::int64_t parse_quantum_number(const std::string& token, std::size_t line) {
  const auto slash = token.find('/');
  std::string head = slash == std::string::npos ? token : token.substr(0, slash);
  if (slash != std::string::npos && token.substr(slash) != "/2") {
    throw ParseError("quantum number '" + token + "' is not an integer or half", line);
  }
  char* end = nullptr;
  const long long v = std::strtoll(head.c_str(), &end, 10);
  if (head.empty() || end != head.c_str() + head.size()) {
    throw ParseError("malformed quantum number '" + token + "'", line);
  }
  return slash == std::string::npos ? 2 * v : v;
}

std::int64_t parse_int(const std::string& token, std::size_t line) {
  char* end = nullptr;
  const long long v = std::strtoll(token.c_str(), &end, 10);
  if (token.empty() || end != token.c_str() + token.size()) {
    throw ParseError("malformed integer '" + token + "'", line);
  }
  return v;
}

}  // namespace

void write_sector(const SpectrumSector& sector, std::ostream& out) {
  out << "# bsl spectrum sector\n";
  out << "# format_version=" << kSectorFormatVersion << "\n";
  out << "# n_particles=" << sector.params.n_particles() << "\n";
  out << "# ring_length=" << format_full(sector.params.ring_length()) << "\n";
  out << "# coupling=" << format_full(sector.params.coupling()) << "\n";
  out << "# n_over_c=" << format_full(sector.params.density_ratio()) << "\n";
  out << "# momentum=";
  if (sector.momentum) {
    out << *sector.momentum;
  } else {
    out << "all";
  }
  out << "\n";
  // Cutoff convention: admissible quantum numbers satisfy |m| < M strictly.
  out << "# cutoff=" << sector.cutoff << "\n";
  out << "# tolerance=" << format_full(sector.tolerance) << "\n";
  out << "# level_count=" << sector.levels.size() << "\n";
  if (sector.energy_ceiling) {
    out << "# energy_ceiling=" << format_full(*sector.energy_ceiling) << "\n";
  }
  if (sector.e_max_certified) {
    out << "# e_max_certified=" << format_full(*sector.e_max_certified) << "\n";
  }
  for (const auto& level : sector.levels) {
    const auto& m = level.quantum_numbers;
    for (std::size_t i = 0; i < m.size(); ++i) {
      if (i) out << ' ';
      out << format_quantum_number(m.twice(i));
    }
    for (double l : level.rapidities) out << ' ' << format_full(l);
    out << ' ' << format_full(level.energy);
    out << ' ' << level.momentum();
    out << ' ' << format_full(level.residual_norm) << "\n";
  }
  if (!out) throw IoError("write_sector: stream failure");
}

void write_sector(const SpectrumSector& sector, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw IoError("write_sector: cannot open '" + path + "'");
  write_sector(sector, out);
  out.flush();
  if (!out) throw IoError("write_sector: failed writing '" + path + "'");
}

SpectrumSector read_sector(std::istream& in) {
  std::map<std::string, std::string> header;
  std::string line;
  std::size_t line_no = 0;
  std::vector<std::pair<std::size_t, std::string>> records;

  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    if (line[0] == '#') {
      const auto eq = line.find('=');
      if (eq == std::string::npos) continue;  // banner comment
      std::string key = line.substr(1, eq - 1);
      while (!key.empty() && key.front() == ' ') key.erase(key.begin());
      header[key] = line.substr(eq + 1);
    } else {
      records.emplace_back(line_no, line);
    }
  }

  const auto require = [&](const char* key) -> const std::string& {
    const auto it = header.find(key);
    if (it == header.end()) {
      throw ParseError(std::string("missing header key '") + key + "'");
    }
    return it->second;
  };

  if (parse_int(require("format_version"), 0) != kSectorFormatVersion) {
    throw ParseError("unsupported format_version");
  }
  const auto n = static_cast<int>(parse_int(require("n_particles"), 0));
  const double ring_length = parse_full(require("ring_length"));
  const double coupling = parse_full(require("coupling"));
  const auto cutoff = parse_int(require("cutoff"), 0);
  const double tolerance = parse_full(require("tolerance"));
  const auto level_count = static_cast<std::size_t>(parse_int(require("level_count"), 0));
  const std::string& momentum_text = require("momentum");

  SpectrumSector sector{ModelParams(n, coupling, ring_length), {}, cutoff,
                        tolerance, {}, {}, {}};
  if (momentum_text != "all") sector.momentum = parse_int(momentum_text, 0);
  if (header.count("e_max_certified")) {
    sector.e_max_certified = parse_full(header["e_max_certified"]);
  }
  if (header.count("energy_ceiling")) {
    sector.energy_ceiling = parse_full(header["energy_ceiling"]);
  }

  const auto parse_real = [](const std::string& token, std::size_t lno) {
    try {
      return parse_full(token);
    } catch (const ParseError& err) {
      throw ParseError(err.what(), lno);
    }
  };

  const std::size_t fields_expected = 2 * static_cast<std::size_t>(n) + 3;
  sector.levels.reserve(records.size());
  for (const auto& [lno, text] : records) {
    std::istringstream is(text);
    std::vector<std::string> tokens;
    for (std::string tok; is >> tok;) tokens.push_back(tok);
    if (tokens.size() != fields_expected) {
      throw ParseError("record has " + std::to_string(tokens.size()) + " fields, expected " +
                           std::to_string(fields_expected),
                       lno);
    }
    std::vector<std::int64_t> twice(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
      twice[static_cast<std::size_t>(i)] =
          parse_quantum_number(tokens[static_cast<std::size_t>(i)], lno);
    }
    SectorLevel level{QuantumNumbers(std::move(twice), cutoff), {}, 0.0, 0.0};
    level.rapidities.resize(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
      level.rapidities[static_cast<std::size_t>(i)] =
          parse_real(tokens[static_cast<std::size_t>(n + i)], lno);
    }
    level.energy = parse_real(tokens[static_cast<std::size_t>(2 * n)], lno);
    const std::int64_t momentum = parse_int(tokens[static_cast<std::size_t>(2 * n) + 1], lno);
    level.residual_norm = parse_real(tokens[static_cast<std::size_t>(2 * n) + 2], lno);

    if (momentum != level.quantum_numbers.momentum_hint()) {
      throw IntegrityError("record momentum does not match its quantum numbers (line " +
                           std::to_string(lno) + ")");
    }
    if (sector.momentum && momentum != *sector.momentum) {
      throw IntegrityError("record momentum " + std::to_string(momentum) +
                           " does not match sector momentum (line " + std::to_string(lno) +
                           ")");
    }
    for (std::size_t i = 1; i < level.rapidities.size(); ++i) {
      if (!(level.rapidities[i] > level.rapidities[i - 1])) {
        throw IntegrityError("rapidities not strictly increasing (line " +
                             std::to_string(lno) + ")");
      }
    }
    CompensatedSum lambda_sum;
    for (double l : level.rapidities) lambda_sum.add(l);
    if (std::abs(lambda_sum.result() - static_cast<double>(momentum)) > 10.0 * tolerance) {
      throw IntegrityError("sum of rapidities strays from the exact momentum (line " +
                           std::to_string(lno) + ")");
    }
    sector.levels.push_back(std::move(level));
  }

  if (sector.levels.size() != level_count) {
    throw ParseError("level_count=" + std::to_string(level_count) + " but " +
                     std::to_string(sector.levels.size()) +
                     " records present; file truncated after line " +
                     std::to_string(records.empty() ? line_no : records.back().first));
  }
  for (std::size_t i = 1; i < sector.levels.size(); ++i) {
    if (sector.levels[i].energy < sector.levels[i - 1].energy) {
      throw IntegrityError("records not sorted by energy");
    }
  }
  return sector;
}

SpectrumSector read_sector(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("read_sector: cannot open '" + path + "'");
  return read_sector(in);
}

}  // namespace bsl
