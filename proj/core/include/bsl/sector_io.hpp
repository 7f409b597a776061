#pragma once

#include <iosfwd>
#include <string>

#include "bsl/sector.hpp"

namespace bsl {

inline constexpr int kSectorFormatVersion = 1;

/// Line-oriented text spectrum file. '#'-prefixed key=value header, then one
/// record per level:
///   m_1 .. m_N  lambda_1 .. lambda_N  E  P  residual
/// Quantum numbers are exact integers (odd N) or exact halves like "-3/2"
/// (even N); reals carry 17 significant digits, so a write/read round trip
/// reproduces every double bit-exactly. Records appear in the sector's
/// canonical energy-sorted order.
void write_sector(const SpectrumSector& sector, std::ostream& out);
void write_sector(const SpectrumSector& sector, const std::string& path);

/// Parses and validates a spectrum file: header/record consistency, per-record
/// momentum, and sum(lambda) within 10*tolerance of the exact momentum.
/// Throws ParseError (malformed) or IntegrityError (well-formed but invalid).
SpectrumSector read_sector(std::istream& in);
SpectrumSector read_sector(const std::string& path);

}  // namespace bsl
