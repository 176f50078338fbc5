// SPDX-License-Identifier: Apache-2.0
#include "aeronet/csv.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace aeronet::io {

std::string fmt_fixed(double v, int decimals) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  if (std::isnan(v)) return "nan";
  if (v == 0.0) v = 0.0;  // normalize -0
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*f", decimals, v);
  return buf;
}

std::string fmt_int(long long v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%lld", v);
  return buf;
}

CsvWriter::CsvWriter(const std::filesystem::path& path, std::uint64_t seed,
                     std::string_view header) {
  out_.open(path);
  if (!out_) throw std::runtime_error("cannot open output file: " + path.string());
  out_ << "# seed=" << seed << "\n" << header << "\n";
}

void CsvWriter::line(std::string_view row) { out_ << row << "\n"; }

}  // namespace aeronet::io
