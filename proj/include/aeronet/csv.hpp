// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <string>
#include <string_view>

namespace aeronet::io {

// Fixed-precision number formatting so output files are byte-stable.
std::string fmt_fixed(double v, int decimals);
std::string fmt_int(long long v);

// CSV file with a `# seed=<n>` comment line followed by the header.
class CsvWriter {
 public:
  CsvWriter(const std::filesystem::path& path, std::uint64_t seed, std::string_view header);
  void line(std::string_view row);

 private:
  std::ofstream out_;
};

}  // namespace aeronet::io
