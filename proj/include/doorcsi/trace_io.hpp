// SPDX-License-Identifier: Apache-2.0
//
// Line-oriented trace files.
//
//   line 1   {"format":"wicross-trace/1","sample_rate_hz":..,"carrier_hz":..,
//             "num_antennas":N,"tx_pos":[x,y],"rx_pos":[x,y],
//             "rx_antenna_offsets":[[x,y],...],"meta":{"key":"value",...}}
//   line k+1 [t,agc,re_1,im_1,...,re_N,im_N]      (frame k)
//
// Frame values are written with 17 significant digits, so a read after a
// write reproduces every double exactly.

#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <stdexcept>
#include <string>

#include "doorcsi/core.hpp"

namespace doorcsi {

inline constexpr const char* kTraceFormat = "wicross-trace/1";

class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

/// Shortest-safe decimal for a double: 17 significant digits, "C" locale.
std::string format_double(double v);

void write_trace(std::ostream& os, const CsiTrace& trace);
void write_trace(const std::filesystem::path& path, const CsiTrace& trace);

CsiTrace read_trace(std::istream& is);
CsiTrace read_trace(const std::filesystem::path& path);

}  // namespace doorcsi
