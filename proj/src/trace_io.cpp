// SPDX-License-Identifier: Apache-2.0

#include "doorcsi/trace_io.hpp"

#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <string>

#include <json.hpp>

namespace doorcsi {

using nlohmann::json;

std::string format_double(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::general, 17);
  return std::string(buf, res.ptr);
}

namespace {

json point(Vec2 p) { return json::array({p.x, p.y}); }

Vec2 parse_point(const json& j, std::size_t line, const char* field) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number()) {
    throw ParseError(line, std::string("field '") + field + "' must be a [x, y] pair");
  }
  return {j[0].get<double>(), j[1].get<double>()};
}

const json& require(const json& obj, const char* field, std::size_t line) {
  const auto it = obj.find(field);
  if (it == obj.end()) throw ParseError(line, std::string("missing header field '") + field + "'");
  return *it;
}

double require_number(const json& obj, const char* field, std::size_t line) {
  const json& v = require(obj, field, line);
  if (!v.is_number()) throw ParseError(line, std::string("field '") + field + "' must be a number");
  return v.get<double>();
}

}  // namespace

void write_trace(std::ostream& os, const CsiTrace& trace) {
  trace.validate();
  json header;
  header["format"] = kTraceFormat;
  header["sample_rate_hz"] = trace.sample_rate_hz;
  header["carrier_hz"] = trace.geometry.carrier_hz;
  header["num_antennas"] = trace.geometry.num_antennas();
  header["tx_pos"] = point(trace.geometry.tx_pos);
  header["rx_pos"] = point(trace.geometry.rx_pos);
  json offsets = json::array();
  for (const auto& o : trace.geometry.rx_antenna_offsets) offsets.push_back(point(o));
  header["rx_antenna_offsets"] = offsets;
  header["meta"] = trace.meta;
  os << header.dump() << '\n';

  std::string line;
  for (const auto& f : trace.frames) {
    line.clear();
    line += '[';
    line += format_double(f.t);
    line += ',';
    line += format_double(f.agc);
    for (const auto& s : f.samples) {
      line += ',';
      line += format_double(s.real());
      line += ',';
      line += format_double(s.imag());
    }
    line += "]\n";
    os << line;
  }
}

void write_trace(const std::filesystem::path& path, const CsiTrace& trace) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw InvalidArgument("cannot open '" + path.string() + "' for writing");
  write_trace(os, trace);
  if (!os) throw InvalidArgument("failed writing '" + path.string() + "'");
}

CsiTrace read_trace(std::istream& is) {
  std::string line;
  std::size_t line_no = 1;
  if (!std::getline(is, line)) throw ParseError(1, "empty trace file");

  json header;
  try {
    header = json::parse(line);
  } catch (const json::parse_error& e) {
    throw ParseError(line_no, std::string("malformed header: ") + e.what());
  }
  if (!header.is_object()) throw ParseError(line_no, "header must be a JSON object");
  const json& fmt = require(header, "format", line_no);
  if (!fmt.is_string() || fmt.get<std::string>() != kTraceFormat) {
    throw ParseError(line_no, std::string("unsupported format, expected '") + kTraceFormat + "'");
  }

  CsiTrace trace;
  trace.sample_rate_hz = require_number(header, "sample_rate_hz", line_no);
  const json& n_ant_j = require(header, "num_antennas", line_no);
  if (!n_ant_j.is_number_unsigned()) throw ParseError(line_no, "num_antennas must be a count");
  const auto n_ant = n_ant_j.get<std::size_t>();

  Geometry& g = trace.geometry;
  g.carrier_hz = require_number(header, "carrier_hz", line_no);
  g.tx_pos = parse_point(require(header, "tx_pos", line_no), line_no, "tx_pos");
  g.rx_pos = parse_point(require(header, "rx_pos", line_no), line_no, "rx_pos");
  const json& offs = require(header, "rx_antenna_offsets", line_no);
  if (!offs.is_array()) throw ParseError(line_no, "rx_antenna_offsets must be an array");
  for (const auto& o : offs) g.rx_antenna_offsets.push_back(parse_point(o, line_no, "rx_antenna_offsets"));
  if (g.rx_antenna_offsets.size() != n_ant) {
    throw ParseError(line_no, "num_antennas disagrees with rx_antenna_offsets");
  }
  if (const auto it = header.find("meta"); it != header.end()) {
    if (!it->is_object()) throw ParseError(line_no, "meta must be an object");
    for (const auto& [k, v] : it->items()) {
      if (!v.is_string()) throw ParseError(line_no, "meta values must be strings");
      trace.meta[k] = v.get<std::string>();
    }
  }
  try {
    g.wavelength_m = wavelength(g.carrier_hz);
    g.validate();
    if (!(trace.sample_rate_hz > 0.0)) throw InvalidArgument("sample_rate_hz must be positive");
  } catch (const InvalidArgument& e) {
    throw ParseError(line_no, e.what());
  }

  const std::size_t width = 2 + 2 * n_ant;
  while (std::getline(is, line)) {
    ++line_no;
    if (line.empty()) continue;
    json rec;
    try {
      rec = json::parse(line);
    } catch (const json::parse_error& e) {
      throw ParseError(line_no, std::string("malformed frame record: ") + e.what());
    }
    if (!rec.is_array()) throw ParseError(line_no, "frame record must be an array");
    if (rec.size() != width) {
      throw ParseError(line_no, "frame carries " + std::to_string((rec.size() - std::min<std::size_t>(rec.size(), 2)) / 2) +
                                    " antenna samples (" + std::to_string(rec.size()) +
                                    " values), header declares " + std::to_string(n_ant) +
                                    " antennas");
    }
    for (const auto& v : rec) {
      if (!v.is_number()) throw ParseError(line_no, "frame values must be numbers");
    }
    CsiFrame f;
    f.t = rec[0].get<double>();
    f.agc = rec[1].get<double>();
    f.samples.reserve(n_ant);
    for (std::size_t a = 0; a < n_ant; ++a) {
      f.samples.emplace_back(rec[2 + 2 * a].get<double>(), rec[3 + 2 * a].get<double>());
    }
    if (!trace.frames.empty() && !(f.t > trace.frames.back().t)) {
      throw ParseError(line_no, "timestamps must be strictly increasing");
    }
    trace.frames.push_back(std::move(f));
  }
  return trace;
}

CsiTrace read_trace(const std::filesystem::path& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw InvalidArgument("cannot open '" + path.string() + "'");
  return read_trace(is);
}

}  // namespace doorcsi
