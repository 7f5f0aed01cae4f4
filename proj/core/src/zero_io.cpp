#include <array>
#include <charconv>
#include <cinttypes>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string_view>

#include "zpd/error.hpp"
#include "zpd/zeta.hpp"

namespace zpd {

namespace {

constexpr std::string_view kCacheHeader = "ZPD-CACHE v1";

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r' || s.front() == '\n')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r' || s.back() == '\n')) s.remove_suffix(1);
  return s;
}

bool parse_double(std::string_view s, double& out) {
  s = trim(s);
  if (s.empty()) return false;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), out);
  return res.ec == std::errc() && res.ptr == s.data() + s.size();
}

std::string read_file(const std::filesystem::path& path) {
  if (path.empty() || !std::filesystem::exists(path))
    throw Error(ErrorKind::not_found, "file not found: '" + path.string() + "'");
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::not_found, "cannot open '" + path.string() + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::vector<std::string_view> split_lines(std::string_view text) {
  std::vector<std::string_view> lines;
  std::size_t pos = 0;
  while (pos < text.size()) {
    const std::size_t nl = text.find('\n', pos);
    if (nl == std::string_view::npos) {
      lines.push_back(text.substr(pos));
      break;
    }
    lines.push_back(text.substr(pos, nl - pos));
    pos = nl + 1;
  }
  return lines;
}

}  // namespace

std::uint64_t fnv1a64(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

ZeroTable parse_zero_table(const std::string& text) {
  ZeroTable table;
  table.source = TableSource::ingested;
  const auto lines = split_lines(text);
  for (std::size_t i = 0; i < lines.size(); ++i) {
    const auto line = trim(lines[i]);
    if (line.empty() || line.front() == '#') continue;
    double g;
    if (!parse_double(line, g) || !(g > 0.0)) {
      throw Error(ErrorKind::input, "zero table: malformed ordinate at line " + std::to_string(i + 1));
    }
    if (!table.entries.empty() && !(g > table.entries.back().gamma)) {
      throw Error(ErrorKind::input, "zero table: ordinates not ascending at line " + std::to_string(i + 1));
    }
    ZeroEntry e;
    e.index = table.entries.size() + 1;
    e.gamma = g;
    table.entries.push_back(e);
  }
  table.height_max = table.entries.empty() ? 0.0 : table.entries.back().gamma;
  assign_phases(table);
  return table;
}

ZeroTable ingest_zero_table(const std::filesystem::path& path) { return parse_zero_table(read_file(path)); }

std::string cache_serialize(const ZeroTable& table) {
  std::string out;
  out.reserve(64 * (table.entries.size() + 4));
  char buf[256];
  out += kCacheHeader;
  out += '\n';
  std::snprintf(buf, sizeof buf, "# height_max=%.17g source=%s entries=%zu\n", table.height_max,
                table.source == TableSource::computed ? "computed" : "ingested", table.entries.size());
  out += buf;
  for (const auto& e : table.entries) {
    std::snprintf(buf, sizeof buf, "%zu,%.19e,%.17g,%.17g,%.17g\n", e.index, e.gamma, e.s_at_gamma,
                  e.phase.real(), e.phase.imag());
    out += buf;
  }
  std::snprintf(buf, sizeof buf, "CHECKSUM %016" PRIx64 "\n", fnv1a64(out));
  out += buf;
  return out;
}

ZeroTable cache_deserialize(const std::string& bytes) {
  const std::string_view all(bytes);
  const std::size_t mark = all.rfind("CHECKSUM ");
  if (mark == std::string_view::npos || (mark > 0 && all[mark - 1] != '\n'))
    throw Error(ErrorKind::integrity, "zero cache: missing checksum line (truncated file?)");
  const std::string_view body = all.substr(0, mark);
  const auto hex = trim(all.substr(mark + 9));
  std::uint64_t stored = 0;
  const auto res = std::from_chars(hex.data(), hex.data() + hex.size(), stored, 16);
  if (res.ec != std::errc() || hex.size() != 16) throw Error(ErrorKind::integrity, "zero cache: malformed checksum");
  if (stored != fnv1a64(body)) throw Error(ErrorKind::integrity, "zero cache: checksum mismatch");

  const auto lines = split_lines(body);
  if (lines.empty() || trim(lines[0]) != kCacheHeader) {
    throw Error(ErrorKind::integrity, "zero cache: unsupported version header '" +
                                          std::string(lines.empty() ? "" : trim(lines[0])) + "'");
  }
  ZeroTable table;
  double below = 0.0;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const auto line = trim(lines[i]);
    if (line.empty()) continue;
    if (line.front() == '#') {
      const auto meta = std::string(line);
      char source[32] = {};
      double h = 0.0;
      if (std::sscanf(meta.c_str(), "# height_max=%lf source=%31s", &h, source) == 2) {
        table.height_max = h;
        table.source = std::string_view(source) == "ingested" ? TableSource::ingested : TableSource::computed;
      }
      continue;
    }
    std::array<std::string_view, 5> fields;
    std::string_view rest = line;
    for (std::size_t f = 0; f < 5; ++f) {
      const std::size_t comma = rest.find(',');
      if ((f < 4) == (comma == std::string_view::npos))
        throw Error(ErrorKind::input, "zero cache: malformed row at line " + std::to_string(i + 1));
      fields[f] = rest.substr(0, comma);
      rest = comma == std::string_view::npos ? std::string_view{} : rest.substr(comma + 1);
    }
    ZeroEntry e;
    double idx, re, im;
    if (!parse_double(fields[0], idx) || !parse_double(fields[1], e.gamma) || !parse_double(fields[2], e.s_at_gamma) ||
        !parse_double(fields[3], re) || !parse_double(fields[4], im)) {
      throw Error(ErrorKind::input, "zero cache: malformed number at line " + std::to_string(i + 1));
    }
    e.index = static_cast<std::size_t>(idx);
    e.phase = {re, im};
    // s_at_gamma = below + m/2 - 1 - theta/pi recovers the multiplicity.
    const double theta_over_pi = static_cast<double>(riemann_siegel_theta_ld(e.gamma) / kPiL);
    const long twice_m = std::lround(2.0 * (e.s_at_gamma + 1.0 + theta_over_pi - below));
    e.multiplicity = static_cast<int>(std::max(1L, twice_m));
    below += e.multiplicity;
    table.entries.push_back(e);
  }
  return table;
}

void cache_store(const std::filesystem::path& path, const ZeroTable& table) {
  const std::string bytes = cache_serialize(table);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorKind::input, "cannot write cache '" + path.string() + "'");
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
}

ZeroTable cache_load(const std::filesystem::path& path) { return cache_deserialize(read_file(path)); }

ZeroTable load_zero_table(const std::filesystem::path& path) {
  const std::string bytes = read_file(path);
  if (bytes.rfind(kCacheHeader, 0) == 0 || bytes.rfind("ZPD-CACHE", 0) == 0) return cache_deserialize(bytes);
  return parse_zero_table(bytes);
}

}  // namespace zpd
