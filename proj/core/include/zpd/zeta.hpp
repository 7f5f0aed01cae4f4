#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <string_view>
#include <string>
#include <vector>

#include "zpd/numeric.hpp"

namespace zpd {

// ---------------------------------------------------------------------------
// Phase function and zeta evaluation
// ---------------------------------------------------------------------------

/// Riemann-Siegel theta, theta(t) = arg Gamma(1/4 + it/2) - (t/2) log pi,
/// on the continuous branch with theta(0) = 0. Domain error for t <= 0.
double riemann_siegel_theta(double t);

/// Same function carried in long double; used wherever theta enters a phase.
long double riemann_siegel_theta_ld(long double t);

/// theta'(t) = (1/2) Re psi(1/4 + it/2) - (1/2) log pi.
double riemann_siegel_theta_prime(double t);

/// Gram point g_n: the solution of theta(g) = n pi with g > 2 pi (n >= -1).
double gram_point(long n);

/// zeta(s) by Euler-Maclaurin summation. Intended for 0 < Re s <= 4 and
/// |Im s| up to about 1e5; the truncation is chosen for ~1e-13 relative error.
cplx zeta_euler_maclaurin(cplx s);

/// Height below which hardy_z uses Euler-Maclaurin instead of Riemann-Siegel.
inline constexpr double kRiemannSiegelCrossover = 1000.0;

/// Default ceiling above which hardy_z results are flagged as degraded.
inline constexpr double kDefaultHeightCeiling = 1e5;

/// Hardy Z(t) = e^{i theta(t)} zeta(1/2 + it), real and even in t. Uses
/// Euler-Maclaurin below kRiemannSiegelCrossover and the Riemann-Siegel main
/// sum with corrections C0..C4 above. Domain error for |t| < 1.
double hardy_z(double t);

struct HardyZValue {
  double value;
  bool degraded;  // t above the configured ceiling; accuracy not guaranteed
};

HardyZValue hardy_z_checked(double t, double ceiling = kDefaultHeightCeiling);

/// Riemann-Siegel evaluation alone (no crossover), for t >= 2 pi.
double hardy_z_riemann_siegel(double t);

/// The Riemann-Siegel correction coefficient C_k(p), k in [0, 4], p in [0, 1].
double riemann_siegel_coefficient(int k, double p);

/// S(T) = arg zeta(1/2 + iT) / pi, by continuous variation of the argument
/// along the segment from 2 + iT to 1/2 + iT. Independent of any zero table.
/// T must not be an ordinate (the argument is undefined there).
double s_by_argument(double T);

// ---------------------------------------------------------------------------
// Zero tables
// ---------------------------------------------------------------------------

struct ZeroEntry {
  std::size_t index = 0;  // 1-based rank by ordinate
  double gamma = 0.0;
  double s_at_gamma = 0.0;  // S(gamma) = (S(gamma+) + S(gamma-)) / 2
  cplx phase{1.0, 0.0};     // Z(rho), the common one-sided limit of conj e(S(T))
  int multiplicity = 1;

  friend bool operator==(const ZeroEntry&, const ZeroEntry&) = default;
};

enum class TableSource { computed, ingested };

struct ZeroTable {
  std::vector<ZeroEntry> entries;
  double height_max = 0.0;  // every zero with 0 < gamma <= height_max is present
  TableSource source = TableSource::computed;

  friend bool operator==(const ZeroTable&, const ZeroTable&) = default;
};

struct FindZerosOptions {
  double height_max = 100.0;
  double ceiling = kDefaultHeightCeiling;
  unsigned workers = 1;
  double refine_tolerance = 1e-10;
  /// Extra independent-count certificates every this many Gram intervals.
  long certificate_stride = 2000;
};

/// Diagnostics gathered while building a table.
struct FindZerosReport {
  long gram_intervals = 0;
  long bad_gram_points = 0;
  long recounts = 0;  // local recounts triggered by consecutive Gram failures
  std::vector<std::pair<double, long>> certificates;  // (T, N(T) independent)
};

/// All zeros with 0 < gamma <= height_max, refined to refine_tolerance and
/// certified against the independent count 1 + theta(T)/pi + S(T).
ZeroTable find_zeros(const FindZerosOptions& options, FindZerosReport* report = nullptr);
ZeroTable find_zeros(double height_max);

/// N(T) with the half-weight convention at ordinates.
double count_N(double T, const ZeroTable& table);

/// S(T) = N(T) - 1 - theta(T)/pi.
double s_of_T(double T, const ZeroTable& table);

/// The unit phase Z(rho) = lim_{T -> gamma} conj(e(S(T))).
cplx zeta_phase(const ZeroEntry& entry, const ZeroTable& table);

/// Fills s_at_gamma and phase for every entry from theta and the ranks.
void assign_phases(ZeroTable& table);

/// Reads the text zero-table format: one ascending ordinate per line,
/// '#' comment lines and blank lines ignored.
ZeroTable ingest_zero_table(const std::filesystem::path& path);
ZeroTable parse_zero_table(const std::string& text);

/// Cache file: "ZPD-CACHE v1" header, metadata line, CSV rows
/// index,gamma,s_at_gamma,phase_re,phase_im and a trailing
/// "CHECKSUM <fnv1a-64 hex>" over all preceding bytes.
void cache_store(const std::filesystem::path& path, const ZeroTable& table);
ZeroTable cache_load(const std::filesystem::path& path);
std::string cache_serialize(const ZeroTable& table);
ZeroTable cache_deserialize(const std::string& bytes);

std::uint64_t fnv1a64(std::string_view bytes);

/// Loads either format, sniffing the cache header.
ZeroTable load_zero_table(const std::filesystem::path& path);

}  // namespace zpd
