#include <algorithm>
#include <cmath>
#include <sstream>

#include "zpd/error.hpp"
#include "zpd/parallel.hpp"
#include "zpd/zeta.hpp"

namespace zpd {

namespace {

// Smallest ordinate of a nontrivial zero exceeds this.
constexpr double kFirstOrdinateFloor = 14.0;

constexpr int kMaxSubdivisionLevel = 10;

double refine_root(double lo, double z_lo, double hi, double z_hi, double tol) {
  // Illinois-modified regula falsi with a bisection fallback; the bracket
  // [lo, hi] always straddles a sign change.
  int side = 0;
  for (int it = 0; it < 200 && hi - lo > tol; ++it) {
    double x = (lo * z_hi - hi * z_lo) / (z_hi - z_lo);
    if (!(x > lo && x < hi) || it % 8 == 7) x = 0.5 * (lo + hi);
    const double zx = hardy_z(x);
    if (zx == 0.0) return x;
    if ((zx > 0) == (z_hi > 0)) {
      hi = x;
      z_hi = zx;
      if (side == 1) z_lo *= 0.5;
      side = 1;
    } else {
      lo = x;
      z_lo = zx;
      if (side == -1) z_hi *= 0.5;
      side = -1;
    }
  }
  return 0.5 * (lo + hi);
}

struct GramSample {
  long n;
  double g;
  double z;
  bool good;
};

// Zeros inside one Gram block [g_first, g_last]; the interior is sampled at
// increasing resolution until `expected` sign changes appear or the level cap
// is reached.
std::vector<double> block_zeros(const std::vector<GramSample>& gram, std::size_t first, std::size_t last,
                                int min_level, int max_level, double tol) {
  const long expected = gram[last].n - gram[first].n;
  std::vector<double> xs, zs;
  for (int level = 0; level <= max_level; ++level) {
    xs.clear();
    zs.clear();
    const int sub = 1 << level;
    for (std::size_t k = first; k < last; ++k) {
      const double a = gram[k].g, b = gram[k + 1].g;
      xs.push_back(a);
      zs.push_back(gram[k].z);
      for (int j = 1; j < sub; ++j) {
        const double x = a + (b - a) * j / sub;
        xs.push_back(x);
        zs.push_back(hardy_z(x));
      }
    }
    xs.push_back(gram[last].g);
    zs.push_back(gram[last].z);
    long changes = 0;
    for (std::size_t i = 0; i + 1 < zs.size(); ++i)
      if ((zs[i] > 0) != (zs[i + 1] > 0)) ++changes;
    if ((changes >= expected && level >= min_level) || level == max_level) break;
  }
  std::vector<double> roots;
  for (std::size_t i = 0; i + 1 < zs.size(); ++i) {
    if ((zs[i] > 0) != (zs[i + 1] > 0)) roots.push_back(refine_root(xs[i], zs[i], xs[i + 1], zs[i + 1], tol));
  }
  return roots;
}

long independent_count(double T) {
  const double raw = 1.0 + riemann_siegel_theta(T) / kPi + s_by_argument(T);
  const double rounded = std::nearbyint(raw);
  if (std::abs(raw - rounded) > 0.25) {
    std::ostringstream msg;
    msg << "independent zero count at T = " << T << " is not near an integer (" << raw << ")";
    throw Error(ErrorKind::numeric_budget, msg.str());
  }
  return static_cast<long>(rounded);
}

}  // namespace

ZeroTable find_zeros(double height_max) {
  FindZerosOptions opts;
  opts.height_max = height_max;
  return find_zeros(opts);
}

ZeroTable find_zeros(const FindZerosOptions& options, FindZerosReport* report) {
  const double H = options.height_max;
  if (!(H >= 0.0)) throw Error(ErrorKind::input, "find_zeros: height must be non-negative");
  if (H > options.ceiling) {
    std::ostringstream msg;
    msg << "find_zeros: height " << H << " exceeds the configured ceiling " << options.ceiling;
    throw Error(ErrorKind::precondition, msg.str());
  }
  ZeroTable table;
  table.height_max = H;
  table.source = TableSource::computed;
  FindZerosReport local_report;
  FindZerosReport& rep = report ? *report : local_report;
  rep = {};
  if (H < kFirstOrdinateFloor) return table;

  // Gram points g_{-1}, g_0, ... up to the first good one beyond H.
  std::vector<GramSample> gram;
  long n = -1;
  const auto sample = [](long k) {
    const double g = gram_point(k);
    const double z = hardy_z(g);
    const bool good = ((k % 2 == 0) ? z : -z) > 0.0;
    return GramSample{k, g, z, good};
  };
  // Batch the sampling so it can run on the worker pool.
  for (;;) {
    const double approx_density = std::max(1.0, std::log(std::max(H, 20.0) / kTwoPi) / kTwoPi);
    const std::size_t batch =
        gram.empty() ? static_cast<std::size_t>(H * approx_density + 16) : static_cast<std::size_t>(64);
    const long base = n;
    auto chunk = parallel_map(batch, options.workers, [&](std::size_t i) { return sample(base + static_cast<long>(i)); });
    n += static_cast<long>(batch);
    bool done = false;
    for (auto& s : chunk) {
      gram.push_back(s);
      if (s.g > H && s.good) {
        done = true;
        break;
      }
    }
    if (done) break;
  }
  if (!gram.front().good) throw Error(ErrorKind::numeric_budget, "Gram point g_-1 violates Gram's law");
  rep.gram_intervals = gram.back().n - gram.front().n;

  // Blocks between consecutive good Gram points.
  std::vector<std::pair<std::size_t, std::size_t>> blocks;
  std::size_t start = 0;
  for (std::size_t k = 1; k < gram.size(); ++k) {
    if (!gram[k].good) {
      ++rep.bad_gram_points;
      continue;
    }
    blocks.emplace_back(start, k);
    start = k;
  }

  // Checkpoints: block ends at which the independent count is compared with
  // the zeros found so far. Always the final block; every block that closes a
  // run of two or more bad Gram points (local recount); and periodically.
  std::vector<std::size_t> checkpoints;
  long since_last = 0;
  for (std::size_t b = 0; b < blocks.size(); ++b) {
    const long len = gram[blocks[b].second].n - gram[blocks[b].first].n;
    since_last += len;
    const bool recount = len >= 3;  // two consecutive bad Gram points
    if (recount) ++rep.recounts;
    if (b + 1 == blocks.size() || recount || since_last >= options.certificate_stride) {
      checkpoints.push_back(b);
      since_last = 0;
    }
  }

  std::vector<std::vector<double>> block_roots = parallel_map(blocks.size(), options.workers, [&](std::size_t b) {
    return block_zeros(gram, blocks[b].first, blocks[b].second, 0, 6, options.refine_tolerance);
  });

  const std::vector<long> expected_counts = parallel_map(checkpoints.size(), options.workers, [&](std::size_t c) {
    return independent_count(gram[blocks[checkpoints[c]].second].g);
  });

  std::size_t prev_block = 0;
  long running = 0;
  for (std::size_t c = 0; c < checkpoints.size(); ++c) {
    const std::size_t last = checkpoints[c];
    const double T = gram[blocks[last].second].g;
    auto segment_count = [&] {
      long s = 0;
      for (std::size_t b = prev_block; b <= last; ++b) s += static_cast<long>(block_roots[b].size());
      return s;
    };
    long found = running + segment_count();
    if (found != expected_counts[c]) {
      // Deeper search in every block of the offending segment.
      for (std::size_t b = prev_block; b <= last; ++b) {
        block_roots[b] = block_zeros(gram, blocks[b].first, blocks[b].second, 3, kMaxSubdivisionLevel,
                                     options.refine_tolerance);
      }
      found = running + segment_count();
    }
    if (found != expected_counts[c]) {
      std::ostringstream msg;
      msg.precision(12);
      msg << "completeness certificate failed on [" << gram[blocks[prev_block].first].g << ", " << T
          << "]: found " << found << " zeros, independent count " << expected_counts[c];
      throw Error(ErrorKind::numeric_budget, msg.str());
    }
    rep.certificates.emplace_back(T, expected_counts[c]);
    running = found;
    prev_block = last + 1;
  }

  for (const auto& roots : block_roots) {
    for (double g : roots) {
      if (g > H) break;
      ZeroEntry e;
      e.index = table.entries.size() + 1;
      e.gamma = g;
      table.entries.push_back(e);
    }
  }
  assign_phases(table);
  return table;
}

double count_N(double T, const ZeroTable& table) {
  if (T > table.height_max) {
    std::ostringstream msg;
    msg << "count_N: T = " << T << " exceeds the certified height " << table.height_max;
    throw Error(ErrorKind::incomplete_table, msg.str());
  }
  const auto& e = table.entries;
  const auto lo = std::lower_bound(e.begin(), e.end(), T, [](const ZeroEntry& z, double v) { return z.gamma < v; });
  double n = 0.0;
  for (auto it = e.begin(); it != lo; ++it) n += it->multiplicity;
  for (auto it = lo; it != e.end() && it->gamma == T; ++it) n += 0.5 * it->multiplicity;
  return n;
}

double s_of_T(double T, const ZeroTable& table) {
  const double n = count_N(T, table);
  return n - 1.0 - static_cast<double>(riemann_siegel_theta_ld(T) / kPiL);
}

namespace {

// conj(e(S(gamma+))) with S(gamma+) = N(gamma+) - 1 - theta/pi; the integer
// N(gamma+) - 1 drops out of e(.), leaving e(theta(gamma)/pi).
cplx limit_phase(double gamma) {
  const long double cycles = riemann_siegel_theta_ld(gamma) / kPiL;
  return unit_phase(cycles);
}

}  // namespace

cplx zeta_phase(const ZeroEntry& entry, const ZeroTable& table) {
  // The count is only needed to confirm the entry is inside the certified range.
  (void)count_N(entry.gamma, table);
  return limit_phase(entry.gamma);
}

void assign_phases(ZeroTable& table) {
  double below = 0.0;
  for (auto& e : table.entries) {
    const double mid = below + 0.5 * e.multiplicity;
    const long double theta_over_pi = riemann_siegel_theta_ld(e.gamma) / kPiL;
    e.s_at_gamma = static_cast<double>(static_cast<long double>(mid) - 1.0L - theta_over_pi);
    e.phase = limit_phase(e.gamma);
    below += e.multiplicity;
  }
}

}  // namespace zpd
