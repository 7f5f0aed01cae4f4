#include "runner.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include <json.hpp>

#include "zpd/arithmetic.hpp"
#include "zpd/bump.hpp"
#include "zpd/duality.hpp"
#include "zpd/error.hpp"
#include "zpd/fit.hpp"
#include "zpd/operator_calculus.hpp"
#include "zpd/oscillatory.hpp"
#include "zpd/parallel.hpp"
#include "zpd/zeta.hpp"

namespace zpd::runner {

namespace fs = std::filesystem;
using nlohmann::ordered_json;

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

double parse_number(const std::string& key, const std::string& text) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(text, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != text.size() || !std::isfinite(v))
    throw Error(ErrorKind::input, key + ": not a number: '" + text + "'");
  return v;
}

long parse_integer(const std::string& key, const std::string& text) {
  const double v = parse_number(key, text);
  if (v != std::floor(v)) throw Error(ErrorKind::input, key + ": not an integer: '" + text + "'");
  return static_cast<long>(v);
}

// %.17g round-trips and is locale-independent for the C locale.
std::string num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string fixed(double v, int digits = 6) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", digits, v);
  return buf;
}

struct Row {
  std::string experiment;
  double X;
  cplx value;
  double budget;
};

// Collects rows, plot series and the JSON summary for one command.
class Artifacts {
 public:
  Artifacts(const RunConfig& cfg, std::ostream& log) : cfg_(cfg), log_(log) {
    summary_["command"] = cfg.command;
  }

  void row(const std::string& id, double X, cplx v, double budget = 0.0) { rows_.push_back({id, X, v, budget}); }

  void series(const std::string& name, const std::string& xlabel, const std::string& ylabel,
              std::vector<std::pair<double, double>> pts) {
    plots_.push_back({name, xlabel, ylabel, std::move(pts)});
  }

  ordered_json& summary() { return summary_; }

  void check(const std::string& name, bool pass, const std::string& measured) {
    log_ << (pass ? "PASS " : "FAIL ") << name << "  " << measured << "\n";
    summary_["checks"].push_back({{"name", name}, {"pass", pass}, {"measured", measured}});
    all_pass_ = all_pass_ && pass;
  }

  bool all_pass() const { return all_pass_; }

  void write() const {
    fs::create_directories(cfg_.out);
    {
      std::ofstream csv(cfg_.out / (cfg_.command + ".csv"), std::ios::binary);
      csv << "experiment,X,re,im,abs,budget\n";
      for (const auto& r : rows_)
        csv << r.experiment << ',' << num(r.X) << ',' << num(r.value.real()) << ',' << num(r.value.imag()) << ','
            << num(std::abs(r.value)) << ',' << num(r.budget) << '\n';
      if (!csv) throw Error(ErrorKind::input, "cannot write " + (cfg_.out / (cfg_.command + ".csv")).string());
    }
    std::ostringstream readme;
    readme << "Plot data for `" << cfg_.command << "`: two whitespace-separated columns (x y) per file.\n\n";
    for (const auto& p : plots_) {
      const std::string file = cfg_.command + "-" + p.name + ".dat";
      std::ofstream dat(cfg_.out / file, std::ios::binary);
      dat << "# x: " << p.xlabel << "\n# y: " << p.ylabel << "\n";
      for (const auto& [x, y] : p.pts) dat << num(x) << ' ' << num(y) << '\n';
      readme << "- " << file << ": x = " << p.xlabel << ", y = " << p.ylabel << "\n";
    }
    if (!plots_.empty()) {
      std::ofstream md(cfg_.out / (cfg_.command + ".plots.md"), std::ios::binary);
      md << readme.str();
    }
    ordered_json s = summary_;
    s["pass"] = all_pass_;
    std::ofstream js(cfg_.out / (cfg_.command + ".json"), std::ios::binary);
    js << s.dump(2) << '\n';
  }

 private:
  struct Plot {
    std::string name, xlabel, ylabel;
    std::vector<std::pair<double, double>> pts;
  };
  const RunConfig& cfg_;
  std::ostream& log_;
  std::vector<Row> rows_;
  std::vector<Plot> plots_;
  ordered_json summary_;
  bool all_pass_ = true;
};

ordered_json fit_json(const ExponentFit& f) {
  return {{"slope", f.slope}, {"intercept", f.intercept}, {"residual_rms", f.residual_rms},
          {"points", f.points.size()}, {"dropped", f.dropped}};
}

std::vector<double> grid_or(const RunConfig& cfg, std::vector<double> fallback, const BumpFunction& bump) {
  auto g = cfg.xgrid.empty() ? std::move(fallback) : cfg.xgrid;
  const double xb = support_constant(bump);
  for (std::size_t i = 0; i < g.size(); ++i) {
    if (!(g[i] > xb)) throw Error(ErrorKind::input, "xgrid: X = " + num(g[i]) + " must exceed X_B = " + num(xb));
    if (i > 0 && !(g[i] > g[i - 1])) throw Error(ErrorKind::input, "xgrid must be strictly ascending");
  }
  return g;
}

// Loads --zeros, or computes a table to max(--height, needed).
ZeroTable obtain_table(const RunConfig& cfg, double needed, std::ostream& log) {
  if (!cfg.zeros.empty()) {
    if (!fs::exists(cfg.zeros)) throw Error(ErrorKind::not_found, "zero table not found: " + cfg.zeros);
    auto t = load_zero_table(cfg.zeros);
    log << "zero table " << cfg.zeros << ": " << t.entries.size() << " zeros to " << fixed(t.height_max, 10) << "\n";
    return t;
  }
  FindZerosOptions opt;
  opt.height_max = std::max(cfg.height, needed);
  opt.workers = cfg.workers;
  if (opt.height_max > opt.ceiling)
    throw Error(ErrorKind::precondition, "needed zero height " + num(opt.height_max) + " exceeds ceiling " + num(opt.ceiling));
  log << "computing zeros to " << fixed(opt.height_max, 10) << "\n";
  auto t = find_zeros(opt);
  log << "  " << t.entries.size() << " zeros\n";
  return t;
}

double ld(double x) { return std::log10(x); }

// ---------------------------------------------------------------------------

void cmd_zeros_find(const RunConfig& cfg, Artifacts& art, std::ostream& log) {
  if (!(cfg.height > 0.0)) throw Error(ErrorKind::input, "zeros-find needs --height > 0");
  std::optional<ZeroTable> reference;
  if (!cfg.zeros.empty()) {
    if (!fs::exists(cfg.zeros)) throw Error(ErrorKind::not_found, "zero table not found: " + cfg.zeros);
    reference = load_zero_table(cfg.zeros);
  }
  FindZerosOptions opt;
  opt.height_max = cfg.height;
  opt.workers = cfg.workers;
  FindZerosReport rep;
  const auto table = find_zeros(opt, &rep);
  fs::create_directories(cfg.out);
  cache_store(cfg.out / "zeros.cache", table);

  std::vector<std::pair<double, double>> s_pts;
  for (const auto& e : table.entries) {
    art.row("zero", e.gamma, e.phase, opt.refine_tolerance);
    s_pts.emplace_back(e.gamma, e.s_at_gamma);
  }
  art.series("S", "gamma", "S(gamma) at the zero (midpoint)", std::move(s_pts));
  auto& s = art.summary();
  s["height"] = table.height_max;
  s["zeros"] = table.entries.size();
  s["gram_intervals"] = rep.gram_intervals;
  s["bad_gram_points"] = rep.bad_gram_points;
  s["recounts"] = rep.recounts;
  s["cache"] = (cfg.out / "zeros.cache").string();
  log << "found " << table.entries.size() << " zeros to " << cfg.height << "\n";

  // certificate: the computed count agrees with 1 + theta/pi + S at the top
  const double top = table.height_max;
  const double cert = 1.0 + riemann_siegel_theta(top) / kPi + s_by_argument(top);
  const double count = count_N(top, table);
  art.check("count-certificate", std::abs(cert - count) < 0.5,
            "N=" + fixed(count, 10) + " independent=" + fixed(cert, 10));

  if (reference) {
    const double limit = std::min(reference->height_max, table.height_max);
    double dev = 0.0;
    long compared = 0, ref_count = 0, comp_count = 0;
    for (const auto& e : reference->entries) {
      if (e.gamma > limit) break;
      ++ref_count;
      const auto it = std::lower_bound(table.entries.begin(), table.entries.end(), e.gamma,
                                       [](const ZeroEntry& z, double g) { return z.gamma < g; });
      double best = INFINITY;
      if (it != table.entries.end()) best = std::abs(it->gamma - e.gamma);
      if (it != table.entries.begin()) best = std::min(best, std::abs(std::prev(it)->gamma - e.gamma));
      dev = std::max(dev, best);
      ++compared;
    }
    for (const auto& e : table.entries)
      if (e.gamma <= limit) comp_count += e.multiplicity;
    const bool ok = compared > 0 && dev <= 1e-8 && ref_count == comp_count;
    s["consistency"] = {{"compared", compared}, {"max_deviation", dev}, {"reference_count", ref_count},
                        {"computed_count", comp_count}};
    art.check("consistency", ok,
              "compared=" + std::to_string(compared) + " max_dev=" + fixed(dev, 3) + " counts " +
                  std::to_string(comp_count) + "/" + std::to_string(ref_count));
  }
}

void cmd_zeros_import(const RunConfig& cfg, Artifacts& art, std::ostream& log) {
  if (cfg.zeros.empty()) throw Error(ErrorKind::input, "zeros-import needs --zeros PATH");
  if (!fs::exists(cfg.zeros)) throw Error(ErrorKind::not_found, "zero table not found: " + cfg.zeros);
  const auto table = load_zero_table(cfg.zeros);
  fs::create_directories(cfg.out);
  cache_store(cfg.out / "zeros.cache", table);
  for (const auto& e : table.entries) art.row("zero", e.gamma, e.phase);
  art.summary()["zeros"] = table.entries.size();
  art.summary()["height"] = table.height_max;
  art.summary()["cache"] = (cfg.out / "zeros.cache").string();
  log << "imported " << table.entries.size() << " zeros to " << fixed(table.height_max, 12) << "\n";
  art.check("import", !table.entries.empty(), "zeros=" + std::to_string(table.entries.size()));
}

void cmd_explicit_formula(const RunConfig& cfg, Artifacts& art, std::ostream& log) {
  const auto bump = BumpFunction::parse(cfg.bump);
  const auto twist = Twist::parse(cfg.xi);
  const auto grid = grid_or(cfg, {20.0, 40.0}, bump);
  double need = 0.0;
  for (double X : grid) need = std::max(need, explicit_formula_height(twist.xi, bump, X, cfg.tol));
  const auto table = obtain_table(cfg, need, log);
  std::vector<std::pair<double, double>> pts;
  for (double X : grid) {
    const auto r = explicit_formula_residual(twist.xi, bump, X, table, cfg.tol, cfg.workers);
    art.row("explicit-formula", X, r.residual, r.budget());
    art.summary()["points"].push_back({{"X", X}, {"residual", std::abs(r.residual)}, {"height", r.height},
                                       {"zeros", r.zeros_used}, {"tail_bound", r.tail_bound},
                                       {"quad_budget", r.quad_budget}});
    pts.emplace_back(X, std::abs(r.residual));
    art.check("residual X=" + num(X), std::abs(r.residual) <= cfg.tol + r.budget(),
              "|res|=" + fixed(std::abs(r.residual), 3) + " tol=" + fixed(cfg.tol, 3) + " H=" + fixed(r.height, 6));
  }
  art.series("residual", "X", "|residual|", std::move(pts));
}

void cmd_stationary_phase(const RunConfig& cfg, Artifacts& art, std::ostream& log) {
  const auto bump = BumpFunction::parse(cfg.bump);
  const auto twist = Twist::parse(cfg.xi);
  const double xi = twist.xi;
  const auto grid = grid_or(cfg, {100.0, 1000.0, 10000.0}, bump);
  const auto table = obtain_table(cfg, kTwoPi * xi * grid.back() * bump.b(), log);
  const auto n = static_cast<std::size_t>(std::max(1L, cfg.samples));
  const double quad_tol = 1e-11;

  std::vector<std::pair<double, double>> medians;
  double c_out = 0.0;
  std::vector<std::pair<double, double>> c_pts;
  for (double X : grid) {
    const double scale = kTwoPi * xi * X;
    if (table.height_max < scale * bump.b())
      throw Error(ErrorKind::incomplete_table, "stationary phase: table stops at " + num(table.height_max) +
                                                   ", need " + num(scale * bump.b()));
    std::vector<double> band;
    for (const auto& e : table.entries) {
      if (e.gamma > scale * bump.b()) break;
      if (e.gamma >= scale * bump.a()) band.push_back(e.gamma);
    }
    if (band.empty()) throw Error(ErrorKind::input, "no zeros with gamma* in [a, b] at X=" + num(X));
    std::vector<double> pick;
    const std::size_t m = std::min(n, band.size());
    for (std::size_t k = 0; k < m; ++k) pick.push_back(band[(2 * k + 1) * band.size() / (2 * m)]);
    const auto diffs = parallel_map(pick.size(), cfg.workers, [&](std::size_t k) {
      const OscIntegralSpec spec{xi, bump, X, pick[k]};
      return quad_I(spec, quad_tol).value - sp_I(spec);
    });
    std::vector<double> mags;
    for (std::size_t k = 0; k < pick.size(); ++k) {
      art.row("sp-diff", X, diffs[k], quad_tol);
      mags.push_back(std::abs(diffs[k]));
    }
    std::sort(mags.begin(), mags.end());
    const std::size_t h = mags.size() / 2;
    const double med = mags.size() % 2 ? mags[h] : 0.5 * (mags[h - 1] + mags[h]);
    medians.emplace_back(X, med);
    art.row("sp-median", X, med, quad_tol);

    // outside the band: half below a*, half above b*
    const auto band_star = star_params(bump.a(), bump.b(), 1.0, xi, X);
    std::vector<double> outside;
    const std::size_t lo = n / 2, hi = n - lo;
    for (std::size_t k = 1; k <= lo; ++k)
      outside.push_back(scale * band_star.a_star * static_cast<double>(k) / static_cast<double>(lo + 1));
    for (std::size_t k = 1; k <= hi; ++k)
      outside.push_back(scale * band_star.b_star * (1.0 + static_cast<double>(k) / static_cast<double>(hi)));
    const auto ratios = parallel_map(outside.size(), cfg.workers, [&](std::size_t k) {
      const double g = outside[k];
      const OscIntegralSpec spec{xi, bump, X, g};
      const double env = std::sqrt(X) * std::max(1.0 / (X * X * g * g), std::pow(g, -4.0));
      return std::abs(quad_I(spec, 1e-12).value) / env;
    });
    double cx = 0.0;
    for (std::size_t k = 0; k < outside.size(); ++k) {
      art.row("outside-ratio", X, ratios[k], 1e-12);
      cx = std::max(cx, ratios[k]);
    }
    c_pts.emplace_back(X, cx);
    c_out = std::max(c_out, cx);
    art.summary()["points"].push_back({{"X", X}, {"in_band_zeros", band.size()}, {"sampled", pick.size()},
                                       {"median_diff", med}, {"outside_constant", cx}});
    log << "X=" << X << " median |quad-sp|=" << fixed(med) << " outside C=" << fixed(cx) << "\n";
  }
  art.series("median", "X", "median |quad_I - sp_I| over sampled in-band zeros", medians);
  art.series("outside", "X", "max |quad_I| / (X^1/2 max(X^-2 gamma^-2, gamma^-4))", c_pts);
  const auto f = fit_exponent(medians);
  art.summary()["fit"] = fit_json(f);
  art.summary()["outside_constant"] = c_out;
  art.check("in-band decay", f.slope <= -0.1 + 0.05, "slope=" + fixed(f.slope) + " (<= -0.05)");
  art.check("outside bound", std::isfinite(c_out), "C=" + fixed(c_out));
}

void cmd_theorem41(const RunConfig& cfg, Artifacts& art, std::ostream& log) {
  const auto bump = BumpFunction::parse(cfg.bump);
  const auto twist = Twist::parse(cfg.xi);
  const auto grid = grid_or(cfg, {50.0, 100.0, 200.0, 400.0, 800.0}, bump);
  const auto table = obtain_table(cfg, kTwoPi * twist.xi * grid.back() * bump.b(), log);
  const auto run = theorem41_defect(twist, bump, grid, table, cfg.workers);
  std::vector<std::pair<double, double>> pts, scaled;
  for (const auto& p : run.points) {
    art.row("defect", p.X, p.defect);
    art.row("prime-side", p.X, p.prime);
    art.row("zero-side", p.X, p.zero);
    pts.emplace_back(ld(p.X), std::log10(std::max(std::abs(p.defect), 1e-300)));
    scaled.emplace_back(p.X, std::abs(p.defect) / std::pow(p.X, 0.9));
    art.summary()["points"].push_back({{"X", p.X}, {"abs_defect", std::abs(p.defect)},
                                       {"scaled", std::abs(p.defect) / std::pow(p.X, 0.9)}});
    log << "X=" << p.X << " |D|=" << fixed(std::abs(p.defect)) << " |D|/X^0.9=" << fixed(scaled.back().second) << "\n";
  }
  art.series("loglog", "log10 X", "log10 |D(X)|", pts);
  art.series("scaled", "X", "|D(X)| / X^0.9", scaled);
  art.summary()["fit"] = fit_json(run.fit);
  art.check("defect exponent", run.fit.slope <= 0.9 + 0.1, "slope=" + fixed(run.fit.slope) + " (<= 1.0)");
}

void cmd_superbound(const RunConfig& cfg, Artifacts& art, std::ostream& log) {
  const auto bump = BumpFunction::parse(cfg.bump);
  const auto twist = ModularTwist::parse(cfg.xi);
  const auto full = grid_or(cfg, {100.0, std::pow(10.0, 2.5), 1000.0, std::pow(10.0, 3.5), 10000.0}, bump);
  double available = kDefaultHeightCeiling;
  std::optional<ZeroTable> loaded;
  if (!cfg.zeros.empty()) {
    loaded = obtain_table(cfg, 0.0, log);
    available = loaded->height_max;
  } else if (cfg.height > 0.0) {
    available = std::min(available, cfg.height);
  }
  std::vector<double> grid;
  for (double X : full) {
    if (kTwoPi * X * bump.b() <= available) {
      grid.push_back(X);
    } else {
      log << "skip X=" << X << ": needs zeros to " << num(kTwoPi * X * bump.b()) << "\n";
      art.summary()["skipped"].push_back(X);
    }
  }
  if (grid.empty()) throw Error(ErrorKind::incomplete_table, "superbound: no X fits under the zero table");
  const auto table = loaded ? *loaded : obtain_table(cfg, kTwoPi * grid.back() * bump.b(), log);

  const auto results = parallel_map(grid.size(), cfg.workers, [&](std::size_t k) {
    return std::make_pair(superbound_functional(twist, bump, grid[k], table), aloevera_defect(twist, bump, grid[k]));
  });
  std::vector<std::pair<double, double>> sb, al;
  bool zero_second = true;
  const bool mu_zero = mobius(twist.q) == 0;
  for (std::size_t k = 0; k < grid.size(); ++k) {
    const auto& [r, a] = results[k];
    art.row("superbound", grid[k], r.value);
    art.row("superbound-zero-part", grid[k], r.zero_part);
    art.row("superbound-prime-part", grid[k], r.prime_part);
    art.row("aloevera", grid[k], a);
    sb.emplace_back(grid[k], std::abs(r.value));
    al.emplace_back(grid[k], std::abs(a));
    if (mu_zero && (r.prime_part.real() != 0.0 || r.prime_part.imag() != 0.0)) zero_second = false;
    art.summary()["points"].push_back({{"X", grid[k]}, {"superbound", std::abs(r.value)},
                                       {"zeros", r.n_zeros}, {"aloevera", std::abs(a)}});
    log << "X=" << fixed(grid[k]) << " |superbound|=" << fixed(std::abs(r.value)) << " |aloevera|="
        << fixed(std::abs(a)) << "\n";
  }
  art.series("superbound", "X", "|superbound functional|", sb);
  art.series("aloevera", "X", "|prime_side(m/q) - mu(q)/phi(q) untwisted|", al);
  const auto fs_ = fit_exponent(sb);
  const auto fa = fit_exponent(al);
  art.summary()["fit_superbound"] = fit_json(fs_);
  art.summary()["fit_aloevera"] = fit_json(fa);
  art.check("superbound exponent " + twist.str(), fs_.slope <= 1.0, "slope=" + fixed(fs_.slope) + " (<= 1.0)");
  art.check("aloevera exponent " + twist.str(), fa.slope <= 1.0, "slope=" + fixed(fa.slope) + " (<= 1.0)");
  if (mu_zero) art.check("mu(q)=0 second term", zero_second, zero_second ? "exactly 0" : "nonzero");
}

void cmd_characters(const RunConfig& cfg, Artifacts& art, std::ostream& log) {
  const auto bump = BumpFunction::parse(cfg.bump);
  const auto grid = grid_or(cfg, {100.0, 1000.0}, bump);
  if (cfg.qmax < 2) throw Error(ErrorKind::input, "qmax must be >= 2");
  // [0] even characters, [1] odd characters; printed form and chi(-1) dropped
  double inv[2] = {0, 0}, inv_dropped = 0.0, sums[2] = {0, 0}, sums_dropped = 0.0;
  double gauss_err = 0.0, ram_err = 0.0;
  long primitive = 0;
  for (i64 q = 2; q <= cfg.qmax; ++q) {
    for (const auto& chi : characters_mod(q)) {
      if (!chi.is_primitive()) continue;
      ++primitive;
      const int odd = chi.parity() < 0 ? 1 : 0;
      for (i64 n = 1; n <= 1000; ++n) {
        const auto [lhs, rhs] = char_inversion_check(chi, n);
        inv[odd] = std::max(inv[odd], std::abs(lhs - rhs));
        const auto [l2, r2] = char_inversion_check(chi, n, ParityFactor::dropped);
        inv_dropped = std::max(inv_dropped, std::abs(l2 - r2));
      }
      gauss_err = std::max(gauss_err, std::abs(std::abs(gauss_sum(chi)) - std::sqrt(static_cast<double>(q))));
      for (double X : grid) {
        const auto d = character_sum(chi, bump, X).value;
        const auto g = character_sum_via_gauss(chi, bump, X).value;
        const auto g2 = character_sum_via_gauss(chi, bump, X, ParityFactor::dropped).value;
        sums[odd] = std::max(sums[odd], std::abs(d - g) / (1.0 + std::abs(d)));
        sums_dropped = std::max(sums_dropped, std::abs(d - g2) / (1.0 + std::abs(d)));
        art.row("charsum-q=" + std::to_string(q) + "-idx=" + std::to_string(chi.index()), X, d);
      }
    }
    const double mu = mobius(q);
    for (i64 m = 1; m < q; ++m) {
      if (gcd(m, q) != 1) continue;
      ram_err = std::max(ram_err, std::abs(ramanujan_sum(q, m) - cplx(mu, 0.0)));
    }
  }
  log << primitive << " primitive characters, q <= " << cfg.qmax << "\n";
  auto& s = art.summary();
  s["qmax"] = cfg.qmax;
  s["primitive_characters"] = primitive;
  s["inversion_error"] = {{"even", inv[0]}, {"odd", inv[1]}, {"parity_dropped", inv_dropped}};
  s["character_sum_error"] = {{"even", sums[0]}, {"odd", sums[1]}, {"parity_dropped", sums_dropped}};
  s["gauss_error"] = gauss_err;
  s["ramanujan_error"] = ram_err;
  const double inv_all = std::max(inv[0], inv[1]), sums_all = std::max(sums[0], sums[1]);
  art.check("inversion", inv_all <= 1e-12,
            "max_err=" + fixed(inv_all, 3) + " (even " + fixed(inv[0], 3) + ", odd " + fixed(inv[1], 3) + ")");
  art.check("gauss modulus", gauss_err <= 1e-12, "max_err=" + fixed(gauss_err, 3));
  art.check("ramanujan", ram_err <= 1e-12, "max_err=" + fixed(ram_err, 3));
  art.check("character sums", sums_all <= 1e-9,
            "max_rel_err=" + fixed(sums_all, 3) + " (even " + fixed(sums[0], 3) + ", odd " + fixed(sums[1], 3) + ")");
  log << "without the chi(-1) factor: inversion max_err=" << fixed(inv_dropped, 3)
      << " character sums max_rel_err=" << fixed(sums_dropped, 3) << "\n";
}

void cmd_lemmas(const RunConfig& cfg, Artifacts& art, std::ostream& log) {
  const auto bump = BumpFunction::parse(cfg.bump);
  const auto twist = Twist::parse(cfg.xi);
  const auto grid = grid_or(cfg, {20.0, 40.0, 80.0, 160.0}, bump);

  // integral with the (1 - 1/(u^3 - u)) weight: |value| X must not grow
  std::vector<std::pair<double, double>> m_pts;
  double first = 0.0, worst = 0.0;
  for (double X : grid) {
    const auto r = mandalorian_integral(twist.xi, bump, X, 1e-12);
    const double scaled = std::abs(r.value) * X;
    art.row("mandalorian", X, r.value, r.abs_error_estimate);
    m_pts.emplace_back(X, scaled);
    if (m_pts.size() == 1) first = scaled;
    worst = std::max(worst, scaled);
    log << "X=" << X << " |M| X=" << fixed(scaled) << "\n";
  }
  art.series("mandalorian", "X", "|integral| * X", m_pts);
  art.summary()["mandalorian_scaled"] = m_pts;
  art.check("integral X^-1 decay", worst <= first, "max |M|X=" + fixed(worst) + " first=" + fixed(first));

  // operator calculus envelopes
  bool classes_ok = true, stable = true;
  double worst_spread = 0.0;
  for (double u0 : {0.2, 3.0}) {
    for (int k = 1; k <= 3; ++k) {
      const auto e = dl_power(k, u0);
      double fact = 1.0;
      for (int i = 2; i <= k; ++i) fact *= i;
      const bool cls = e.cls.A == k && e.cls.B == k && e.cls.C <= fact * std::pow(3.0, k) && satisfies_class(e);
      classes_ok = classes_ok && cls;
      for (const auto& [expr, lo, hi] : {std::tuple{e, k, 2 * k}, std::tuple{l_dl_power(k, u0), k, 2 * k + 1}}) {
        double smin = INFINITY, smax = 0.0;
        for (int samples : {50, 200, 2000}) {
          const auto r = envelope_ratio(expr, bump, lo, hi, samples);
          smin = std::min(smin, r.sup);
          smax = std::max(smax, r.sup);
        }
        const double spread = smax / smin;
        worst_spread = std::max(worst_spread, spread);
        stable = stable && std::isfinite(smax) && smin > 0.0 && spread < 10.0;
        art.row("envelope-u0=" + num(u0) + "-k=" + std::to_string(k) + "-hi=" + std::to_string(hi), u0, smax);
      }
    }
  }
  art.check("operator classes", classes_ok, classes_ok ? "(A,B,C) = (k,k,<=k! 3^k)" : "class mismatch");
  art.check("envelope ratios", stable, "max spread=" + fixed(worst_spread));

  // Fresnel tail closed form
  double worst_closed = 0.0, worst_lambda = 0.0;
  std::vector<std::pair<double, double>> f_pts;
  for (double lambda : {0.5, 1.0, 2.0, 10.0}) {
    const auto f = fresnel_tail(lambda);
    art.row("fresnel-direct", lambda, f.direct);
    art.row("fresnel-closed", lambda, f.closed);
    art.row("fresnel-closed-half", lambda, f.closed_half);
    worst_closed = std::max(worst_closed, std::abs(f.closed - f.direct));
    worst_lambda = std::max(worst_lambda, std::abs(f.direct) * lambda);
    f_pts.emplace_back(lambda, std::abs(f.closed - f.direct));
  }
  art.series("fresnel", "lambda", "|closed - direct|", f_pts);
  art.check("fresnel closed form", worst_closed <= 1e-8, "max |closed-direct|=" + fixed(worst_closed, 3));
  art.check("fresnel decay", worst_lambda <= 2.0, "max |direct| lambda=" + fixed(worst_lambda));
}

std::vector<std::pair<double, double>> read_fit_data(const std::string& path) {
  if (path.empty()) throw Error(ErrorKind::input, "fit needs --data PATH");
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::not_found, "data file not found: " + path);
  std::vector<std::pair<double, double>> pts;
  std::string line;
  long lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    line = trim(line);
    if (line.empty() || line[0] == '#' || line.rfind("experiment", 0) == 0) continue;
    std::replace(line.begin(), line.end(), ',', ' ');
    std::istringstream ss(line);
    std::vector<std::string> cols;
    for (std::string c; ss >> c;) cols.push_back(c);
    const std::string where = path + ":" + std::to_string(lineno);
    if (cols.size() == 2) {
      pts.emplace_back(parse_number(where, cols[0]), parse_number(where, cols[1]));
    } else if (cols.size() == 6) {  // our CSV rows: use X and |value|
      pts.emplace_back(parse_number(where, cols[1]), parse_number(where, cols[4]));
    } else {
      throw Error(ErrorKind::input, where + ": expected 'X value' or a result CSV row");
    }
  }
  return pts;
}

void cmd_fit(const RunConfig& cfg, Artifacts& art, std::ostream& log) {
  const auto pts = read_fit_data(cfg.data);
  const auto f = fit_exponent(pts);
  for (const auto& [x, y] : pts) art.row("data", x, y);
  art.summary()["fit"] = fit_json(f);
  std::vector<std::pair<double, double>> loglog;
  for (const auto& [lx, ly] : f.points) loglog.emplace_back(lx, ly);
  art.series("loglog", "log X", "log |D|", loglog);
  log << "slope=" << num(f.slope) << " intercept=" << num(f.intercept) << " rms=" << fixed(f.residual_rms, 3)
      << (f.dropped ? " dropped=" + std::to_string(f.dropped) : std::string()) << "\n";
  art.check("fit", std::isfinite(f.slope), "slope=" + fixed(f.slope, 12));
}

}  // namespace

std::vector<double> parse_grid(const std::string& text) {
  std::vector<double> g;
  std::stringstream ss(text);
  for (std::string item; std::getline(ss, item, ',');) {
    item = trim(item);
    if (item.empty()) throw Error(ErrorKind::input, "xgrid: empty entry in '" + text + "'");
    g.push_back(parse_number("xgrid", item));
  }
  if (g.empty()) throw Error(ErrorKind::input, "xgrid is empty");
  return g;
}

std::map<std::string, std::string> read_config_file(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::not_found, "config not found: " + path.string());
  std::map<std::string, std::string> kv;
  std::string line;
  long lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (const auto h = line.find('#'); h != std::string::npos) line.erase(h);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw Error(ErrorKind::input, path.string() + ":" + std::to_string(lineno) + ": expected key=value");
    kv[trim(line.substr(0, eq))] = trim(line.substr(eq + 1));
  }
  return kv;
}

void apply_settings(RunConfig& cfg, const std::map<std::string, std::string>& kv) {
  for (const auto& [k, v] : kv) {
    if (k == "command") cfg.command = v;
    else if (k == "xi") cfg.xi = v;
    else if (k == "bump") cfg.bump = v;
    else if (k == "xgrid") cfg.xgrid = parse_grid(v);
    else if (k == "zeros") cfg.zeros = v;
    else if (k == "height") cfg.height = parse_number(k, v);
    else if (k == "tol") cfg.tol = parse_number(k, v);
    else if (k == "out") cfg.out = v;
    else if (k == "workers") {
      const long w = parse_integer(k, v);
      if (w < 1 || w > 256) throw Error(ErrorKind::input, "workers must be in [1, 256]");
      cfg.workers = static_cast<unsigned>(w);
    } else if (k == "data") cfg.data = v;
    else if (k == "qmax") cfg.qmax = parse_integer(k, v);
    else if (k == "samples") cfg.samples = parse_integer(k, v);
    else throw Error(ErrorKind::input, "unknown config key '" + k + "'");
  }
}

int run(const RunConfig& cfg, std::ostream& log) {
  try {
    const auto& cmds = commands();
    if (std::find(cmds.begin(), cmds.end(), cfg.command) == cmds.end())
      throw Error(ErrorKind::input, "unknown command '" + cfg.command + "'");
    if (!(cfg.tol > 0.0)) throw Error(ErrorKind::input, "tol must be positive");
    if (cfg.workers < 1) throw Error(ErrorKind::input, "workers must be >= 1");
    Artifacts art(cfg, log);
    if (cfg.command == "zeros-find") cmd_zeros_find(cfg, art, log);
    else if (cfg.command == "zeros-import") cmd_zeros_import(cfg, art, log);
    else if (cfg.command == "verify-explicit-formula") cmd_explicit_formula(cfg, art, log);
    else if (cfg.command == "verify-stationary-phase") cmd_stationary_phase(cfg, art, log);
    else if (cfg.command == "verify-theorem41") cmd_theorem41(cfg, art, log);
    else if (cfg.command == "verify-superbound") cmd_superbound(cfg, art, log);
    else if (cfg.command == "verify-characters") cmd_characters(cfg, art, log);
    else if (cfg.command == "verify-lemmas") cmd_lemmas(cfg, art, log);
    else cmd_fit(cfg, art, log);
    art.write();
    return art.all_pass() ? kPass : kVerifyFail;
  } catch (const Error& e) {
    log << "error [" << to_string(e.kind()) << "]: " << e.what() << "\n";
    switch (e.kind()) {
      case ErrorKind::numeric_budget:
      case ErrorKind::incomplete_table: return kBudgetError;
      default: return kInputError;
    }
  } catch (const std::exception& e) {
    log << "error [io]: " << e.what() << "\n";
    return kInputError;
  }
}

}  // namespace zpd::runner
