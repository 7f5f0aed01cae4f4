// Acceptance run: one PASS/FAIL line per criterion with the measured values.
// Exit status is 0 when every criterion was evaluated (pass or fail) and 2 when
// one could not be evaluated at all; the per-criterion verdicts are the lines.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "runner.hpp"
#include "zpd/arithmetic.hpp"
#include "zpd/duality.hpp"
#include "zpd/error.hpp"
#include "zpd/fit.hpp"
#include "zpd/operator_calculus.hpp"
#include "zpd/oscillatory.hpp"
#include "zpd/parallel.hpp"
#include "zpd/zeta.hpp"

using namespace zpd;
namespace fs = std::filesystem;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

std::string g(double v, int digits = 4) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", digits, v);
  return buf;
}

struct Verdict {
  bool pass = false;
  std::string measured;
};

int evaluated = 0, passed = 0, broken = 0;

void criterion(int id, const std::string& title, const std::function<Verdict()>& body) {
  const auto t0 = Clock::now();
  try {
    const auto v = body();
    ++evaluated;
    passed += v.pass;
    std::cout << (v.pass ? "PASS" : "FAIL") << " criterion " << id << ": " << title << "; " << v.measured << " ["
              << g(seconds_since(t0), 3) << " s]" << std::endl;
  } catch (const std::exception& e) {
    ++broken;
    std::cout << "FAIL criterion " << id << ": " << title << "; not evaluated: " << e.what() << std::endl;
  }
}

std::vector<double> reference_zeros() {
  std::ifstream in(fs::path(ZPD_TEST_DATA_DIR) / "zeros_ref_1000.txt");
  std::vector<double> out;
  for (std::string line; std::getline(in, line);)
    if (!line.empty() && line[0] != '#') out.push_back(std::stod(line));
  return out;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

const BumpFunction kB = BumpFunction::canonical(1.0, 2.0);

}  // namespace

int main(int argc, char** argv) {
  const fs::path work = argc > 1 ? fs::path(argv[1]) : fs::temp_directory_path() / "zpd-acceptance";
  fs::create_directories(work);

  // shared table for the large-X criteria: in-band zeros at X = 1e4, xi = 1/3 reach 2 pi (1/3) 1e4 * 2
  const double big_height = 42000.0;
  ZeroTable big;
  double big_seconds = 0.0;
  {
    const auto t0 = Clock::now();
    big = find_zeros(big_height);
    big_seconds = seconds_since(t0);
    std::cout << "zero table to " << big_height << ": " << big.entries.size() << " zeros in " << g(big_seconds, 3)
              << " s" << std::endl;
  }

  criterion(1, "zero engine vs reference table, N(100), runtime", [] {
    const auto t0 = Clock::now();
    FindZerosOptions opt;
    opt.height_max = 237.0;  // the first 100 ordinates end at 236.52
    opt.workers = 1;
    const auto t = find_zeros(opt);
    const double secs = seconds_since(t0);
    const auto ref = reference_zeros();
    double dev = INFINITY;
    if (t.entries.size() >= 100 && ref.size() >= 100) {
      dev = 0.0;
      for (std::size_t i = 0; i < 100; ++i) dev = std::max(dev, std::abs(t.entries[i].gamma - ref[i]));
    }
    // independent sign-change scan of Z on a 1e-3 grid
    long changes = 0;
    double prev = hardy_z(10.0);
    for (long k = 1; k <= 90000; ++k) {
      const double z = hardy_z(10.0 + 1e-3 * k);
      if ((z < 0) != (prev < 0)) ++changes;
      prev = z;
    }
    const double n100 = count_N(100.0, t);
    return Verdict{dev <= 1e-8 && n100 == 29.0 && changes == 29 && secs <= 10.0,
                   "max |dev|=" + g(dev) + " N(100)=" + g(n100) + " scan=" + std::to_string(changes) +
                       " time=" + g(secs, 3) + "s"};
  });

  criterion(2, "counting identity and smooth form", [&] {
    const auto t = find_zeros(1001.0);
    std::mt19937_64 rng(20261017);
    std::uniform_real_distribution<double> U(1.0, 1000.0);
    double worst = 0.0, c = 0.0;
    std::vector<std::pair<double, double>> pts;
    for (int i = 0; i < 1000; ++i) {
      const double T = U(rng);
      const double S = s_of_T(T, t);
      const double N = count_N(T, t);
      worst = std::max(worst, std::abs(N - (1.0 + riemann_siegel_theta(T) / kPi + S)));
      const double smooth = T / kTwoPi * std::log(T / (kTwoPi * std::exp(1.0))) + 7.0 / 8 + S;
      const double disc = std::abs(N - smooth);
      c = std::max(c, disc * T);
      pts.emplace_back(T, disc);
    }
    const auto fit = fit_exponent(pts);
    return Verdict{worst <= 1e-10 && c <= 1.0, "identity max err=" + g(worst) + " C=max T|disc|=" + g(c) +
                                                   " (slope " + g(fit.slope, 3) + ")"};
  });

  criterion(3, "phase law over the first 1000 zeros", [&] {
    double worst = 0.0;
    for (std::size_t i = 0; i < 1000 && i < big.entries.size(); ++i) {
      const auto& e = big.entries[i];
      const double x = e.gamma / kTwoPi * std::log(e.gamma / (kTwoPi * std::exp(1.0))) + 7.0 / 8;
      worst = std::max(worst, e.gamma * std::abs(e.phase - std::polar(1.0, kTwoPi * (x - std::floor(x)))));
    }
    return Verdict{worst <= 10.0, "max gamma |Z(rho) - e(...)|=" + g(worst)};
  });

  criterion(4, "explicit formula residual at X = 20, 40", [] {
    const auto t0 = Clock::now();
    const auto t = find_zeros(670.0);
    std::string m;
    bool ok = true;
    for (double X : {20.0, 40.0}) {
      const auto r = explicit_formula_residual(1.0 / 3, kB, X, t, 1e-6);
      ok = ok && std::abs(r.residual) <= 1e-6;
      m += "X=" + g(X) + " |res|=" + g(std::abs(r.residual)) + " H=" + g(r.height, 5) + " ";
    }
    const double secs = seconds_since(t0);
    return Verdict{ok && secs <= 300.0, m + "time=" + g(secs, 3) + "s"};
  });

  criterion(5, "stationary phase decay and outside-band constant", [&] {
    const double xi = 1.0 / 3;
    std::vector<std::pair<double, double>> medians;
    double c_out = 0.0;
    std::string m;
    for (double X : {1e2, 1e3, 1e4}) {
      const double scale = kTwoPi * xi * X;
      std::vector<double> band;
      for (const auto& e : big.entries) {
        if (e.gamma > scale * kB.b()) break;
        if (e.gamma >= scale * kB.a()) band.push_back(e.gamma);
      }
      if (band.empty() || big.height_max < scale * kB.b()) throw Error(ErrorKind::incomplete_table, "band not covered");
      const std::size_t n = std::min<std::size_t>(50, band.size());
      std::vector<double> diffs(n);
      for (std::size_t k = 0; k < n; ++k) {
        const OscIntegralSpec s{xi, kB, X, band[(2 * k + 1) * band.size() / (2 * n)]};
        diffs[k] = std::abs(quad_I(s, 1e-11).value - sp_I(s));
      }
      std::sort(diffs.begin(), diffs.end());
      const double med = n % 2 ? diffs[n / 2] : 0.5 * (diffs[n / 2 - 1] + diffs[n / 2]);
      medians.emplace_back(X, med);
      const auto st = star_params(kB.a(), kB.b(), 1.0, xi, X);
      for (int k = 1; k <= 25; ++k) {
        for (double gs : {st.a_star * k / 26.0, st.b_star * (1.0 + k / 25.0)}) {
          const double gamma = scale * gs;
          const double env = std::sqrt(X) * std::max(1.0 / (X * X * gamma * gamma), std::pow(gamma, -4.0));
          c_out = std::max(c_out, std::abs(quad_I({xi, kB, X, gamma}, 1e-12).value) / env);
        }
      }
      m += "X=" + g(X) + " median=" + g(med) + " ";
    }
    const auto fit = fit_exponent(medians);
    return Verdict{fit.slope <= -0.1 + 0.05 && std::isfinite(c_out),
                   m + "slope=" + g(fit.slope) + " outside C=" + g(c_out)};
  });

  criterion(6, "Fresnel tail closed form and decay", [] {
    double worst = 0.0, worst_half = 0.0, decay = 0.0;
    std::string m;
    for (double lambda : {0.5, 1.0, 2.0, 10.0}) {
      const auto f = fresnel_tail(lambda);
      worst = std::max(worst, std::abs(f.closed - f.direct));
      worst_half = std::max(worst_half, std::abs(f.closed_half - f.direct));
      decay = std::max(decay, std::abs(f.direct) * lambda);
      m += "l=" + g(lambda) + ":" + g(std::abs(f.closed - f.direct), 3) + " ";
    }
    return Verdict{worst <= 1e-8 && decay <= 2.0, "|closed-direct| " + m + "max |direct| l=" + g(decay) +
                                                      "; with i/2 in place of i: " + g(worst_half, 3)};
  });

  criterion(7, "cubic-weight integral times X does not grow", [] {
    bool ok = true;
    std::string m;
    for (const auto& tw : {ModularTwist(1, 3), ModularTwist(2, 5)}) {
      double first = 0.0, worst = 0.0;
      m += "xi=" + tw.str() + ":";
      for (double X : {20.0, 40.0, 80.0, 160.0}) {
        const double v = std::abs(mandalorian_integral(tw.value(), kB, X).value) * X;
        if (X == 20.0) first = v;
        worst = std::max(worst, v);
        m += " " + g(v, 3);
      }
      ok = ok && worst <= first;
      m += "; ";
    }
    return Verdict{ok, m};
  });

  criterion(8, "operator calculus envelopes and class bookkeeping", [] {
    bool ok = true;
    double spread = 0.0, sup = 0.0;
    for (double u0 : {0.2, 3.0}) {
      double fact = 1.0;
      for (int k = 1; k <= 3; ++k) {
        fact *= k;
        const auto e = dl_power(k, u0);
        ok = ok && e.cls.A == k && e.cls.B == k && e.cls.C <= fact * std::pow(3.0, k) && satisfies_class(e);
        const OperatorExpansion exprs[] = {e, l_dl_power(k, u0)};
        const int his[] = {2 * k, 2 * k + 1};
        for (int w = 0; w < 2; ++w) {
          double lo = INFINITY, hi = 0.0;
          for (int n : {50, 200, 2000}) {
            const auto r = envelope_ratio(exprs[w], kB, k, his[w], n);
            lo = std::min(lo, r.sup);
            hi = std::max(hi, r.sup);
          }
          ok = ok && std::isfinite(hi) && lo > 0.0 && hi / lo < 10.0;
          spread = std::max(spread, hi / lo);
          sup = std::max(sup, hi);
        }
      }
    }
    return Verdict{ok, "max ratio=" + g(sup) + " max spread across samples=" + g(spread)};
  });

  criterion(9, "defect exponent over X = 50..800", [&] {
    const auto t0 = Clock::now();
    const auto run = theorem41_defect(Twist(ModularTwist(1, 3)), kB, {50, 100, 200, 400, 800}, big);
    const double secs = seconds_since(t0) + big_seconds;
    std::vector<std::pair<double, double>> scaled;
    std::string m;
    for (const auto& p : run.points) {
      scaled.emplace_back(p.X, std::abs(p.defect) / std::pow(p.X, 0.9));
      m += g(scaled.back().second, 3) + " ";
    }
    const auto trend = fit_exponent(scaled);
    return Verdict{run.fit.slope <= 1.0 && trend.slope <= 0.1 && secs <= 1800.0,
                   "slope=" + g(run.fit.slope) + " |D|/X^0.9: " + m + "time incl. table=" + g(secs, 3) + "s"};
  });

  criterion(10, "character identities", [] {
    double inv = 0.0, inv_even = 0.0, gauss = 0.0, ram = 0.0, sums = 0.0;
    for (i64 q = 2; q <= 50; ++q) {
      for (const auto& chi : characters_mod(q)) {
        if (!chi.is_primitive()) continue;
        gauss = std::max(gauss, std::abs(std::abs(gauss_sum(chi)) - std::sqrt(static_cast<double>(q))));
        if (q > 30) continue;
        for (i64 n = 1; n <= 1000; ++n) {
          const auto [l, r] = char_inversion_check(chi, n);
          inv = std::max(inv, std::abs(l - r));
          if (chi.parity() > 0) inv_even = std::max(inv_even, std::abs(l - r));
        }
        for (double X : {20.0, 100.0, 1000.0}) {
          const auto d = character_sum(chi, kB, X).value;
          sums = std::max(sums, std::abs(d - character_sum_via_gauss(chi, kB, X).value) / (1 + std::abs(d)));
        }
      }
    }
    for (i64 q = 2; q <= 100; ++q)
      for (i64 m = 1; m < q; ++m)
        if (gcd(m, q) == 1) ram = std::max(ram, std::abs(ramanujan_sum(q, m) - cplx(mobius(q), 0.0)));
    return Verdict{inv <= 1e-12 && gauss <= 1e-12 && ram <= 1e-12 && sums <= 1e-9,
                   "inversion=" + g(inv, 3) + " (even chars " + g(inv_even, 3) + ") |tau|-sqrt q=" + g(gauss, 3) +
                       " ramanujan=" + g(ram, 3) + " sums rel=" + g(sums, 3)};
  });

  criterion(11, "superbound and twisted-defect exponents", [&] {
    const std::vector<double> full = {1e2, std::pow(10.0, 2.5), 1e3, std::pow(10.0, 3.5), 1e4};
    bool ok = true;
    std::string m;
    for (const auto& tw : {ModularTwist(1, 3), ModularTwist(2, 5), ModularTwist(1, 4)}) {
      std::vector<std::pair<double, double>> sb, al;
      bool exact_zero = true;
      for (double X : full) {
        al.emplace_back(X, std::abs(aloevera_defect(tw, kB, X)));
        if (kTwoPi * X * kB.b() > big.height_max) continue;  // table permitting
        const auto r = superbound_functional(tw, kB, X, big);
        sb.emplace_back(X, std::abs(r.value));
        if (mobius(tw.q) == 0) exact_zero = exact_zero && r.prime_part == cplx(0.0, 0.0);
      }
      const auto fs_ = fit_exponent(sb);
      const auto fa = fit_exponent(al);
      ok = ok && fs_.slope <= 1.0 && fa.slope <= 1.0 && exact_zero;
      m += tw.str() + ": superbound " + g(fs_.slope, 3) + " (" + std::to_string(sb.size()) + " X) defect " +
           g(fa.slope, 3) + (mobius(tw.q) == 0 ? (exact_zero ? " mu=0 term exact 0" : " mu=0 term NONZERO") : "") +
           "; ";
    }
    return Verdict{ok, m};
  });

  criterion(12, "CSV bytes identical for --workers 1 and 8", [&] {
    const auto cache = work / "zeros-4200.cache";
    {
      ZeroTable small = big;
      while (!small.entries.empty() && small.entries.back().gamma > 4200.0) small.entries.pop_back();
      small.height_max = 4200.0;
      cache_store(cache, small);
    }
    const auto ref = (fs::path(ZPD_TEST_DATA_DIR) / "zeros_ref_1000.txt").string();
    auto data = work / "fit.txt";
    {
      std::ofstream f(data);
      for (double X : {10.0, 100.0, 1000.0}) f << X << " " << std::pow(X, 0.9) << "\n";
    }
    std::vector<runner::RunConfig> cfgs;
    auto add = [&](const std::string& cmd) -> runner::RunConfig& {
      runner::RunConfig c;
      c.command = cmd;
      c.zeros = cache.string();
      cfgs.push_back(c);
      return cfgs.back();
    };
    add("zeros-find").height = 1500;
    cfgs.back().zeros.clear();
    add("zeros-import").zeros = ref;
    add("verify-explicit-formula");
    add("verify-stationary-phase").xgrid = {100, 300, 1000};
    add("verify-theorem41");
    add("verify-superbound").xgrid = {100, 200, 300};
    add("verify-characters");
    add("verify-lemmas");
    add("fit").data = data.string();
    long files = 0, differ = 0;
    std::string which;
    std::ostringstream log;
    for (auto& c : cfgs) {
      std::string csv[2];
      for (int k = 0; k < 2; ++k) {
        c.workers = k ? 8 : 1;
        c.out = work / ("workers" + std::to_string(c.workers));
        const int rc = runner::run(c, log);
        if (rc != runner::kPass && rc != runner::kVerifyFail)
          throw Error(ErrorKind::input, c.command + " exited " + std::to_string(rc) + ": " + log.str());
        csv[k] = slurp(c.out / (c.command + ".csv"));
      }
      ++files;
      if (csv[0] != csv[1] || csv[0].empty()) {
        ++differ;
        which += c.command + " ";
      }
    }
    return Verdict{differ == 0, std::to_string(files) + " CSV files compared, " + std::to_string(differ) +
                                    " differ " + which};
  });

  std::cout << "acceptance: " << passed << "/12 PASS, " << evaluated - passed << " FAIL, " << broken
            << " not evaluated" << std::endl;
  return broken == 0 ? 0 : 2;
}
