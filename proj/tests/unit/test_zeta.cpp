#include <doctest.h>

#include <chrono>
#include <cmath>
#include <complex>
#include <filesystem>
#include <fstream>
#include <random>

#include "zpd/error.hpp"
#include "zpd/zeta.hpp"

using namespace zpd;
namespace fs = std::filesystem;

namespace {

// Im log Gamma(1/4 + it/2) - (t/2) log pi, by shifting z up by N and using
// Stirling there; every arg(z + k) has Re > 0, so the branch stays continuous.
long double theta_oracle(long double t) {
  using C = std::complex<long double>;
  const int N = 40;
  const C z(0.25L, t / 2);
  long double im = 0.0L;
  for (int k = 0; k < N; ++k) im -= std::arg(z + static_cast<long double>(k));
  const C w = z + static_cast<long double>(N);
  const C lw = std::log(w);
  C s = (w - 0.5L) * lw - w;
  static const long double B[] = {1.0L / 6, -1.0L / 30, 1.0L / 42, -1.0L / 30, 5.0L / 66, -691.0L / 2730, 7.0L / 6};
  C wp = w;
  for (int k = 1; k <= 7; ++k) {
    s += B[k - 1] / (static_cast<long double>(2 * k) * (2 * k - 1)) / wp;
    wp *= w * w;
  }
  return im + s.imag() - t / 2 * std::log(3.14159265358979323846264338327950288L);
}

std::vector<double> reference_zeros() {
  std::ifstream in(fs::path(ZPD_TEST_DATA_DIR) / "zeros_ref_1000.txt");
  std::vector<double> out;
  std::string line;
  while (std::getline(in, line))
    if (!line.empty() && line[0] != '#') out.push_back(std::stod(line));
  return out;
}

fs::path temp_file(const std::string& name) {
  const auto dir = fs::temp_directory_path() / "zpd-test-zeta";
  fs::create_directories(dir);
  return dir / name;
}

}  // namespace

TEST_CASE("theta against the shifted Stirling oracle") {
  for (double t : {0.05, 0.5, 1.0, 3.0, 10.0, 14.1, 50.0, 333.3, 1000.0, 12345.6, 99999.0}) {
    const double ref = static_cast<double>(theta_oracle(t));
    CHECK(riemann_siegel_theta(t) == doctest::Approx(ref).epsilon(1e-13).scale(1.0 + std::abs(ref)));
  }
}

TEST_CASE("theta frozen values") {
  const std::pair<double, double> v[] = {{0.5, -1.1250527154055628616}, {5, -3.4596203753634625332},
                                         {10, -3.0670743962898952917},  {100, 87.972165231787219625},
                                         {1000, 2034.5464280380316087}, {10000, 31861.923830835820873},
                                         {50000, 199547.13775135840862}};
  for (const auto& [t, th] : v) CHECK(std::abs(riemann_siegel_theta(t) - th) <= 1e-12 * (1 + std::abs(th)));
  CHECK_THROWS_AS(riemann_siegel_theta(0.0), Error);
  CHECK_THROWS_AS(riemann_siegel_theta(-1.0), Error);
}

TEST_CASE("theta derivative matches a central difference") {
  for (double t : {2.0, 30.0, 700.0, 40000.0}) {
    const double h = 1e-3 * std::max(1.0, t / 100);
    const double fd = (riemann_siegel_theta(t + h) - riemann_siegel_theta(t - h)) / (2 * h);
    CHECK(riemann_siegel_theta_prime(t) == doctest::Approx(fd).epsilon(1e-7));
  }
}

TEST_CASE("gram points") {
  CHECK(gram_point(0) == doctest::Approx(17.845599540410860817).epsilon(1e-12));
  CHECK(gram_point(1) == doctest::Approx(23.170282701246309279).epsilon(1e-12));
  CHECK(gram_point(2) == doctest::Approx(27.670182217816337961).epsilon(1e-12));
  CHECK(gram_point(100) == doctest::Approx(238.58259051450292333).epsilon(1e-12));
  for (long n : {-1L, 0L, 7L, 1000L}) {
    const double g = gram_point(n);
    CHECK(std::abs(riemann_siegel_theta(g) - n * kPi) <= 1e-9 * (1 + std::abs(n)));
  }
}

TEST_CASE("zeta by Euler-Maclaurin") {
  CHECK(std::abs(zeta_euler_maclaurin({2.0, 0.0}) - kPi * kPi / 6) <= 1e-14);
  const cplx z50 = zeta_euler_maclaurin({0.5, 50.0});
  CHECK(std::abs(z50 - cplx(-0.081712108320979975048, 0.33079219403866129559)) <= 1e-12);
  CHECK(std::abs(zeta_euler_maclaurin({0.5, 14.134725141734693790})) <= 1e-12);
}

TEST_CASE("hardy Z frozen values and parity") {
  const std::pair<double, double> v[] = {{20, 1.1478424121851972776},
                                         {100, 2.692697056664463475},
                                         {1000, 0.99779463752158661399},
                                         {5000, -0.80425723635293984958},
                                         {30000, 0.95397868478620132964}};
  for (const auto& [t, z] : v) {
    CHECK(std::abs(hardy_z(t) - z) <= 1e-9);
    CHECK(hardy_z(-t) == doctest::Approx(hardy_z(t)).epsilon(1e-12));
  }
  CHECK_THROWS_AS(hardy_z(0.5), Error);
  CHECK(!hardy_z_checked(2e4).degraded);
  CHECK(hardy_z_checked(2e5).degraded);
}

TEST_CASE("Riemann-Siegel and Euler-Maclaurin agree above the crossover") {
  for (double t : {1000.5, 1500.25, 3000.125}) {
    const cplx zeta = zeta_euler_maclaurin({0.5, t});
    const double em = (std::polar(1.0, riemann_siegel_theta(t)) * zeta).real();
    CHECK(std::abs(hardy_z_riemann_siegel(t) - em) <= 1e-9);
  }
}

TEST_CASE("Riemann-Siegel coefficients at p = 1/2") {
  // C0(p) = cos(2 pi (p^2 - p - 1/16)) / cos(2 pi p)
  for (double p : {0.1, 0.3, 0.7}) {
    const double c0 = std::cos(kTwoPi * (p * p - p - 1.0 / 16)) / std::cos(kTwoPi * p);
    CHECK(riemann_siegel_coefficient(0, p) == doctest::Approx(c0).epsilon(1e-12));
  }
}

TEST_CASE("first zeros match the reference table and an independent sign-change scan") {
  const auto ref = reference_zeros();
  REQUIRE(ref.size() == 1000);
  const auto table = find_zeros(1000.0);
  REQUIRE(table.entries.size() >= 649);
  double worst = 0.0;
  for (std::size_t i = 0; i < 649; ++i) worst = std::max(worst, std::abs(table.entries[i].gamma - ref[i]));
  CHECK(worst <= 1e-8);

  // scan Z on a grid finer than the smallest gap below 100
  long changes = 0;
  double prev = hardy_z(10.0);
  for (double t = 10.001; t <= 100.0; t += 0.001) {
    const double z = hardy_z(t);
    if ((z < 0) != (prev < 0)) ++changes;
    prev = z;
  }
  CHECK(changes == 29);
  CHECK(count_N(100.0, table) == 29.0);
}

TEST_CASE("counting identity and S(T) by continuous argument") {
  const auto table = find_zeros(600.0);
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> U(1.0, 600.0);
  for (int i = 0; i < 200; ++i) {
    const double T = U(rng);
    const double rhs = 1.0 + riemann_siegel_theta(T) / kPi + s_of_T(T, table);
    CHECK(std::abs(count_N(T, table) - rhs) <= 1e-10);
  }
  for (double T : {50.0, 123.4, 321.0, 555.5}) CHECK(std::abs(s_by_argument(T) - s_of_T(T, table)) <= 1e-8);
  // half weight at an ordinate
  const double g1 = table.entries.front().gamma;
  CHECK(count_N(g1, table) == 0.5);
}

TEST_CASE("zero phases are unit and follow the phase law") {
  const auto table = find_zeros(1500.0);
  double worst = 0.0;
  for (const auto& e : table.entries) {
    CHECK(std::abs(std::abs(e.phase) - 1.0) <= 1e-14);
    const double x = e.gamma / kTwoPi * std::log(e.gamma / (kTwoPi * std::exp(1.0))) + 7.0 / 8;
    const cplx law = std::polar(1.0, kTwoPi * (x - std::floor(x)));
    worst = std::max(worst, e.gamma * std::abs(e.phase - law));
  }
  CHECK(worst <= 10.0);
  CHECK(std::abs(zeta_phase(table.entries[3], table) - table.entries[3].phase) <= 1e-15);
}

TEST_CASE("find_zeros is identical across worker counts") {
  FindZerosOptions a;
  a.height_max = 3000;
  FindZerosOptions b = a;
  b.workers = 4;
  CHECK(find_zeros(a) == find_zeros(b));
}

TEST_CASE("text ingestion") {
  const auto t = parse_zero_table("# two zeros\n14.134725142\n\n21.022039639\n");
  REQUIRE(t.entries.size() == 2);
  CHECK(t.source == TableSource::ingested);
  CHECK(t.entries[1].index == 2);
  CHECK_THROWS_AS(parse_zero_table("14.1\nabc\n"), Error);
  CHECK_THROWS_AS(parse_zero_table("21.0\n14.1\n"), Error);
  try {
    ingest_zero_table("/nonexistent/zeros.txt");
    FAIL("expected not_found");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::not_found);
  }
}

TEST_CASE("cache round trip and integrity") {
  const auto table = find_zeros(200.0);
  const auto path = temp_file("t.cache");
  cache_store(path, table);
  CHECK(cache_load(path) == table);
  CHECK(load_zero_table(path) == table);

  const auto bytes = cache_serialize(table);
  auto expect_integrity = [](const std::string& b) {
    try {
      cache_deserialize(b);
      FAIL("expected integrity error");
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::integrity);
    }
  };
  expect_integrity(bytes.substr(0, bytes.size() / 2));  // truncated
  std::string flipped = bytes;
  flipped[bytes.find(',') + 3] ^= 1;
  expect_integrity(flipped);
  std::string version = bytes;
  version.replace(version.find("v1"), 2, "v9");
  expect_integrity(version);
  CHECK(fnv1a64("") == 0xcbf29ce484222325ULL);
  CHECK(fnv1a64("a") == 0xaf63dc4c8601ec8cULL);
}
