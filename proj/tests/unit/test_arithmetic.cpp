#include <doctest.h>

#include <cmath>
#include <complex>
#include <numeric>
#include <set>

#include "zpd/arithmetic.hpp"
#include "zpd/error.hpp"

using namespace zpd;

namespace {

bool is_prime_naive(i64 n) {
  if (n < 2) return false;
  for (i64 d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

double lambda_naive(i64 n) {
  for (i64 p = 2; p <= n; ++p) {
    if (!is_prime_naive(p) || n % p) continue;
    i64 m = n;
    while (m % p == 0) m /= p;
    return m == 1 ? std::log(static_cast<double>(p)) : 0.0;
  }
  return 0.0;
}

int mobius_naive(i64 n) {
  int sign = 1;
  for (i64 p = 2; p <= n; ++p) {
    if (!is_prime_naive(p) || n % p) continue;
    if ((n / p) % p == 0) return 0;
    sign = -sign;
  }
  return sign;
}

i64 phi_naive(i64 n) {
  i64 c = 0;
  for (i64 k = 1; k <= n; ++k)
    if (std::gcd(k, n) == 1) ++c;
  return c;
}

cplx e(double x) { return std::polar(1.0, 2.0 * M_PI * x); }

// number of primitive characters mod q: sum_{d | q} mu(d) phi(q / d)
i64 primitive_count(i64 q) {
  i64 s = 0;
  for (i64 d = 1; d <= q; ++d)
    if (q % d == 0) s += mobius_naive(d) * phi_naive(q / d);
  return s;
}

}  // namespace

TEST_CASE("von Mangoldt, Moebius and Euler phi against naive definitions") {
  const std::size_t N = 2000;
  const auto L = von_mangoldt_table(N);
  const auto M = mobius_table(N);
  const auto P = euler_phi_table(N);
  for (i64 n = 1; n <= static_cast<i64>(N); ++n) {
    CHECK(L[n] == doctest::Approx(lambda_naive(n)).epsilon(1e-15));
    CHECK(von_mangoldt(n) == L[n]);
    CHECK(M[n] == mobius_naive(n));
    CHECK(mobius(n) == M[n]);
    CHECK(P[n] == phi_naive(n));
    CHECK(euler_phi(n) == P[n]);
  }
  CHECK(von_mangoldt(1) == 0.0);
  CHECK(mobius(1) == 1);
  CHECK(von_mangoldt(1024) == doctest::Approx(std::log(2.0)));
}

TEST_CASE("factorize") {
  const auto f = factorize(360);
  REQUIRE(f.size() == 3);
  CHECK(f[0] == std::pair<i64, int>{2, 3});
  CHECK(f[1] == std::pair<i64, int>{3, 2});
  CHECK(f[2] == std::pair<i64, int>{5, 1});
  CHECK(factorize(1).empty());
  CHECK(factorize(999983).size() == 1);
}

TEST_CASE("modular twists") {
  CHECK(ModularTwist::parse("1/3").value() == doctest::Approx(1.0 / 3));
  CHECK(ModularTwist::parse("2/5").str() == "2/5");
  CHECK_THROWS_AS(ModularTwist::parse("2/4"), Error);
  CHECK_THROWS_AS(ModularTwist::parse("3/3"), Error);
  CHECK_THROWS_AS(ModularTwist::parse("0/3"), Error);
  CHECK_THROWS_AS(ModularTwist::parse("1-3"), Error);
  CHECK_THROWS_AS(ModularTwist::parse("x/3"), Error);
}

TEST_CASE("character groups") {
  for (i64 q = 1; q <= 60; ++q) {
    const auto chars = characters_mod(q);
    REQUIRE(static_cast<i64>(chars.size()) == phi_naive(q));
    CHECK(chars[0].is_principal());
    i64 primitive = 0;
    std::set<std::vector<std::pair<double, double>>> distinct;
    for (const auto& chi : chars) {
      // complete multiplicativity and vanishing off the units
      for (i64 a = 0; a < q; ++a) {
        CHECK((std::gcd(a, q) == 1) == chi.is_unit(a));
        if (std::gcd(a, q) != 1) CHECK(chi(a) == cplx(0.0, 0.0));
        for (i64 b = 0; b < q; ++b) CHECK(std::abs(chi(a * b) - chi(a) * chi(b)) <= 1e-14);
      }
      CHECK(std::abs(chi(q - 1) - cplx(chi.parity(), 0.0)) <= 1e-14);
      CHECK(std::abs(chi(q + 1) - chi(1)) <= 1e-15);
      if (chi.is_primitive()) ++primitive;
      std::vector<std::pair<double, double>> key;
      for (i64 a = 0; a < q; ++a) key.emplace_back(std::round(chi(a).real() * 1e9), std::round(chi(a).imag() * 1e9));
      distinct.insert(key);
    }
    CHECK(static_cast<i64>(distinct.size()) == phi_naive(q));
    CHECK(primitive == primitive_count(q));
    // orthogonality over the group
    for (std::size_t i = 0; i < chars.size(); i += 3) {
      for (std::size_t j = 0; j < chars.size(); j += 2) {
        cplx s = 0;
        for (i64 a = 0; a < q; ++a) s += chars[i](a) * std::conj(chars[j](a));
        CHECK(std::abs(s - (i == j ? cplx(phi_naive(q), 0) : cplx(0, 0))) <= 1e-10);
      }
    }
  }
}

TEST_CASE("conductors against induced-character search") {
  for (i64 q : {8, 9, 12, 15, 16, 20, 24, 45}) {
    for (const auto& chi : characters_mod(q)) {
      // smallest d | q such that chi is trivial on units congruent to 1 mod d
      i64 f = q;
      for (i64 d = 1; d <= q; ++d) {
        if (q % d) continue;
        bool trivial = true;
        for (i64 a = 1; a < q && trivial; ++a)
          if (std::gcd(a, q) == 1 && a % d == 1 % d && std::abs(chi(a) - cplx(1, 0)) > 1e-12) trivial = false;
        if (trivial) {
          f = d;
          break;
        }
      }
      CHECK(chi.conductor() == f);
    }
  }
}

TEST_CASE("quadratic characters") {
  const auto chi5 = quadratic_character(5);
  CHECK(chi5.is_real());
  CHECK(chi5.is_primitive());
  CHECK(chi5(2).real() == doctest::Approx(-1.0));
  CHECK(chi5(4).real() == doctest::Approx(1.0));
  CHECK(select_character(5, "quadratic").index() == chi5.index());
  CHECK(select_character(7, "2").index() == 2);
  CHECK_THROWS_AS(select_character(7, "99"), Error);
  CHECK_THROWS_AS(quadratic_character(2), Error);
}

TEST_CASE("gauss sums") {
  for (i64 q = 2; q <= 50; ++q) {
    for (const auto& chi : characters_mod(q)) {
      cplx naive = 0;
      for (i64 n = 0; n < q; ++n) naive += chi(n) * e(static_cast<double>(n) / q);
      const cplx t = gauss_sum(chi);
      CHECK(std::abs(t - naive) <= 1e-12);
      if (chi.is_primitive()) CHECK(std::abs(std::abs(t) - std::sqrt(static_cast<double>(q))) <= 1e-12);
    }
  }
  // tau(chi_5) = sqrt 5 for the quadratic character
  CHECK(std::abs(gauss_sum(quadratic_character(5)) - cplx(std::sqrt(5.0), 0.0)) <= 1e-14);
}

TEST_CASE("ramanujan sums equal mu(q) for units") {
  for (i64 q = 2; q <= 100; ++q)
    for (i64 m = 1; m < q; ++m) {
      if (std::gcd(m, q) != 1) continue;
      CHECK(std::abs(ramanujan_sum(q, m) - cplx(mobius_naive(q), 0)) <= 1e-12);
    }
  CHECK_THROWS_AS(ramanujan_sum(6, 2), Error);
}

TEST_CASE("inversion formula: even characters, and the parity factor on odd ones") {
  long odd = 0;
  for (i64 q = 3; q <= 30; ++q) {
    for (const auto& chi : characters_mod(q)) {
      if (!chi.is_primitive()) continue;
      for (i64 n : {1, 2, 7, 30, 999, -4}) {
        const auto [lhs, rhs] = char_inversion_check(chi, n);
        const auto [l2, r2] = char_inversion_check(chi, n, ParityFactor::dropped);
        CHECK(std::abs(l2 - r2) <= 1e-12);
        CHECK(std::abs(static_cast<double>(chi.parity()) * lhs - rhs) <= 1e-12);
      }
      if (chi.parity() < 0) ++odd;
    }
  }
  CHECK(odd > 0);
  const auto principal = characters_mod(6)[0];
  CHECK_THROWS_AS(char_inversion_check(principal, 1), Error);
}
