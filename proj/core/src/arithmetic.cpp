#include "zpd/arithmetic.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "zpd/error.hpp"

namespace zpd {

namespace {

i64 mod(i64 n, i64 q) {
  const i64 r = n % q;
  return r < 0 ? r + q : r;
}

i64 power_mod(i64 base, i64 e, i64 m) {
  i64 r = 1 % m;
  base = mod(base, m);
  while (e > 0) {
    if (e & 1) r = r * base % m;
    base = base * base % m;
    e >>= 1;
  }
  return r;
}

i64 primitive_root_prime(i64 p) {
  const auto f = factorize(p - 1);
  for (i64 g = 2;; ++g) {
    bool ok = true;
    for (const auto& [r, e] : f) {
      (void)e;
      if (power_mod(g, (p - 1) / r, p) == 1) {
        ok = false;
        break;
      }
    }
    if (ok) return g;
  }
}

// A cyclic factor of the unit group of Z/p^k: residues mod `modulus`
// decompose as generator^exponent. `dlog` maps residue -> exponent.
struct CyclicFactor {
  i64 modulus;
  i64 order;
  std::vector<i64> dlog;  // -1 off the factor (or on non-units)
};

// Cyclic factors of (Z/p^k)^x. For p = 2, k >= 3 the unit n decomposes as
// (-1)^s 5^t; the first factor records s, the second t.
std::vector<CyclicFactor> unit_group_factors(i64 p, int k) {
  i64 M = 1;
  for (int i = 0; i < k; ++i) M *= p;
  std::vector<CyclicFactor> out;
  const auto cyclic = [M](i64 g, i64 order) {
    CyclicFactor f{M, order, std::vector<i64>(static_cast<std::size_t>(M), -1)};
    i64 x = 1;
    for (i64 e = 0; e < order; ++e) {
      f.dlog[static_cast<std::size_t>(x)] = e;
      x = x * g % M;
    }
    return f;
  };
  if (p != 2) {
    i64 g = primitive_root_prime(p);
    if (k >= 2 && power_mod(g, p - 1, p * p) == 1) g += p;
    out.push_back(cyclic(g, M / p * (p - 1)));
  } else if (k == 2) {
    out.push_back(cyclic(3, 2));
  } else if (k >= 3) {
    CyclicFactor sign{M, 2, std::vector<i64>(static_cast<std::size_t>(M), -1)};
    CyclicFactor five = cyclic(5, M / 4);
    std::vector<i64> t(static_cast<std::size_t>(M), -1);
    for (i64 n = 1; n < M; n += 2) {
      const i64 s = (n % 4 == 3) ? 1 : 0;
      const i64 m = s ? M - n : n;
      sign.dlog[static_cast<std::size_t>(n)] = s;
      t[static_cast<std::size_t>(n)] = five.dlog[static_cast<std::size_t>(m)];
    }
    five.dlog = std::move(t);
    out.push_back(std::move(sign));
    out.push_back(std::move(five));
  }
  return out;
}

}  // namespace

i64 gcd(i64 a, i64 b) { return std::gcd(a, b); }

std::vector<std::pair<i64, int>> factorize(i64 n) {
  if (n < 1) throw Error(ErrorKind::domain, "factorize: argument must be positive");
  std::vector<std::pair<i64, int>> f;
  for (i64 p = 2; p * p <= n; p += (p == 2 ? 1 : 2)) {
    if (n % p) continue;
    int e = 0;
    while (n % p == 0) {
      n /= p;
      ++e;
    }
    f.emplace_back(p, e);
  }
  if (n > 1) f.emplace_back(n, 1);
  return f;
}

double von_mangoldt(i64 n) {
  if (n < 1) throw Error(ErrorKind::domain, "von_mangoldt: n must be positive");
  if (n == 1) return 0.0;
  const auto f = factorize(n);
  return f.size() == 1 ? std::log(static_cast<double>(f[0].first)) : 0.0;
}

int mobius(i64 q) {
  if (q < 1) throw Error(ErrorKind::domain, "mobius: q must be positive");
  int s = 1;
  for (const auto& [p, e] : factorize(q)) {
    (void)p;
    if (e > 1) return 0;
    s = -s;
  }
  return s;
}

i64 euler_phi(i64 q) {
  if (q < 1) throw Error(ErrorKind::domain, "euler_phi: q must be positive");
  i64 r = q;
  for (const auto& [p, e] : factorize(q)) {
    (void)e;
    r = r / p * (p - 1);
  }
  return r;
}

std::vector<double> von_mangoldt_table(std::size_t n) {
  std::vector<double> lam(n + 1, 0.0);
  std::vector<bool> composite(n + 1, false);
  for (std::size_t p = 2; p <= n; ++p) {
    if (composite[p]) continue;
    for (std::size_t m = p * p; m <= n; m += p) composite[m] = true;
    const double lp = std::log(static_cast<double>(p));
    for (std::size_t pk = p; pk <= n; pk *= p) {
      lam[pk] = lp;
      if (pk > n / p) break;
    }
  }
  return lam;
}

std::vector<int> mobius_table(std::size_t n) {
  std::vector<int> mu(n + 1, 1);
  std::vector<bool> composite(n + 1, false);
  mu[0] = 0;
  for (std::size_t p = 2; p <= n; ++p) {
    if (composite[p]) continue;
    for (std::size_t m = p; m <= n; m += p) {
      if (m > p) composite[m] = true;
      mu[m] = -mu[m];
    }
    if (p <= n / p)
      for (std::size_t m = p * p; m <= n; m += p * p) mu[m] = 0;
  }
  return mu;
}

std::vector<i64> euler_phi_table(std::size_t n) {
  std::vector<i64> phi(n + 1);
  std::iota(phi.begin(), phi.end(), i64{0});
  for (std::size_t p = 2; p <= n; ++p) {
    if (phi[p] != static_cast<i64>(p)) continue;
    for (std::size_t m = p; m <= n; m += p) phi[m] = phi[m] / static_cast<i64>(p) * static_cast<i64>(p - 1);
  }
  return phi;
}

ModularTwist::ModularTwist(i64 m_, i64 q_) : m(m_), q(q_) {
  if (!(q >= 2 && m > 0 && m < q)) throw Error(ErrorKind::input, "twist m/q needs 0 < m < q");
  if (std::gcd(m, q) != 1) throw Error(ErrorKind::input, "twist " + str() + " is not in lowest terms");
}

ModularTwist ModularTwist::parse(const std::string& text) {
  const auto slash = text.find('/');
  if (slash == std::string::npos) throw Error(ErrorKind::input, "twist must be written m/q: '" + text + "'");
  try {
    std::size_t u1 = 0, u2 = 0;
    const std::string a = text.substr(0, slash), b = text.substr(slash + 1);
    const i64 m = std::stoll(a, &u1), q = std::stoll(b, &u2);
    if (u1 != a.size() || u2 != b.size()) throw std::invalid_argument("trailing");
    return ModularTwist(m, q);
  } catch (const std::logic_error&) {
    throw Error(ErrorKind::input, "twist must be written m/q: '" + text + "'");
  }
}

i64 DirichletCharacter::angle_num(i64 n) const { return angle_[static_cast<std::size_t>(mod(n, q_))]; }

cplx DirichletCharacter::operator()(i64 n) const { return values_[static_cast<std::size_t>(mod(n, q_))]; }

bool DirichletCharacter::is_real() const {
  for (i64 a : angle_)
    if (a > 0 && 2 * a != den_) return false;
  return true;
}

std::vector<DirichletCharacter> characters_mod(i64 q) {
  if (q < 1) throw Error(ErrorKind::input, "characters_mod: q must be positive");
  if (q > 100000) throw Error(ErrorKind::precondition, "characters_mod: modulus too large for dense tables");

  std::vector<CyclicFactor> factors;
  for (const auto& [p, k] : factorize(q))
    for (auto& f : unit_group_factors(p, k)) factors.push_back(std::move(f));

  i64 L = 1;
  for (const auto& f : factors) L = std::lcm(L, f.order);

  // Exponent vectors of every residue (empty for non-units).
  const auto Q = static_cast<std::size_t>(q);
  std::vector<std::vector<i64>> logs(Q);
  std::vector<bool> unit(Q, false);
  for (i64 n = 0; n < q; ++n) {
    if (std::gcd(n, q) != 1) continue;
    unit[static_cast<std::size_t>(n)] = true;
    auto& v = logs[static_cast<std::size_t>(n)];
    for (const auto& f : factors) v.push_back(f.dlog[static_cast<std::size_t>(n % f.modulus)]);
  }
  if (q == 1) unit[0] = true;

  i64 count = 1;
  for (const auto& f : factors) count *= f.order;

  std::vector<i64> divisors;
  for (i64 d = 1; d <= q; ++d)
    if (q % d == 0) divisors.push_back(d);

  std::vector<DirichletCharacter> out;
  out.reserve(static_cast<std::size_t>(count));
  std::vector<i64> e(factors.size(), 0);
  for (i64 idx = 0; idx < count; ++idx) {
    i64 rest = idx;
    for (std::size_t t = 0; t < factors.size(); ++t) {
      e[t] = rest % factors[t].order;
      rest /= factors[t].order;
    }
    DirichletCharacter chi;
    chi.q_ = q;
    chi.index_ = static_cast<int>(idx);
    chi.den_ = L;
    chi.angle_.assign(Q, -1);
    chi.values_.assign(Q, cplx{});
    chi.principal_ = (idx == 0);
    for (std::size_t n = 0; n < Q; ++n) {
      if (!unit[n]) continue;
      i64 a = 0;
      for (std::size_t t = 0; t < factors.size(); ++t) a = (a + e[t] * logs[n][t] % L * (L / factors[t].order)) % L;
      chi.angle_[n] = a;
      chi.values_[n] = unit_root(a, L);
    }
    const i64 minus_one = chi.angle_[static_cast<std::size_t>(mod(-1, q))];
    chi.parity_ = (minus_one == 0) ? 1 : -1;

    // Conductor: smallest d | q with chi(n) = 1 whenever n = 1 mod d, (n, q) = 1.
    chi.conductor_ = q;
    for (i64 d : divisors) {
      bool induced = true;
      for (i64 n = 1; n < q + 1 && induced; n += d) {
        const auto r = static_cast<std::size_t>(n % q);
        if (unit[r] && chi.angle_[r] != 0) induced = false;
      }
      if (induced) {
        chi.conductor_ = d;
        break;
      }
    }
    out.push_back(std::move(chi));
  }
  return out;
}

DirichletCharacter character(i64 q, int index) {
  auto all = characters_mod(q);
  if (index < 0 || static_cast<std::size_t>(index) >= all.size())
    throw Error(ErrorKind::input, "character index " + std::to_string(index) + " out of range mod " + std::to_string(q));
  return all[static_cast<std::size_t>(index)];
}

DirichletCharacter quadratic_character(i64 q) {
  for (auto& chi : characters_mod(q))
    if (!chi.is_principal() && chi.is_real() && chi.is_primitive()) return chi;
  throw Error(ErrorKind::input, "no primitive quadratic character mod " + std::to_string(q));
}

DirichletCharacter select_character(i64 q, const std::string& which) {
  if (which == "quadratic") return quadratic_character(q);
  try {
    std::size_t used = 0;
    const int idx = std::stoi(which, &used);
    if (used == which.size()) return character(q, idx);
  } catch (const std::logic_error&) {
  }
  throw Error(ErrorKind::input, "character selector must be 'quadratic' or an index: '" + which + "'");
}

cplx gauss_sum(const DirichletCharacter& chi) {
  const i64 q = chi.modulus();
  const i64 D = std::lcm(chi.angle_den(), q);
  CompensatedSum<cplx> s;
  for (i64 n = 0; n < q; ++n) {
    const i64 a = chi.angle_num(n);
    if (a < 0) continue;
    s.add(unit_root(a * (D / chi.angle_den()) + n * (D / q), D));
  }
  return s.value();
}

cplx ramanujan_sum(i64 q, i64 m) {
  if (!(q >= 2 && m > 0 && m < q) || std::gcd(m, q) != 1)
    throw Error(ErrorKind::precondition, "ramanujan_sum: need 0 < m < q with gcd(m, q) = 1");
  CompensatedSum<cplx> s;
  for (i64 a = 1; a < q; ++a)
    if (std::gcd(a, q) == 1) s.add(unit_root(-a * m, q));
  return s.value();
}

std::pair<cplx, cplx> char_inversion_check(const DirichletCharacter& chi, i64 n, ParityFactor parity) {
  const i64 q = chi.modulus();
  if (q <= 1 || !chi.is_primitive())
    throw Error(ErrorKind::precondition, "char_inversion_check: character must be primitive with q > 1");
  const i64 D = std::lcm(chi.angle_den(), q);
  const i64 nr = mod(n, q);
  CompensatedSum<cplx> s;
  for (i64 m = 0; m < q; ++m) {
    const i64 a = chi.angle_num(m);
    if (a < 0) continue;
    // conj chi(m) e(-nm/q)
    s.add(unit_root(-a * (D / chi.angle_den()) - (nr * m % q) * (D / q), D));
  }
  const double sign = parity == ParityFactor::as_printed ? static_cast<double>(chi.parity()) : 1.0;
  const cplx rhs = sign * gauss_sum(chi) / static_cast<double>(q) * s.value();
  return {chi(n), rhs};
}

}  // namespace zpd
