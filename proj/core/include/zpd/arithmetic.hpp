#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "zpd/numeric.hpp"

namespace zpd {

using i64 = std::int64_t;

/// Prime factorization by trial division, ascending primes.
std::vector<std::pair<i64, int>> factorize(i64 n);

double von_mangoldt(i64 n);
int mobius(i64 q);
i64 euler_phi(i64 q);
i64 gcd(i64 a, i64 b);

/// Sieved tables for 0..n (entry 0 unused and set to 0).
std::vector<double> von_mangoldt_table(std::size_t n);
std::vector<int> mobius_table(std::size_t n);
std::vector<i64> euler_phi_table(std::size_t n);

/// Rational twist xi = m/q in lowest terms with 0 < m < q.
struct ModularTwist {
  i64 m = 1;
  i64 q = 2;

  ModularTwist() = default;
  ModularTwist(i64 m_, i64 q_);

  double value() const { return static_cast<double>(m) / static_cast<double>(q); }
  std::string str() const { return std::to_string(m) + "/" + std::to_string(q); }

  /// "m/q".
  static ModularTwist parse(const std::string& text);
};

class DirichletCharacter {
 public:
  i64 modulus() const { return q_; }
  int index() const { return index_; }

  /// chi(n) for any integer n.
  cplx operator()(i64 n) const;

  /// Exact angle: chi(n) = e(angle_num(n) / angle_den()) on units; -1 on non-units.
  i64 angle_num(i64 n) const;
  i64 angle_den() const { return den_; }
  bool is_unit(i64 n) const { return angle_num(n) >= 0; }

  int parity() const { return parity_; }
  bool is_principal() const { return principal_; }
  bool is_primitive() const { return conductor_ == q_; }
  i64 conductor() const { return conductor_; }
  bool is_real() const;

  const std::vector<cplx>& values() const { return values_; }

 private:
  friend std::vector<DirichletCharacter> characters_mod(i64 q);

  i64 q_ = 1;
  int index_ = 0;
  i64 den_ = 1;
  std::vector<i64> angle_;  // per residue, -1 off the unit group
  std::vector<cplx> values_;
  int parity_ = 1;
  bool principal_ = true;
  i64 conductor_ = 1;
};

/// All phi(q) characters mod q in a fixed order; index 0 is principal.
/// The unit group is split into cyclic factors per prime power
/// (primitive root for odd p, -1 and 5 for powers of 2).
std::vector<DirichletCharacter> characters_mod(i64 q);

DirichletCharacter character(i64 q, int index);

/// First primitive real character mod q; input error if none exists.
DirichletCharacter quadratic_character(i64 q);

/// Config selector: "quadratic" or an index into characters_mod(q).
DirichletCharacter select_character(i64 q, const std::string& which);

/// tau(chi) = sum_{n mod q} chi(n) e(n/q).
cplx gauss_sum(const DirichletCharacter& chi);

/// sum_{(a,q)=1} e(-am/q); precondition 0 < m < q, gcd(m, q) = 1.
cplx ramanujan_sum(i64 q, i64 m);

/// Whether the inversion formula carries the chi(-1) factor. With tau as above
/// the factor makes the right side chi(-1) chi(n); `dropped` gives chi(n).
enum class ParityFactor { as_printed, dropped };

/// (chi(n), chi(-1) tau(chi)/q * sum_{m mod q} conj chi(m) e(-nm/q)).
/// Precondition: chi primitive with q > 1.
std::pair<cplx, cplx> char_inversion_check(const DirichletCharacter& chi, i64 n,
                                           ParityFactor parity = ParityFactor::as_printed);

}  // namespace zpd
