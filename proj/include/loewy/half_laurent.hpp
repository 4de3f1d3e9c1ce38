#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace loewy {

/// Integer Laurent polynomial in q^{1/2}.  Terms are (k, c) meaning c q^{k/2},
/// kept sorted by k with no zero coefficients.
class HalfLaurent {
 public:
  using Term = std::pair<int, long long>;

  HalfLaurent() = default;
  static HalfLaurent constant(long long c);
  /// c q^{k/2}
  static HalfLaurent monomial(int doubled_exponent, long long c = 1);
  /// sum_i coeffs[i] q^i
  static HalfLaurent from_q_coeffs(const std::vector<long long>& coeffs);

  const std::vector<Term>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  long long coeff(int doubled_exponent) const;
  /// Largest doubled exponent; only meaningful when nonzero.
  int max_exponent() const { return terms_.back().first; }
  int min_exponent() const { return terms_.front().first; }
  long long eval_at_one() const;
  bool integral_powers() const;
  bool nonnegative() const;

  HalfLaurent& operator+=(const HalfLaurent& o);
  HalfLaurent& operator-=(const HalfLaurent& o);
  HalfLaurent operator+(const HalfLaurent& o) const;
  HalfLaurent operator-(const HalfLaurent& o) const;
  HalfLaurent operator*(const HalfLaurent& o) const;
  HalfLaurent operator-() const;
  HalfLaurent scaled(long long c) const;
  /// Multiply by q^{k/2}.
  HalfLaurent shifted(int doubled_exponent) const;
  bool operator==(const HalfLaurent&) const = default;

  /// "1 + 2q + q^(3/2)" style.
  std::string to_string() const;
  /// "k:c k:c ..." as used in cache files; "0" for zero.
  std::string serialize() const;
  static HalfLaurent deserialize(const std::string& text);

  void add_term(int doubled_exponent, long long c);

 private:
  std::vector<Term> terms_;
};

long long checked_add(long long a, long long b);
long long checked_mul(long long a, long long b);

}  // namespace loewy
