#include "loewy/half_laurent.hpp"

#include <algorithm>
#include <map>
#include <sstream>
#include <stdexcept>

namespace loewy {

long long checked_add(long long a, long long b) {
  long long r;
  if (__builtin_add_overflow(a, b, &r)) throw std::overflow_error("coefficient overflow");
  return r;
}

long long checked_mul(long long a, long long b) {
  long long r;
  if (__builtin_mul_overflow(a, b, &r)) throw std::overflow_error("coefficient overflow");
  return r;
}

HalfLaurent HalfLaurent::constant(long long c) { return monomial(0, c); }

HalfLaurent HalfLaurent::monomial(int doubled_exponent, long long c) {
  HalfLaurent h;
  if (c != 0) h.terms_.emplace_back(doubled_exponent, c);
  return h;
}

HalfLaurent HalfLaurent::from_q_coeffs(const std::vector<long long>& coeffs) {
  HalfLaurent h;
  for (std::size_t i = 0; i < coeffs.size(); ++i)
    if (coeffs[i] != 0) h.terms_.emplace_back(static_cast<int>(2 * i), coeffs[i]);
  return h;
}

long long HalfLaurent::coeff(int k) const {
  auto it = std::lower_bound(terms_.begin(), terms_.end(), Term{k, 0},
                             [](const Term& a, const Term& b) { return a.first < b.first; });
  return (it != terms_.end() && it->first == k) ? it->second : 0;
}

long long HalfLaurent::eval_at_one() const {
  long long s = 0;
  for (const auto& t : terms_) s = checked_add(s, t.second);
  return s;
}

bool HalfLaurent::integral_powers() const {
  return std::all_of(terms_.begin(), terms_.end(), [](const Term& t) { return t.first % 2 == 0; });
}

bool HalfLaurent::nonnegative() const {
  return std::all_of(terms_.begin(), terms_.end(), [](const Term& t) { return t.second > 0; });
}

void HalfLaurent::add_term(int k, long long c) {
  if (c == 0) return;
  auto it = std::lower_bound(terms_.begin(), terms_.end(), Term{k, 0},
                             [](const Term& a, const Term& b) { return a.first < b.first; });
  if (it != terms_.end() && it->first == k) {
    it->second = checked_add(it->second, c);
    if (it->second == 0) terms_.erase(it);
  } else {
    terms_.insert(it, Term{k, c});
  }
}

HalfLaurent& HalfLaurent::operator+=(const HalfLaurent& o) {
  std::vector<Term> out;
  out.reserve(terms_.size() + o.terms_.size());
  auto a = terms_.begin();
  auto b = o.terms_.begin();
  while (a != terms_.end() || b != o.terms_.end()) {
    if (b == o.terms_.end() || (a != terms_.end() && a->first < b->first)) {
      out.push_back(*a++);
    } else if (a == terms_.end() || b->first < a->first) {
      out.push_back(*b++);
    } else {
      long long c = checked_add(a->second, b->second);
      if (c != 0) out.emplace_back(a->first, c);
      ++a;
      ++b;
    }
  }
  terms_ = std::move(out);
  return *this;
}

HalfLaurent& HalfLaurent::operator-=(const HalfLaurent& o) { return *this += -o; }

HalfLaurent HalfLaurent::operator+(const HalfLaurent& o) const {
  HalfLaurent r = *this;
  r += o;
  return r;
}

HalfLaurent HalfLaurent::operator-(const HalfLaurent& o) const {
  HalfLaurent r = *this;
  r -= o;
  return r;
}

HalfLaurent HalfLaurent::operator-() const { return scaled(-1); }

HalfLaurent HalfLaurent::scaled(long long c) const {
  HalfLaurent r;
  if (c == 0) return r;
  r.terms_.reserve(terms_.size());
  for (const auto& t : terms_) r.terms_.emplace_back(t.first, checked_mul(t.second, c));
  return r;
}

HalfLaurent HalfLaurent::shifted(int k) const {
  HalfLaurent r = *this;
  for (auto& t : r.terms_) t.first += k;
  return r;
}

HalfLaurent HalfLaurent::operator*(const HalfLaurent& o) const {
  std::map<int, long long> acc;
  for (const auto& a : terms_)
    for (const auto& b : o.terms_) {
      long long& slot = acc[a.first + b.first];
      slot = checked_add(slot, checked_mul(a.second, b.second));
    }
  HalfLaurent r;
  for (const auto& [k, c] : acc)
    if (c != 0) r.terms_.emplace_back(k, c);
  return r;
}

std::string HalfLaurent::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [k, c] : terms_) {
    long long mag = c < 0 ? -c : c;
    if (first) {
      if (c < 0) os << '-';
    } else {
      os << (c < 0 ? " - " : " + ");
    }
    first = false;
    if (k == 0) {
      os << mag;
      continue;
    }
    if (mag != 1) os << mag;
    os << 'q';
    if (k % 2 == 0) {
      if (k != 2) os << '^' << k / 2;
    } else {
      os << "^(" << k << "/2)";
    }
  }
  return os.str();
}

std::string HalfLaurent::serialize() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  for (std::size_t i = 0; i < terms_.size(); ++i)
    os << (i ? " " : "") << terms_[i].first << ':' << terms_[i].second;
  return os.str();
}

HalfLaurent HalfLaurent::deserialize(const std::string& text) {
  HalfLaurent h;
  std::istringstream is(text);
  std::string tok;
  while (is >> tok) {
    if (tok == "0") continue;
    auto colon = tok.find(':');
    if (colon == std::string::npos) throw std::invalid_argument("bad polynomial term: " + tok);
    h.add_term(std::stoi(tok.substr(0, colon)), std::stoll(tok.substr(colon + 1)));
  }
  return h;
}

}  // namespace loewy
