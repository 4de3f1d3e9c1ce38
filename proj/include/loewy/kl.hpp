#pragma once

#include <cstdint>
#include <string>
#include <unordered_map>
#include <vector>

#include "loewy/alcove.hpp"
#include "loewy/half_laurent.hpp"

namespace loewy {

/// Bruhat order of W_p on elements given by their alcoves (lifting property).
bool bruhat_leq(const AffineWeyl& aff, const Alcove& x, const Alcove& y);

/// Ordinary Kazhdan-Lusztig polynomials of the affine Weyl group W_p, with
/// elements identified with alcoves (x <-> x A+).
class KLEngine {
 public:
  explicit KLEngine(const AffineWeyl& aff);

  const AffineWeyl& affine() const { return *aff_; }

  bool bruhat_leq(const Alcove& x, const Alcove& y) const;
  HalfLaurent kl(const Alcove& x, const Alcove& y);
  /// Same polynomial computed with a caller-chosen left descent of y at the top step.
  HalfLaurent kl_via(const Alcove& x, const Alcove& y, int descent);
  long long mu(const Alcove& x, const Alcove& y);
  /// Bruhat interval [x, y], sorted by length then point.
  std::vector<Alcove> interval(const Alcove& x, const Alcove& y) const;

  std::size_t memo_size() const { return memo_.size(); }
  void clear_memo();

  /// Top-level results, persisted by save_cache / load_cache.
  const std::vector<std::pair<std::pair<Alcove, Alcove>, HalfLaurent>>& requested() const {
    return requested_;
  }
  void save_cache(const std::string& path) const;
  /// Returns false when the file is missing or belongs to another datum.
  bool load_cache(const std::string& path);
  std::size_t cache_hits() const { return cache_hits_; }

 private:
  using Poly = std::vector<long long>;  // coefficients of q^0, q^1, ...
  struct PairHash {
    std::size_t operator()(const std::pair<std::uint64_t, std::uint64_t>& k) const {
      return std::hash<std::uint64_t>{}(k.first * 0x9E3779B97F4A7C15ULL ^ k.second);
    }
  };
  using Key = std::pair<std::uint64_t, std::uint64_t>;

  const Poly& compute(Alcove x, const Alcove& y, int ly, int forced_descent = -1);
  long long mu_raw(const Alcove& z, const Alcove& v, int lz, int lv);
  void down_covers(const Alcove& z, int lz, std::vector<Alcove>& out) const;

  const AffineWeyl* aff_;
  std::unordered_map<Key, Poly, PairHash> memo_;
  std::unordered_map<Key, HalfLaurent, PairHash> top_;
  std::vector<std::pair<std::pair<Alcove, Alcove>, HalfLaurent>> requested_;
  std::size_t cache_hits_ = 0;
  Poly one_{1};
  Poly zero_{};
  Poly forced_result_;
};

/// P_{w0 x, w0 y} for x, y whose alcoves are dominant, computed in the
/// parabolic module spanned by dominant alcoves (trivial character on W).
class DominantKL {
 public:
  explicit DominantKL(const AffineWeyl& aff);

  const AffineWeyl& affine() const { return *aff_; }
  HalfLaurent kl(const Alcove& x, const Alcove& y);
  std::size_t memo_size() const { return memo_.size(); }
  void clear_memo();

 private:
  using Poly = std::vector<long long>;
  using Key = std::pair<std::uint64_t, std::uint64_t>;
  struct PairHash {
    std::size_t operator()(const Key& k) const {
      return std::hash<std::uint64_t>{}(k.first * 0x9E3779B97F4A7C15ULL ^ k.second);
    }
  };

  const Poly& compute(Alcove x, const Alcove& y, int ly);
  long long mu_raw(const Alcove& z, const Alcove& v, int lz, int lv);
  const std::vector<Alcove>& covers(const Alcove& z, int lz);
  std::vector<Alcove> interval(const Alcove& x, int lx, const Alcove& v, int lv);

  bool leq(const Alcove& x, const Alcove& z);
  unsigned descents(const Alcove& z, int lz);

  const AffineWeyl* aff_;
  std::unordered_map<Key, Poly, PairHash> memo_;
  std::unordered_map<std::uint64_t, std::vector<Alcove>> covers_;
  std::unordered_map<Key, bool, PairHash> leq_memo_;
  Poly one_{1};
  Poly zero_{};
};

}  // namespace loewy
