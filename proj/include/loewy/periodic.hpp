#pragma once

#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "loewy/alcove.hpp"
#include "loewy/half_laurent.hpp"
#include "loewy/kl.hpp"

namespace loewy {

class StabilizationFailed : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class WindowTooSmall : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Which ordinary polynomial is translated into the dominant chamber.
enum class StableConvention {
  LongestTwisted,  // P_{w0 x_m, w0 y_m}
  Plain,           // P_{x_m, y_m}
};

/// How phat() is evaluated.  Stabilized translates each pair into the dominant
/// chamber and waits for agreement.  StarRecursion stabilizes only the column of
/// the lowest alcove of the star of 0 and derives every other value from it by
/// wall crossings inside stars (LongestTwisted values only).
enum class PhatMethod { StarRecursion, Stabilized };

struct PeriodicOptions {
  int max_extra_depth = 8;
  StableConvention convention = StableConvention::LongestTwisted;
  PhatMethod method = PhatMethod::StarRecursion;
};

/// Translation class of an ordered pair of alcoves: finite part of the first
/// alcove and the scaled offset between them.
struct PairClass {
  int w = 0;
  std::array<long long, 3> offset{0, 0, 0};
  bool operator==(const PairClass&) const = default;
  auto operator<=>(const PairClass&) const = default;
};

struct PairClassHash {
  std::size_t operator()(const PairClass& c) const {
    std::size_t h = static_cast<std::size_t>(c.w);
    for (long long v : c.offset) h = h * 1000003u ^ std::hash<long long>{}(v);
    return h;
  }
};

/// Generic (up-reflection) order on alcoves, evaluated through cached up-sets
/// of each translation class inside a root-coordinate box.
class GenericOrder {
 public:
  explicit GenericOrder(const AffineWeyl& aff);
  bool leq(const Alcove& a, const Alcove& b);
  /// Alcoves c >= a with (c - a)/H in root coordinates bounded by `bound`.
  std::vector<Alcove> up_set(const Alcove& a, const Weight& bound);
  /// Alcoves c <= b with (b - c)/H in root coordinates bounded by `bound`.
  std::vector<Alcove> down_set(const Alcove& b, const Weight& bound);
  /// Scaled offset b - a expressed in root coordinates divided by H, rounded up.
  Weight offset_root_coords(const Alcove& a, const Alcove& b) const;

 private:
  struct UpSet {
    Weight bound;
    std::unordered_set<std::uint64_t> offsets;
  };
  const UpSet& up_set_class(int w, const Weight& bound);
  const UpSet& down_set_class(int w, const Weight& bound);
  bool within(const Alcove& a, const Alcove& c, const Weight& bound) const;

  const AffineWeyl* aff_;
  std::vector<std::unique_ptr<UpSet>> classes_;
  std::vector<std::unique_ptr<UpSet>> down_classes_;
};

/// Periodic polynomials of one root datum: Kato's P-hat by translation into the
/// dominant chamber, and the inverse polynomials Q by triangular inversion.
class PeriodicEngine {
 public:
  explicit PeriodicEngine(const RootDatum& datum, PeriodicOptions opts = {});

  const RootDatum& datum() const { return *datum_; }
  const AffineWeyl& affine() const { return aff_; }
  GenericOrder& order() { return order_; }
  const PeriodicOptions& options() const { return opts_; }

  PairClass pair_class(const Alcove& a, const Alcove& b) const;

  HalfLaurent phat(const Alcove& a, const Alcove& b);
  /// Value by translation-stabilization, regardless of the configured method.
  HalfLaurent phat_stabilized(const Alcove& a, const Alcove& b);
  /// Value by the star recursion, regardless of the configured method.
  HalfLaurent phat_recursive(const Alcove& a, const Alcove& b);
  /// Depth m (translation by m 2rho) at which phat_stabilized(a, b) was certified.
  int phat_depth(const Alcove& a, const Alcove& b);
  /// The unstabilized value at depth m (translation by m 2rho of the class representative).
  HalfLaurent phat_at_depth(const Alcove& a, const Alcove& b, int m);

  /// Q^{a,b}, computed from the column of b.
  HalfLaurent q(const Alcove& a, const Alcove& b);
  /// Nonzero entries Q^{c, b} over all c <= b.
  std::vector<std::pair<Alcove, HalfLaurent>> q_column(const Alcove& b);

  /// Sum_c Q^{a,c} (-1)^{d(c,b)} P-hat_{c,b}; equals delta_{a,b} when consistent.
  HalfLaurent inversion_sum(const Alcove& a, const Alcove& b);

  std::size_t phat_cache_size() const { return phat_cache_.size() + rec_memo_.size(); }
  /// Largest translation depth used to certify the star-bottom column.
  int bottom_depth() const { return bottom_depth_; }
  std::size_t bottom_size() const { return bottom_.size(); }
  std::size_t kl_memo_size() const;
  void save(const std::string& path) const;
  bool load(const std::string& path);

 private:
  struct PhatEntry {
    HalfLaurent value;
    int depth = 0;
  };
  const PhatEntry& phat_entry(const Alcove& a, const Alcove& b);
  HalfLaurent raw_at(const Alcove& a0, const Alcove& b0, int m);
  using Poly = std::vector<long long>;
  const Poly& rec(Alcove b, const Alcove& a);
  long long rec_mu(const Alcove& z, const Alcove& c, long long d);
  const Poly& bottom_value(const Alcove& b, const Alcove& bottom);
  void certify_bottom(const std::vector<Alcove>& targets);
  unsigned descents(const Alcove& a) const;
  std::string table_signature() const;
  bool in_column_window(const Alcove& c, const Alcove& b, double R) const;

  const RootDatum* datum_;
  PeriodicOptions opts_;
  AffineWeyl aff_;
  GenericOrder order_;
  std::unique_ptr<DominantKL> dominant_;
  std::unique_ptr<KLEngine> ordinary_;
  std::unordered_map<PairClass, PhatEntry, PairClassHash> phat_cache_;
  std::unordered_map<PairClass, Poly, PairClassHash> rec_memo_;
  // Column below the star bottom w0 A+, keyed by the offset bottom - b.
  std::unordered_map<std::uint64_t, Poly> bottom_;
  int bottom_depth_ = 0;
  Poly one_{1};
  Poly zero_{};
  // Columns of Q keyed by the finite part of the top alcove; entries hold offsets c - b.
  std::map<int, std::vector<std::pair<Alcove, HalfLaurent>>> q_columns_;
};

/// Engines shared by Cartan matrix, so equal Levi subdata reuse one cache.
class EngineRegistry {
 public:
  explicit EngineRegistry(PeriodicOptions opts = {}, std::string cache_dir = {})
      : opts_(opts), cache_dir_(std::move(cache_dir)) {}
  /// Engines created after this call are loaded from `dir` when a table exists there.
  void set_cache_dir(std::string dir) { cache_dir_ = std::move(dir); }
  const std::string& cache_dir() const { return cache_dir_; }
  PeriodicEngine& get(const RootDatum& datum);
  const PeriodicOptions& options() const { return opts_; }
  std::vector<PeriodicEngine*> engines();
  /// Table file of `datum` inside the cache directory.
  std::string cache_path(const RootDatum& datum) const;
  /// Writes every engine to the cache directory; no-op without one.
  void save_all() const;

 private:
  PeriodicOptions opts_;
  std::string cache_dir_;
  std::vector<std::unique_ptr<RootDatum>> data_;
  std::map<IntMatrix, std::unique_ptr<PeriodicEngine>> engines_;
};

struct InversionReport {
  std::size_t pairs_checked = 0;
  std::size_t failures = 0;
  std::vector<std::string> messages;
  bool ok() const { return failures == 0; }
};

/// Checks Sum_nu Q^{mu,nu}(-1)^{rd(nu,lambda')} P-hat_{nu,lambda'} = delta for all
/// pairs of alcoves in the orbit window box_window(lambda, p).
InversionReport inversion_check(PeriodicEngine& engine, const Weight& lambda, long long p);

}  // namespace loewy
