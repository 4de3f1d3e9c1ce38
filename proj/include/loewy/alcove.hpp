#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include "loewy/rootsys.hpp"

namespace loewy {

class NotRegular : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Element (w, nu) of W_p = W x| ZR acting on normalized points v = (lambda+rho)/p
/// by v -> w(v) + nu.  nu is given in simple-root coordinates.
struct AffElt {
  int w = 0;
  Weight nu;
  bool operator==(const AffElt&) const = default;
};

/// An alcove, stored through the image of the interior point rho/H of the base
/// alcove, scaled by H (H = Coxeter number).  The coordinates are integers in
/// fundamental-weight coordinates; unused coordinates are zero.
struct Alcove {
  std::array<long long, 3> u{0, 0, 0};
  bool operator==(const Alcove&) const = default;
  auto operator<=>(const Alcove&) const = default;
  std::uint64_t key() const {
    constexpr long long off = 1LL << 20;
    return (static_cast<std::uint64_t>(u[0] + off) << 42) |
           (static_cast<std::uint64_t>(u[1] + off) << 21) |
           static_cast<std::uint64_t>(u[2] + off);
  }
};

struct AlcoveHash {
  std::size_t operator()(const Alcove& a) const { return std::hash<std::uint64_t>{}(a.key()); }
};

struct WeightDecomp {
  Weight restricted;  // lambda^0
  Weight quotient;    // lambda^1
};

/// One affine reflection u -> u - (<u, beta^vee> - n H) beta on scaled points.
struct AffineReflection {
  int root = 0;
  long long n = 0;
};

/// Alcove geometry of the affine Weyl group attached to a root datum.
///
/// Generators: index 0 is the affine reflection of the first component,
/// 1..r are the finite simple reflections, r+1.. the affine reflections of
/// further components.
class AffineWeyl {
 public:
  explicit AffineWeyl(const RootDatum& datum);

  const RootDatum& datum() const { return *datum_; }
  int scale() const { return H_; }
  int rank() const { return datum_->rank(); }
  int num_generators() const { return static_cast<int>(gens_.size()); }
  const AffineReflection& generator(int g) const { return gens_[g]; }

  Alcove base() const;
  Alcove from_elt(const AffElt& x) const;
  AffElt to_elt(const Alcove& a) const;

  long long pair(const Alcove& a, int root) const;
  /// floor(<v, beta^vee>) for the normalized interior point v of the alcove.
  long long shi(const Alcove& a, int root) const;
  int length(const Alcove& a) const;

  Alcove reflect(const Alcove& a, const AffineReflection& t) const;
  Alcove left_mul(int gen, const Alcove& a) const { return reflect(a, gens_[gen]); }
  Alcove right_mul(const Alcove& a, int gen) const;
  bool left_descent(int gen, const Alcove& a) const;
  /// Smallest left descent, or -1 for the base alcove.
  int first_left_descent(const Alcove& a) const;
  Alcove translate(const Alcove& a, const Weight& nu_root_coords) const;

  std::vector<int> reduced_word(const Alcove& a) const;
  Alcove from_word(const std::vector<int>& word) const;
  std::string word_string(const Alcove& a) const;
  std::vector<int> parse_word(const std::string& text) const;

  /// Reflection of `a` in the hyperplane of `root` immediately above it.
  Alcove up_reflect(int root, const Alcove& a) const;
  /// Sum over positive roots of shi(b) - shi(a).
  long long signed_distance(const Alcove& a, const Alcove& b) const;

  /// Alcove containing (lambda + rho)/p.
  Alcove alcove_of(const Weight& lambda, long long p) const;
  /// The element of W_p . lambda lying in alcove b.
  Weight weight_in(const Alcove& b, const Weight& lambda, long long p) const;

  /// Finite part w of the element x with x A+ = a.
  int finite_part(const Alcove& a) const;
  bool dominant(const Alcove& a) const;

  AffElt compose(const AffElt& x, const AffElt& y) const;
  AffElt inverse(const AffElt& x) const;

 private:
  const RootDatum* datum_;
  int H_;
  std::vector<AffineReflection> gens_;
  std::vector<Weight> wrho_;
  std::vector<Weight> right_step_;  // w(s rho - rho) for generator s, indexed w * ngens + s
  std::array<std::array<long long, 3>, 3> adj_{};
  long long modulus_ = 1;
  std::vector<std::pair<std::uint64_t, int>> residue_to_w_;
  std::uint64_t residue(const Alcove& a) const;
  int finite_part_slow(const Alcove& a) const;
};

Weight dot_act(const RootDatum& datum, const AffElt& x, const Weight& lambda, long long p);
WeightDecomp decompose(const Weight& lambda, long long p);
Weight lambda_bracket(const RootDatum& datum, const Weight& lambda, int w, long long p);

/// floor(<lambda + rho, beta^vee> / p).
long long weight_shi(const RootDatum& datum, const Weight& lambda, int root, long long p);
bool is_regular(const RootDatum& datum, const Weight& lambda, long long p);
/// Signed count of separating hyperplanes from the alcove of mu to that of lambda,
/// restricted to the roots flagged in `roots` (all roots when empty).
long long rd(const RootDatum& datum, const Weight& mu, const Weight& lambda, long long p,
             const std::vector<int>& roots = {});

/// Orbit points mu of W_p . lambda (or W_{I,p} . lambda when `levi` is set) with
/// lambda - mu in the simple-root box [0, 2(p-1)rho].  Sorted lexicographically.
std::vector<Weight> box_window(const RootDatum& datum, const Weight& lambda, long long p,
                               const ParabolicDatum* levi = nullptr);

Weight weight_add(const Weight& a, const Weight& b);
Weight weight_sub(const Weight& a, const Weight& b);
Weight weight_scale(const Weight& a, long long c);

}  // namespace loewy
