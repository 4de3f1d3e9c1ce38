#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace loewy {

/// Integer vector in fundamental-weight coordinates: entry i is <lambda, alpha_i^vee>.
using Weight = std::vector<long long>;
using IntMatrix = std::vector<std::vector<long long>>;

class UnsupportedType : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct PositiveRoot {
  Weight weight;         // <beta, alpha_i^vee>
  Weight root_coords;    // beta = sum c_i alpha_i
  Weight coroot_coords;  // beta^vee = sum c_i alpha_i^vee
  int height = 0;
  int coroot_height = 0;
};

struct WeylElement {
  std::vector<int> word;  // lexicographically smallest reduced word, 0-based generators
  IntMatrix action;       // acts on fundamental-weight coordinates
  int length = 0;
};

/// Cartan data of a reduced root system of rank <= 3 together with the
/// fully enumerated finite Weyl group.
///
/// Conventions: cartan()[i][j] = <alpha_j, alpha_i^vee>, so the simple root
/// alpha_j in weight coordinates is column j.  rho has all coordinates 1.
class RootDatum {
 public:
  /// One of A1, A1xA1, A2, B2, G2, A3.
  static RootDatum build(std::string_view label);
  static RootDatum from_cartan(std::string label, IntMatrix cartan);

  const std::string& label() const { return label_; }
  int rank() const { return static_cast<int>(cartan_.size()); }
  const IntMatrix& cartan() const { return cartan_; }

  const std::vector<PositiveRoot>& positive_roots() const { return roots_; }
  int num_positive_roots() const { return static_cast<int>(roots_.size()); }
  int simple_root_index(int i) const { return simple_index_[i]; }
  Weight simple_root(int i) const;

  /// <lambda, beta^vee> for the positive root with index `root`.
  long long pair(const Weight& lambda, int root) const;
  static long long pair_coroot(const Weight& lambda, const Weight& coroot_coords);

  Weight rho() const { return Weight(rank(), 1); }
  Weight two_rho_root_coords() const;

  // Finite Weyl group.
  int weyl_order() const { return static_cast<int>(weyl_.size()); }
  const WeylElement& weyl(int w) const { return weyl_[w]; }
  int identity() const { return 0; }
  int longest() const { return longest_; }
  int weyl_mul(int a, int b) const { return mul_[a][b]; }
  int weyl_inverse(int w) const { return inv_[w]; }
  int simple_reflection(int i) const { return simple_refl_[i]; }
  Weight act(int w, const Weight& lambda) const;
  /// Index of the positive root w(beta) up to sign; sign returned through `negative`.
  int act_on_root(int w, int root, bool& negative) const;
  int reflection_of(int root) const { return root_refl_[root]; }

  /// Connected components of the Dynkin diagram (sorted simple indices).
  const std::vector<std::vector<int>>& components() const { return components_; }
  /// Highest short root of each component (index into positive_roots()).
  const std::vector<int>& highest_short_roots() const { return highest_short_; }
  /// Coxeter number; for reducible data the maximum over components.
  int coxeter_number() const { return coxeter_; }

  std::optional<Weight> to_root_coords(const Weight& lambda) const;
  Weight from_root_coords(const Weight& coords) const;
  /// Root-coordinate vector scaled by det(cartan); always integral.
  Weight to_root_coords_scaled(const Weight& lambda) const;
  long long cartan_det() const { return det_; }

  bool is_dominant(const Weight& lambda) const;
  int find_weyl(const IntMatrix& action) const;

 private:
  RootDatum() = default;
  void enumerate_roots();
  void enumerate_weyl();
  void find_components();

  std::string label_;
  IntMatrix cartan_;
  IntMatrix adj_;  // adjugate of cartan_
  long long det_ = 1;
  std::vector<PositiveRoot> roots_;
  std::vector<int> simple_index_;
  std::vector<WeylElement> weyl_;
  std::vector<std::vector<int>> mul_;
  std::vector<int> inv_;
  std::vector<int> simple_refl_;
  std::vector<int> root_refl_;
  std::vector<std::vector<int>> root_action_;  // signed root index + 1
  int longest_ = 0;
  std::vector<std::vector<int>> components_;
  std::vector<int> highest_short_;
  int coxeter_ = 0;
};

/// Parabolic subdata for a subset I of the simple roots (0-based indices).
class ParabolicDatum {
 public:
  ParabolicDatum(const RootDatum& datum, std::vector<int> subset);

  const RootDatum& datum() const { return *datum_; }
  const std::vector<int>& subset() const { return subset_; }
  bool contains(int i) const;

  const std::vector<int>& levi_roots() const { return levi_roots_; }
  const std::vector<int>& levi_weyl() const { return levi_weyl_; }
  int w_I() const { return w_I_; }
  /// w^I = w_0 w_I.
  int w_upper() const { return w_upper_; }
  const std::vector<int>& min_coset_reps() const { return min_reps_; }
  const Weight& two_rho_I() const { return two_rho_I_; }
  const Weight& two_rho_P() const { return two_rho_P_; }
  bool is_levi_root(int root) const;

  /// The root subsystem R_I as a datum of rank |I|; nullopt for I empty.
  std::optional<RootDatum> levi_datum() const;

 private:
  const RootDatum* datum_;
  std::vector<int> subset_;
  std::vector<int> levi_roots_;
  std::vector<int> levi_weyl_;
  std::vector<char> levi_flag_;
  int w_I_ = 0;
  int w_upper_ = 0;
  std::vector<int> min_reps_;
  Weight two_rho_I_;
  Weight two_rho_P_;
};

std::string format_weight(const Weight& w);
std::string format_subset(const std::vector<int>& subset);  // 1-based, comma separated

}  // namespace loewy
