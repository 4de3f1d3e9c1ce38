#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "loewy/alcove.hpp"
#include "loewy/rootsys.hpp"

/// Explicit graded modules over the restricted enveloping algebra u(g) for
/// g = sl2, sl3 over F_p, and their socle series.
namespace loewy::oracle {

class UnsupportedAlgebra : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class NotHighestWeight : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

enum class Algebra { sl2, sl3 };

/// Accepts sl2/A1 and sl3/A2.
Algebra algebra_from_label(std::string_view label);
int algebra_rank(Algebra g);

using Vec = std::vector<int>;
/// Column j lists the nonzero entries (row, value) of the image of basis vector j.
using SparseAction = std::vector<std::vector<std::pair<int, int>>>;
using Matrix = std::vector<std::vector<int>>;

struct FpModule {
  int p = 0;
  Algebra algebra = Algebra::sl2;
  std::vector<std::string> labels;
  std::vector<Weight> weights;
  std::vector<SparseAction> e;  // one per simple root
  std::vector<SparseAction> f;

  int dim() const { return static_cast<int>(weights.size()); }
  int rank() const { return algebra_rank(algebra); }
  Vec apply(const SparseAction& g, const Vec& v) const;
  Matrix dense(const SparseAction& g) const;
  /// Basis indices grouped by weight.
  std::map<Weight, std::vector<int>> weight_spaces() const;
  /// Human-readable descriptions of violated module axioms (empty when none).
  std::vector<std::string> axiom_violations() const;
};

/// Socle layers, layer 0 = socle; each maps highest weights to multiplicities.
using Layers = std::vector<std::map<Weight, int>>;

/// Basis of PBW monomials in the negative root vectors applied to a highest
/// weight vector of weight mu; generated by that vector, head L-hat(mu).
FpModule verma_module(Algebra g, const Weight& mu, int p);
/// tau-dual of verma_module, with socle L-hat(mu).
FpModule baby_verma(Algebra g, const Weight& mu, int p);
/// L-hat(mu) for the unique top weight mu of m (one-dimensional weight space).
FpModule simple_head(const FpModule& m);
FpModule simple_module(Algebra g, const Weight& mu, int p);
/// Dual space with generators acting through the Chevalley anti-involution.
FpModule tau_dual(const FpModule& m);
/// Realizes the module induced from the opposite parabolic of the Levi simple of
/// highest weight lambda; I holds 0-based simple-root indices.
FpModule induce_parabolic(Algebra g, const std::vector<int>& I, const Weight& lambda, int p);

/// Basis (reduced echelon rows) of the submodule generated by `gens`.
std::vector<Vec> generated_submodule(const FpModule& m, const std::vector<Vec>& gens);
FpModule quotient(const FpModule& m, const std::vector<Vec>& submodule_basis);

/// Dimension of the space of graded module maps L -> M for L simple.
int hom_space(const FpModule& L, const FpModule& M);
Layers socle_series(const FpModule& m);

}  // namespace loewy::oracle
