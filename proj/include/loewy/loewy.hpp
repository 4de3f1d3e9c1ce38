#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"
#include "loewy/alcove.hpp"
#include "loewy/periodic.hpp"

namespace loewy {

class InternalInconsistency : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class PredictionMismatch : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DimensionMismatch : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Loewy layers of the module induced from the Levi simple of highest weight
/// lambda.  Layer 0 is the socle.
struct LoewyTable {
  std::string label;
  std::vector<int> I;  // 0-based
  Weight lambda;
  long long p = 0;
  std::size_t window_size = 0;
  std::map<std::pair<int, Weight>, long long> entries;  // (j, mu) -> multiplicity
  std::map<Weight, std::string> alcove_words;

  int loewy_length() const;
  long long mult(int j, const Weight& mu) const;
  /// layers()[j] maps weights to multiplicities.
  std::vector<std::map<Weight, long long>> layers() const;
  /// Same table indexed from the head: radical layer j is socle layer LL-1-j.
  std::vector<std::map<Weight, long long>> radical_layers() const;

  nlohmann::json to_json() const;
  std::string to_csv() const;
  std::string to_text() const;
};

LoewyTable layer_table(EngineRegistry& engines, const RootDatum& datum, const std::vector<int>& I,
                       const Weight& lambda, long long p);

/// l(w^I) + 1.
int predicted_loewy_length(const RootDatum& datum, const std::vector<int>& I);
/// Returns the Loewy length, throwing PredictionMismatch when it differs from the prediction.
int checked_loewy_length(const LoewyTable& table, const RootDatum& datum);

/// Head of the induced module through the dual of the socle of the dual module.
Weight head_weight(const RootDatum& datum, const Weight& lambda, long long p, const std::vector<int>& I);
/// The alternative closed form w^I.lambda + p(lambda^1 - 2rho_P - w_I lambda^1 + w_0 kappa^1 - kappa^1)
/// with kappa = (-w_I).lambda (dot action).
Weight head_weight_closed_form(const RootDatum& datum, const Weight& lambda, long long p,
                               const std::vector<int>& I);

struct Placement {
  int w = 0;  // element of W^I
  std::vector<int> word;
  Weight weight;
  int layer = 0;
  long long found = 0;  // multiplicity in the table at (layer, weight)
};

/// (w.lambda)^0 + p (w^{-1}.(w.lambda)^1) at socle layer l(w), for w in W^I.
std::vector<Placement> wI_factor_placements(const RootDatum& datum, const Weight& lambda, long long p,
                                            const std::vector<int>& I);
/// Fills Placement::found from the table; throws PredictionMismatch on a missing factor.
std::vector<Placement> verify_placements(const LoewyTable& table, const RootDatum& datum);

/// Socle L(lambda) once, top layer the single head factor.
std::vector<std::string> socle_head_violations(const LoewyTable& table, const RootDatum& datum);
/// Layer index congruent to rd mod 2, in range, nonnegative multiplicities.
std::vector<std::string> parity_violations(const LoewyTable& table, const RootDatum& datum);
/// All of the above plus the Loewy length (empty when none).
std::vector<std::string> table_violations(const LoewyTable& table, const RootDatum& datum);

/// dim L-hat(mu) from the alternating sum of baby Verma characters weighted by P-hat(1),
/// evaluated weight by weight.
long long simple_dimension(EngineRegistry& engines, const RootDatum& datum, const Weight& mu, long long p);

struct DimensionReport {
  long long lhs = 0;  // sum over the table of mult * dim L-hat(mu)
  long long rhs = 0;  // p^{|R+ - R_I+|} dim of the Levi simple
  long long levi_dim = 0;
  std::map<Weight, long long> simple_dims;
  bool ok() const { return lhs == rhs; }
};

DimensionReport dimension_report(EngineRegistry& engines, const LoewyTable& table, const RootDatum& datum);
/// As dimension_report, throwing DimensionMismatch when the two sides differ.
DimensionReport dimension_check(EngineRegistry& engines, const LoewyTable& table, const RootDatum& datum);

/// The same table computed by explicit linear algebra over F_p (A1 and A2 only).
LoewyTable oracle_layer_table(const RootDatum& datum, const std::vector<int>& I, const Weight& lambda,
                              long long p);
/// Entries where the two tables disagree (empty when equal).
std::vector<std::string> table_differences(const LoewyTable& a, const LoewyTable& b);

}  // namespace loewy
