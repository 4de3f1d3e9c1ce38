#include "loewy/loewy.hpp"

#include "loewy/oracle.hpp"

#include <algorithm>
#include <optional>
#include <set>
#include <sstream>

namespace loewy {

namespace {

Weight dot(const RootDatum& d, int w, const Weight& lambda) {
  return weight_sub(d.act(w, weight_add(lambda, d.rho())), d.rho());
}

Weight levi_coords(const ParabolicDatum& par, const Weight& w) {
  Weight c;
  for (int i : par.subset()) c.push_back(w[i]);
  return c;
}

long long ipow(long long b, int e) {
  long long r = 1;
  while (e-- > 0) r = checked_mul(r, b);
  return r;
}

// Weights sum_beta a_beta beta, 0 <= a_beta < p, with multiplicities.
std::map<Weight, long long> restricted_partitions(const RootDatum& d, long long p) {
  std::map<Weight, long long> cur{{Weight(d.rank(), 0), 1}};
  for (const PositiveRoot& r : d.positive_roots()) {
    std::map<Weight, long long> next;
    for (const auto& [w, c] : cur)
      for (long long a = 0; a < p; ++a) next[weight_add(w, weight_scale(r.weight, a))] += c;
    cur = std::move(next);
  }
  return cur;
}

}  // namespace

int LoewyTable::loewy_length() const {
  int top = -1;
  for (const auto& [key, m] : entries)
    if (m != 0) top = std::max(top, key.first);
  return top + 1;
}

long long LoewyTable::mult(int j, const Weight& mu) const {
  auto it = entries.find({j, mu});
  return it == entries.end() ? 0 : it->second;
}

std::vector<std::map<Weight, long long>> LoewyTable::layers() const {
  std::vector<std::map<Weight, long long>> out(loewy_length());
  for (const auto& [key, m] : entries)
    if (m != 0) out[key.first][key.second] = m;
  return out;
}

std::vector<std::map<Weight, long long>> LoewyTable::radical_layers() const {
  auto out = layers();
  std::reverse(out.begin(), out.end());
  return out;
}

nlohmann::json LoewyTable::to_json() const {
  nlohmann::json j;
  j["type"] = label;
  std::vector<int> one_based;
  for (int i : I) one_based.push_back(i + 1);
  j["I"] = one_based;
  j["p"] = p;
  j["lambda"] = lambda;
  j["loewy_length"] = loewy_length();
  nlohmann::json layers_json = nlohmann::json::array();
  const auto ls = layers();
  for (std::size_t k = 0; k < ls.size(); ++k) {
    nlohmann::json factors = nlohmann::json::array();
    for (const auto& [w, m] : ls[k]) {
      auto it = alcove_words.find(w);
      factors.push_back({{"weight", w}, {"alcove_word", it == alcove_words.end() ? "" : it->second}, {"mult", m}});
    }
    layers_json.push_back({{"j", k}, {"factors", factors}});
  }
  j["layers"] = layers_json;
  return j;
}

std::string LoewyTable::to_csv() const {
  std::ostringstream os;
  os << "j,weight,alcove_word,mult\n";
  const auto ls = layers();
  for (std::size_t k = 0; k < ls.size(); ++k)
    for (const auto& [w, m] : ls[k]) {
      auto it = alcove_words.find(w);
      os << k << ",\"" << format_weight(w) << "\"," << (it == alcove_words.end() ? "" : it->second) << ',' << m
         << '\n';
    }
  return os.str();
}

std::string LoewyTable::to_text() const {
  std::ostringstream os;
  os << label << " I={" << format_subset(I) << "} lambda=" << format_weight(lambda) << " p=" << p
     << " loewy_length=" << loewy_length() << '\n';
  const auto ls = layers();
  for (std::size_t k = 0; k < ls.size(); ++k) {
    os << "  j=" << k << ':';
    for (const auto& [w, m] : ls[k]) {
      os << ' ' << format_weight(w);
      auto it = alcove_words.find(w);
      if (it != alcove_words.end()) os << '[' << it->second << ']';
      if (m != 1) os << "x" << m;
    }
    os << '\n';
  }
  return os.str();
}

LoewyTable layer_table(EngineRegistry& engines, const RootDatum& datum, const std::vector<int>& I,
                       const Weight& lambda, long long p) {
  if (!is_regular(datum, lambda, p))
    throw NotRegular("weight " + format_weight(lambda) + " is p-singular");
  ParabolicDatum par(datum, I);
  LoewyTable t;
  t.label = datum.label();
  t.I = par.subset();
  t.lambda = lambda;
  t.p = p;
  PeriodicEngine& eng = engines.get(datum);
  const AffineWeyl& aff = eng.affine();
  const int top = datum.weyl(par.w_upper()).length;

  // (-1)^{rd_I(nu, lambda)} P-hat^I_{nu, lambda} over the Levi orbit.
  std::vector<std::pair<Alcove, HalfLaurent>> nus;
  if (t.I.empty()) {
    nus.emplace_back(aff.alcove_of(lambda, p), HalfLaurent::constant(1));
  } else {
    const RootDatum levi = *par.levi_datum();
    PeriodicEngine& le = engines.get(levi);
    const Alcove top_alcove = le.affine().alcove_of(levi_coords(par, lambda), p);
    for (const Weight& nu : box_window(datum, lambda, p, &par)) {
      HalfLaurent ph = le.phat(le.affine().alcove_of(levi_coords(par, nu), p), top_alcove);
      if (ph.is_zero()) continue;
      const long long r = rd(datum, nu, lambda, p, par.levi_roots());
      nus.emplace_back(aff.alcove_of(nu, p), r % 2 == 0 ? ph : -ph);
    }
  }

  const std::vector<Weight> window = box_window(datum, lambda, p);
  t.window_size = window.size();
  for (const Weight& mu : window) {
    const Alcove a = aff.alcove_of(mu, p);
    HalfLaurent rhs;
    for (const auto& [b, s] : nus) {
      HalfLaurent qv = eng.q(a, b);
      if (!qv.is_zero()) rhs += qv * s;
    }
    if (rhs.is_zero()) continue;
    const long long r = rd(datum, mu, lambda, p);
    for (const auto& [k, c] : rhs.terms()) {
      const long long j = r - k;
      if (c < 0 || j < 0 || j > top)
        throw InternalInconsistency("coefficient " + std::to_string(c) + " at layer " + std::to_string(j) +
                                    " for weight " + format_weight(mu));
      t.entries[{static_cast<int>(j), mu}] = c;
    }
    t.alcove_words[mu] = aff.word_string(a);
  }
  return t;
}

int predicted_loewy_length(const RootDatum& datum, const std::vector<int>& I) {
  ParabolicDatum par(datum, I);
  return datum.weyl(par.w_upper()).length + 1;
}

int checked_loewy_length(const LoewyTable& table, const RootDatum& datum) {
  const int ll = table.loewy_length();
  const int want = predicted_loewy_length(datum, table.I);
  if (ll != want)
    throw PredictionMismatch("Loewy length " + std::to_string(ll) + ", predicted " + std::to_string(want));
  return ll;
}

Weight head_weight(const RootDatum& datum, const Weight& lambda, long long p, const std::vector<int>& I) {
  ParabolicDatum par(datum, I);
  const WeightDecomp l = decompose(lambda, p);
  Weight nu = weight_scale(datum.act(par.w_I(), l.restricted), -1);
  nu = weight_sub(nu, weight_scale(l.quotient, p));
  nu = weight_add(nu, weight_scale(par.two_rho_P(), p - 1));
  // L-hat(nu)^* = L-hat(-w0 nu^0 - p nu^1)
  const WeightDecomp n = decompose(nu, p);
  return weight_sub(weight_scale(datum.act(datum.longest(), n.restricted), -1), weight_scale(n.quotient, p));
}

Weight head_weight_closed_form(const RootDatum& datum, const Weight& lambda, long long p,
                               const std::vector<int>& I) {
  ParabolicDatum par(datum, I);
  const WeightDecomp l = decompose(lambda, p);
  const Weight kappa = weight_sub(weight_scale(datum.act(par.w_I(), weight_add(lambda, datum.rho())), -1),
                                  datum.rho());
  const Weight k1 = decompose(kappa, p).quotient;
  Weight x = weight_sub(l.quotient, par.two_rho_P());
  x = weight_sub(x, datum.act(par.w_I(), l.quotient));
  x = weight_add(x, weight_sub(datum.act(datum.longest(), k1), k1));
  return weight_add(dot(datum, par.w_upper(), lambda), weight_scale(x, p));
}

std::vector<Placement> wI_factor_placements(const RootDatum& datum, const Weight& lambda, long long p,
                                            const std::vector<int>& I) {
  if (!is_regular(datum, lambda, p))
    throw NotRegular("weight " + format_weight(lambda) + " is p-singular");
  ParabolicDatum par(datum, I);
  std::vector<Placement> out;
  for (int w : par.min_coset_reps()) {
    const WeightDecomp d = decompose(dot(datum, w, lambda), p);
    Placement pl;
    pl.w = w;
    pl.word = datum.weyl(w).word;
    pl.weight = weight_add(d.restricted, weight_scale(dot(datum, datum.weyl_inverse(w), d.quotient), p));
    pl.layer = datum.weyl(w).length;
    out.push_back(std::move(pl));
  }
  return out;
}

std::vector<Placement> verify_placements(const LoewyTable& table, const RootDatum& datum) {
  std::vector<Placement> out = wI_factor_placements(datum, table.lambda, table.p, table.I);
  for (Placement& pl : out) {
    pl.found = table.mult(pl.layer, pl.weight);
    if (pl.found < 1)
      throw PredictionMismatch("factor " + format_weight(pl.weight) + " missing from layer " +
                               std::to_string(pl.layer));
  }
  return out;
}

std::vector<std::string> socle_head_violations(const LoewyTable& table, const RootDatum& datum) {
  std::vector<std::string> bad;
  const auto ls = table.layers();
  if (ls.empty() || ls[0].size() != 1 || table.mult(0, table.lambda) != 1)
    bad.push_back("socle is not L(lambda) with multiplicity one");
  const Weight head = head_weight(datum, table.lambda, table.p, table.I);
  if (ls.empty() || ls.back().size() != 1 || ls.back().begin()->first != head || ls.back().begin()->second != 1)
    bad.push_back("top layer is not the single factor " + format_weight(head));
  return bad;
}

std::vector<std::string> parity_violations(const LoewyTable& table, const RootDatum& datum) {
  std::vector<std::string> bad;
  const int top = datum.weyl(ParabolicDatum(datum, table.I).w_upper()).length;
  for (const auto& [key, m] : table.entries) {
    const long long r = rd(datum, key.second, table.lambda, table.p);
    if ((r - key.first) % 2 != 0)
      bad.push_back("layer parity differs from rd at " + format_weight(key.second));
    if (key.first < 0 || key.first > top) bad.push_back("layer index out of range at " + format_weight(key.second));
    if (m < 0) bad.push_back("negative multiplicity at " + format_weight(key.second));
  }
  return bad;
}

std::vector<std::string> table_violations(const LoewyTable& table, const RootDatum& datum) {
  std::vector<std::string> bad = socle_head_violations(table, datum);
  for (auto& v : parity_violations(table, datum)) bad.push_back(std::move(v));
  const int top = datum.weyl(ParabolicDatum(datum, table.I).w_upper()).length;
  if (table.loewy_length() != top + 1)
    bad.push_back("Loewy length " + std::to_string(table.loewy_length()) + " differs from " +
                  std::to_string(top + 1));
  return bad;
}

long long simple_dimension(EngineRegistry& engines, const RootDatum& datum, const Weight& mu, long long p) {
  PeriodicEngine& eng = engines.get(datum);
  const AffineWeyl& aff = eng.affine();
  const std::map<Weight, long long> kp = restricted_partitions(datum, p);
  // Weights of L-hat(mu) lie among those of the baby Verma module of highest weight mu.
  std::set<Weight> support;
  for (const auto& [z, c] : kp) support.insert(weight_sub(mu, z));
  const Alcove top = aff.alcove_of(mu, p);
  long long total = 0;
  for (const Weight& nu : box_window(datum, mu, p)) {
    const HalfLaurent ph = eng.phat(aff.alcove_of(nu, p), top);
    if (ph.is_zero()) continue;
    long long count = 0;
    for (const auto& [z, c] : kp)
      if (support.count(weight_sub(nu, z))) count += c;
    const long long term = checked_mul(ph.eval_at_one(), count);
    total += rd(datum, nu, mu, p) % 2 == 0 ? term : -term;
  }
  return total;
}

DimensionReport dimension_report(EngineRegistry& engines, const LoewyTable& table, const RootDatum& datum) {
  DimensionReport rep;
  ParabolicDatum par(datum, table.I);
  for (const auto& [key, m] : table.entries) {
    auto it = rep.simple_dims.find(key.second);
    if (it == rep.simple_dims.end())
      it = rep.simple_dims.emplace(key.second, simple_dimension(engines, datum, key.second, table.p)).first;
    rep.lhs += m * it->second;
  }
  if (table.I.empty()) {
    rep.levi_dim = 1;
  } else {
    const RootDatum levi = *par.levi_datum();
    rep.levi_dim = simple_dimension(engines, levi, levi_coords(par, table.lambda), table.p);
  }
  const int outside = datum.num_positive_roots() - static_cast<int>(par.levi_roots().size());
  rep.rhs = checked_mul(ipow(table.p, outside), rep.levi_dim);
  return rep;
}

DimensionReport dimension_check(EngineRegistry& engines, const LoewyTable& table, const RootDatum& datum) {
  DimensionReport rep = dimension_report(engines, table, datum);
  if (!rep.ok())
    throw DimensionMismatch("dimension sum " + std::to_string(rep.lhs) + " differs from " +
                            std::to_string(rep.rhs));
  return rep;
}

LoewyTable oracle_layer_table(const RootDatum& datum, const std::vector<int>& I, const Weight& lambda,
                              long long p) {
  const oracle::Algebra g = oracle::algebra_from_label(datum.label());
  ParabolicDatum par(datum, I);
  LoewyTable t;
  t.label = datum.label();
  t.I = par.subset();
  t.lambda = lambda;
  t.p = p;
  const oracle::Layers ls = oracle::socle_series(oracle::induce_parabolic(g, t.I, lambda, static_cast<int>(p)));
  AffineWeyl aff(datum);
  for (std::size_t j = 0; j < ls.size(); ++j)
    for (const auto& [w, m] : ls[j]) {
      t.entries[{static_cast<int>(j), w}] = m;
      if (is_regular(datum, w, p)) t.alcove_words[w] = aff.word_string(aff.alcove_of(w, p));
    }
  return t;
}

std::vector<std::string> table_differences(const LoewyTable& a, const LoewyTable& b) {
  std::vector<std::string> out;
  std::set<std::pair<int, Weight>> keys;
  for (const auto& [k, m] : a.entries) keys.insert(k);
  for (const auto& [k, m] : b.entries) keys.insert(k);
  for (const auto& k : keys) {
    const long long x = a.mult(k.first, k.second), y = b.mult(k.first, k.second);
    if (x != y)
      out.push_back("layer " + std::to_string(k.first) + " weight " + format_weight(k.second) + ": " +
                    std::to_string(x) + " vs " + std::to_string(y));
  }
  return out;
}

}  // namespace loewy
