#include <algorithm>

#include "doctest.h"
#include "loewy/loewy.hpp"
#include "loewy/oracle.hpp"

using namespace loewy;

namespace {

std::vector<int> all_simple(const RootDatum& d) {
  std::vector<int> v(d.rank());
  for (int i = 0; i < d.rank(); ++i) v[i] = i;
  return v;
}

std::vector<Weight> regular_in_box(const RootDatum& d, long long p) {
  std::vector<Weight> out;
  for (long long a = 0; a < p; ++a)
    for (long long b = 0; b < (d.rank() > 1 ? p : 1); ++b) {
      Weight w = d.rank() == 1 ? Weight{a} : Weight{a, b};
      if (is_regular(d, w, p)) out.push_back(w);
    }
  return out;
}

}  // namespace

TEST_CASE("A1 baby Verma table") {
  RootDatum d = RootDatum::build("A1");
  EngineRegistry reg;
  const LoewyTable t = layer_table(reg, d, {}, {2}, 5);
  const std::map<std::pair<int, Weight>, long long> want = {{{0, {2}}, 1}, {{1, {-4}}, 1}};
  CHECK(t.entries == want);
  CHECK(t.loewy_length() == 2);
  CHECK(t.mult(1, {-4}) == 1);
  CHECK(t.mult(2, {-4}) == 0);
  CHECK(table_violations(t, d).empty());
}

TEST_CASE("I = all simple roots gives the simple module") {
  for (const auto& [label, p] : {std::pair<std::string, long long>{"A1", 5}, {"A2", 5}, {"B2", 5}, {"A2", 7}}) {
    RootDatum d = RootDatum::build(label);
    EngineRegistry reg;
    for (const Weight& lam : regular_in_box(d, p)) {
      const LoewyTable t = layer_table(reg, d, all_simple(d), lam, p);
      const std::map<std::pair<int, Weight>, long long> want = {{{0, lam}, 1}};
      CHECK(t.entries == want);
      CHECK(head_weight(d, lam, p, all_simple(d)) == lam);
    }
  }
}

TEST_CASE("singular weights are rejected") {
  RootDatum d = RootDatum::build("A2");
  EngineRegistry reg;
  CHECK_THROWS_AS(layer_table(reg, d, {}, {4, 0}, 5), NotRegular);
}

TEST_CASE("predicted Loewy lengths") {
  RootDatum a2 = RootDatum::build("A2");
  CHECK(predicted_loewy_length(a2, {}) == 4);
  CHECK(predicted_loewy_length(a2, {0}) == 3);
  CHECK(predicted_loewy_length(a2, {0, 1}) == 1);
  for (const std::string label : {"A1", "A2", "B2", "G2", "A3"}) {
    RootDatum d = RootDatum::build(label);
    CHECK(predicted_loewy_length(d, {}) == d.num_positive_roots() + 1);
    CHECK(predicted_loewy_length(d, all_simple(d)) == 1);
  }
}

TEST_CASE("Loewy length check") {
  RootDatum d = RootDatum::build("A2");
  EngineRegistry reg;
  LoewyTable t = layer_table(reg, d, {0}, {1, 1}, 5);
  CHECK(checked_loewy_length(t, d) == 3);
  t.entries.erase(std::prev(t.entries.end()));  // drop the top layer
  CHECK_THROWS_AS(checked_loewy_length(t, d), PredictionMismatch);
  CHECK_FALSE(table_violations(t, d).empty());
}

TEST_CASE("head weight") {
  RootDatum a1 = RootDatum::build("A1");
  CHECK(head_weight(a1, {2}, 5, {}) == Weight{-4});
  RootDatum a2 = RootDatum::build("A2");
  EngineRegistry reg;
  const LoewyTable t = layer_table(reg, a2, {0}, {1, 1}, 5);
  const auto top = t.layers().back();
  REQUIRE(top.size() == 1);
  CHECK(top.begin()->first == head_weight(a2, {1, 1}, 5, {0}));
  CHECK(top.begin()->second == 1);
}

TEST_CASE("both head forms agree") {
  for (const std::string label : {"A1", "A2", "B2", "G2"}) {
    RootDatum d = RootDatum::build(label);
    for (int mask = 0; mask < (1 << d.rank()); ++mask) {
      std::vector<int> I;
      for (int i = 0; i < d.rank(); ++i)
        if (mask >> i & 1) I.push_back(i);
      for (long long a = -8; a <= 8; a += 3)
        for (long long b = -7; b <= 7; b += 5) {
          const Weight lam = d.rank() == 1 ? Weight{a} : Weight{a, b};
          CHECK(head_weight(d, lam, 7, I) == head_weight_closed_form(d, lam, 7, I));
        }
    }
  }
}

TEST_CASE("placements of the W^I factors") {
  RootDatum a1 = RootDatum::build("A1");
  EngineRegistry reg;
  const LoewyTable t1 = layer_table(reg, a1, {}, {2}, 5);
  const auto p1 = verify_placements(t1, a1);
  REQUIRE(p1.size() == 2);
  CHECK(p1[0].weight == Weight{2});
  CHECK(p1[0].layer == 0);
  CHECK(p1[1].weight == Weight{-4});
  CHECK(p1[1].layer == 1);

  RootDatum a2 = RootDatum::build("A2");
  const LoewyTable t2 = layer_table(reg, a2, {0}, {1, 1}, 5);
  auto p2 = verify_placements(t2, a2);
  REQUIRE(p2.size() == 3);
  std::vector<int> layers;
  for (const auto& pl : p2) {
    layers.push_back(pl.layer);
    CHECK(pl.found >= 1);
  }
  std::sort(layers.begin(), layers.end());
  CHECK(layers == std::vector<int>{0, 1, 2});
  for (const auto& pl : p2)
    if (pl.w == a2.identity()) CHECK(pl.weight == Weight{1, 1});

  LoewyTable broken = t2;
  broken.entries.erase({p2[1].layer, p2[1].weight});
  CHECK_THROWS_AS(verify_placements(broken, a2), PredictionMismatch);
}

TEST_CASE("table invariants across types, subsets and alcoves") {
  for (const auto& [label, p] : {std::pair<std::string, long long>{"A1", 5}, {"A2", 5}, {"B2", 5}}) {
    RootDatum d = RootDatum::build(label);
    EngineRegistry reg;
    for (int mask = 0; mask < (1 << d.rank()); ++mask) {
      std::vector<int> I;
      for (int i = 0; i < d.rank(); ++i)
        if (mask >> i & 1) I.push_back(i);
      for (const Weight& lam : regular_in_box(d, p)) {
        CAPTURE(label);
        CAPTURE(format_weight(lam));
        const LoewyTable t = layer_table(reg, d, I, lam, p);
        CHECK(table_violations(t, d).empty());
        CHECK_NOTHROW(verify_placements(t, d));
        // rigidity: the radical series is the socle series read from the top
        auto rad = t.radical_layers();
        std::reverse(rad.begin(), rad.end());
        CHECK(rad == t.layers());
      }
    }
  }
}

TEST_CASE("I empty reproduces the inverse polynomials") {
  for (const auto& [label, lam, p] : {std::tuple<std::string, Weight, long long>{"A2", {0, 0}, 5},
                                      {"A2", {2, 0}, 5},
                                      {"B2", {0, 0}, 5}}) {
    RootDatum d = RootDatum::build(label);
    EngineRegistry reg;
    const LoewyTable t = layer_table(reg, d, {}, lam, p);
    PeriodicEngine& eng = reg.get(d);
    const AffineWeyl& aff = eng.affine();
    const Alcove top = aff.alcove_of(lam, p);
    for (const Weight& mu : box_window(d, lam, p)) {
      HalfLaurent from_table;
      const long long r = rd(d, mu, lam, p);
      for (int j = 0; j < t.loewy_length(); ++j)
        from_table.add_term(static_cast<int>(r - j), t.mult(j, mu));
      CHECK(from_table == eng.q(aff.alcove_of(mu, p), top));
    }
  }
}

TEST_CASE("dimension identity") {
  RootDatum a1 = RootDatum::build("A1");
  EngineRegistry reg;
  const LoewyTable t = layer_table(reg, a1, {}, {2}, 5);
  const DimensionReport rep = dimension_check(reg, t, a1);
  CHECK(rep.simple_dims.at({2}) == 3);
  CHECK(rep.simple_dims.at({-4}) == 2);
  CHECK(rep.lhs == 5);
  CHECK(rep.rhs == 5);
  CHECK(rep.levi_dim == 1);

  RootDatum a2 = RootDatum::build("A2");
  const LoewyTable full = layer_table(reg, a2, {0, 1}, {3, 3}, 5);
  const DimensionReport r2 = dimension_check(reg, full, a2);
  CHECK(r2.lhs == r2.rhs);
  CHECK(r2.rhs == r2.levi_dim);

  // <lambda, alpha_1^vee> = 1: the Levi simple has dimension 2
  const LoewyTable par = layer_table(reg, a2, {0}, {1, 1}, 5);
  const DimensionReport r3 = dimension_check(reg, par, a2);
  CHECK(r3.levi_dim == 2);
  CHECK(r3.rhs == 50);
  CHECK(r3.lhs == 50);
  CHECK(oracle::induce_parabolic(oracle::Algebra::sl3, {0}, {1, 1}, 5).dim() == 50);

  LoewyTable wrong = par;
  wrong.entries[{1, par.layers()[1].begin()->first}] += 1;
  CHECK_THROWS_AS(dimension_check(reg, wrong, a2), DimensionMismatch);
}

TEST_CASE("simple dimensions agree with the oracle") {
  RootDatum a2 = RootDatum::build("A2");
  EngineRegistry reg;
  for (const Weight& mu : box_window(a2, {1, 1}, 5))
    CHECK(simple_dimension(reg, a2, mu, 5) == oracle::simple_module(oracle::Algebra::sl3, mu, 5).dim());
  RootDatum a1 = RootDatum::build("A1");
  for (long long m = -12; m <= 12; ++m) {
    if (!is_regular(a1, {m}, 7)) continue;
    CHECK(simple_dimension(reg, a1, {m}, 7) == oracle::simple_module(oracle::Algebra::sl2, {m}, 7).dim());
  }
}

TEST_CASE("tables agree with the oracle") {
  RootDatum a2 = RootDatum::build("A2");
  EngineRegistry reg;
  for (const std::vector<int>& I : {std::vector<int>{}, {0}, {1}}) {
    const LoewyTable t = layer_table(reg, a2, I, {1, 1}, 5);
    const LoewyTable o = oracle_layer_table(a2, I, {1, 1}, 5);
    CHECK(table_differences(t, o).empty());
    CHECK(o.loewy_length() == predicted_loewy_length(a2, I));
  }
  LoewyTable t = layer_table(reg, a2, {}, {1, 1}, 5);
  LoewyTable o = t;
  o.entries[{0, {1, 1}}] = 2;
  CHECK(table_differences(t, o).size() == 1);
}

TEST_CASE("serialization") {
  RootDatum a1 = RootDatum::build("A1");
  EngineRegistry reg;
  const LoewyTable t = layer_table(reg, a1, {}, {2}, 5);
  const auto j = t.to_json();
  CHECK(j["type"] == "A1");
  CHECK(j["I"].empty());
  CHECK(j["p"] == 5);
  CHECK(j["lambda"] == nlohmann::json::array({2}));
  CHECK(j["loewy_length"] == 2);
  REQUIRE(j["layers"].size() == 2);
  CHECK(j["layers"][0]["j"] == 0);
  CHECK(j["layers"][0]["factors"][0]["weight"] == nlohmann::json::array({2}));
  CHECK(j["layers"][0]["factors"][0]["alcove_word"] == "e");
  CHECK(j["layers"][0]["factors"][0]["mult"] == 1);
  CHECK(j["layers"][1]["factors"][0]["weight"] == nlohmann::json::array({-4}));
  CHECK(j["layers"][1]["factors"][0]["alcove_word"] == "s1");
  CHECK(t.to_csv() == "j,weight,alcove_word,mult\n0,\"(2)\",e,1\n1,\"(-4)\",s1,1\n");
  CHECK(t.to_text() == "A1 I={} lambda=(2) p=5 loewy_length=2\n  j=0: (2)[e]\n  j=1: (-4)[s1]\n");
  RootDatum a2 = RootDatum::build("A2");
  const auto j2 = layer_table(reg, a2, {1}, {1, 1}, 5).to_json();
  CHECK(j2["I"] == nlohmann::json::array({2}));
}
