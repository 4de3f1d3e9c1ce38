#include <filesystem>
#include <random>

#include "doctest.h"
#include "loewy/periodic.hpp"

using namespace loewy;

namespace {

std::vector<Alcove> window_alcoves(const AffineWeyl& aff, const Weight& lam, long long p) {
  std::vector<Alcove> out;
  for (const Weight& w : box_window(aff.datum(), lam, p)) out.push_back(aff.alcove_of(w, p));
  return out;
}

Weight translation(const RootDatum& d, long long k) { return weight_scale(d.two_rho_root_coords(), k); }

std::filesystem::path fresh_dir(const std::string& name) {
  const auto dir = std::filesystem::temp_directory_path() / name;
  std::filesystem::remove_all(dir);
  return dir;
}

}  // namespace

TEST_CASE("affine A1: P-hat is 1 on the chain, Q has two nonzero entries per column") {
  RootDatum d = RootDatum::build("A1");
  PeriodicEngine eng(d);
  const AffineWeyl& aff = eng.affine();
  // walk both ways along the chain from the base alcove
  std::vector<Alcove> alcoves;
  for (int first : {0, 1}) {
    Alcove cur = aff.base();
    for (int k = 0; k < 6; ++k) {
      cur = aff.right_mul(cur, (first + k) % 2);
      alcoves.push_back(cur);
    }
  }
  alcoves.push_back(aff.base());
  for (const Alcove& a : alcoves)
    for (const Alcove& b : alcoves) {
      const long long dist = aff.signed_distance(a, b);
      CHECK(eng.phat(a, b) == (dist >= 0 ? HalfLaurent::constant(1) : HalfLaurent{}));
      CHECK(eng.q(a, b) == (dist == 0 || dist == 1 ? HalfLaurent::constant(1) : HalfLaurent{}));
    }
}

TEST_CASE("diagonal and support") {
  for (const std::string label : {"A2", "B2"}) {
    RootDatum d = RootDatum::build(label);
    PeriodicEngine eng(d);
    const AffineWeyl& aff = eng.affine();
    const auto alcoves = window_alcoves(aff, Weight(2, 0), 5);
    for (const Alcove& a : alcoves) {
      CHECK(eng.phat(a, a) == HalfLaurent::constant(1));
      CHECK(eng.q(a, a) == HalfLaurent::constant(1));
      for (const Alcove& b : alcoves)
        if (!eng.order().leq(a, b)) {
          CHECK(eng.phat(a, b).is_zero());
          CHECK(eng.q(a, b).is_zero());
        }
    }
  }
}

TEST_CASE("positivity and integral powers") {
  for (const std::string label : {"A2", "B2"}) {
    RootDatum d = RootDatum::build(label);
    PeriodicEngine eng(d);
    const auto alcoves = window_alcoves(eng.affine(), Weight(2, 0), 5);
    for (const Alcove& a : alcoves)
      for (const Alcove& b : alcoves) {
        const HalfLaurent ph = eng.phat(a, b), q = eng.q(a, b);
        CHECK(ph.nonnegative());
        CHECK(ph.integral_powers());
        CHECK(q.nonnegative());
        CHECK(q.integral_powers());
      }
  }
}

TEST_CASE("translation invariance") {
  for (const std::string label : {"A2", "B2"}) {
    RootDatum d = RootDatum::build(label);
    PeriodicEngine eng(d);
    const AffineWeyl& aff = eng.affine();
    const auto alcoves = window_alcoves(aff, Weight(2, 0), 5);
    const Weight nu = translation(d, 1);
    const Weight alpha1 = d.rank() == 2 ? Weight{1, 0} : Weight{1};
    for (const Alcove& a : alcoves)
      for (const Alcove& b : alcoves) {
        CHECK(eng.phat(aff.translate(a, nu), aff.translate(b, nu)) == eng.phat(a, b));
        CHECK(eng.q(aff.translate(a, nu), aff.translate(b, nu)) == eng.q(a, b));
        CHECK(eng.q(aff.translate(a, alpha1), aff.translate(b, alpha1)) == eng.q(a, b));
      }
  }
}

TEST_CASE("star recursion agrees with direct stabilization") {
  for (const std::string label : {"A2", "B2"}) {
    RootDatum d = RootDatum::build(label);
    PeriodicEngine eng(d);
    const auto alcoves = window_alcoves(eng.affine(), Weight(2, 0), 5);
    int compared = 0;
    for (const Alcove& a : alcoves)
      for (const Alcove& b : alcoves) {
        if (!eng.order().leq(a, b)) continue;
        CHECK(eng.phat_recursive(a, b) == eng.phat_stabilized(a, b));
        ++compared;
      }
    CHECK(compared > 50);
  }
}

TEST_CASE("stabilized values are reached and stay fixed") {
  RootDatum d = RootDatum::build("A2");
  PeriodicEngine eng(d);
  const auto alcoves = window_alcoves(eng.affine(), {1, 1}, 5);
  for (const Alcove& a : alcoves)
    for (const Alcove& b : alcoves) {
      if (a == b || !eng.order().leq(a, b)) continue;
      const HalfLaurent v = eng.phat_stabilized(a, b);
      const int m = eng.phat_depth(a, b);
      CHECK(eng.phat_at_depth(a, b, m) == v);
      CHECK(eng.phat_at_depth(a, b, m + 1) == v);
      CHECK(eng.phat_at_depth(a, b, m + 2) == v);
    }
}

TEST_CASE("a non-constant periodic polynomial") {
  RootDatum d = RootDatum::build("A2");
  PeriodicEngine eng(d);
  const AffineWeyl& aff = eng.affine();
  bool found = false;
  for (const Alcove& a : window_alcoves(aff, {0, 0}, 5))
    for (const Alcove& b : window_alcoves(aff, {0, 0}, 5)) {
      const HalfLaurent v = eng.phat(a, b);
      if (!v.is_zero() && v.max_exponent() >= 2) found = true;
    }
  CHECK(found);
}

TEST_CASE("inversion identity") {
  for (const auto& [label, lam, p] : {std::tuple<std::string, Weight, long long>{"A1", {2}, 11},
                                      {"A1", {0}, 7},
                                      {"A2", {0, 0}, 5},
                                      {"A2", {1, 1}, 5}}) {
    RootDatum d = RootDatum::build(label);
    PeriodicEngine eng(d);
    const InversionReport rep = inversion_check(eng, lam, p);
    CAPTURE(label);
    CHECK(rep.ok());
    CHECK(rep.pairs_checked == box_window(d, lam, p).size() * box_window(d, lam, p).size());
  }
}

TEST_CASE("Levi reduction: the A2, I={1} engine is the affine A1 engine") {
  RootDatum d = RootDatum::build("A2");
  ParabolicDatum par(d, {0});
  const RootDatum levi = *par.levi_datum();
  CHECK(levi.label() == "A1");
  CHECK(!ParabolicDatum(d, {}).levi_datum().has_value());
  EngineRegistry reg;
  PeriodicEngine& le = reg.get(levi);
  CHECK(&le == &reg.get(RootDatum::build("A1")));
  const auto alcoves = window_alcoves(le.affine(), {1}, 5);
  for (const Alcove& a : alcoves)
    for (const Alcove& b : alcoves)
      if (le.order().leq(a, b)) CHECK(le.phat(a, b) == HalfLaurent::constant(1));
}

TEST_CASE("stabilization failure is reported") {
  RootDatum d = RootDatum::build("G2");
  PeriodicOptions opts;
  opts.max_extra_depth = 0;
  PeriodicEngine eng(d, opts);
  const Alcove b = eng.affine().alcove_of({0, 0}, 7);
  CHECK_THROWS_AS(eng.q_column(b), StabilizationFailed);
}

TEST_CASE("table save and load reproduce every value") {
  RootDatum d = RootDatum::build("B2");
  const auto dir = fresh_dir("loewy_periodic_cache_test");
  std::vector<std::pair<std::pair<Alcove, Alcove>, std::pair<HalfLaurent, HalfLaurent>>> vals;
  {
    EngineRegistry reg({}, dir.string());
    PeriodicEngine& eng = reg.get(d);
    const auto alcoves = window_alcoves(eng.affine(), {0, 0}, 5);
    for (const Alcove& a : alcoves)
      for (const Alcove& b : alcoves) vals.push_back({{a, b}, {eng.phat(a, b), eng.q(a, b)}});
    reg.save_all();
    CHECK(std::filesystem::exists(reg.cache_path(d)));
  }
  EngineRegistry warm({}, dir.string());
  PeriodicEngine& eng = warm.get(d);
  CHECK(eng.bottom_size() > 0);
  for (const auto& [ab, v] : vals) {
    CHECK(eng.q(ab.first, ab.second) == v.second);
    CHECK(eng.phat(ab.first, ab.second) == v.first);
  }
  // a table of another datum is not accepted
  const RootDatum a2 = RootDatum::build("A2");
  PeriodicEngine other(a2);
  CHECK_FALSE(other.load(warm.cache_path(d)));
  std::filesystem::remove_all(dir);
}

TEST_CASE("registry shares engines by Cartan matrix") {
  EngineRegistry reg;
  RootDatum b2 = RootDatum::build("B2");
  PeriodicEngine& e1 = reg.get(b2);
  PeriodicEngine& e2 = reg.get(RootDatum::build("B2"));
  CHECK(&e1 == &e2);
  CHECK(reg.engines().size() == 1);
  reg.get(RootDatum::build("A2"));
  CHECK(reg.engines().size() == 2);
  reg.save_all();  // no cache directory: nothing happens
}
