#include "loewy/periodic.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace loewy {

namespace {

Alcove diff_point(const Alcove& b, const Alcove& a) {
  Alcove d;
  for (int i = 0; i < 3; ++i) d.u[i] = b.u[i] - a.u[i];
  return d;
}

Alcove add_point(const Alcove& a, const Alcove& d) {
  Alcove r;
  for (int i = 0; i < 3; ++i) r.u[i] = a.u[i] + d.u[i];
  return r;
}

Alcove decode_key(std::uint64_t key) {
  constexpr long long off = 1LL << 20;
  constexpr std::uint64_t mask = (1ULL << 21) - 1;
  Alcove d;
  d.u[0] = static_cast<long long>((key >> 42) & mask) - off;
  d.u[1] = static_cast<long long>((key >> 21) & mask) - off;
  d.u[2] = static_cast<long long>(key & mask) - off;
  return d;
}

Weight point_weight(const Alcove& a, int rank) { return Weight(a.u.begin(), a.u.begin() + rank); }

constexpr const char* kTableHeader = "loewy-periodic-table v1";

}  // namespace

// ---------------------------------------------------------------------------
// Generic order

GenericOrder::GenericOrder(const AffineWeyl& aff) : aff_(&aff) {
  classes_.resize(aff.datum().weyl_order());
  down_classes_.resize(aff.datum().weyl_order());
}

Weight GenericOrder::offset_root_coords(const Alcove& a, const Alcove& b) const {
  const RootDatum& d = aff_->datum();
  Weight sc = d.to_root_coords_scaled(point_weight(diff_point(b, a), d.rank()));
  const long long den = d.cartan_det() * aff_->scale();
  for (auto& v : sc) v = v >= 0 ? (v + den - 1) / den : -((-v) / den);
  return sc;
}

bool GenericOrder::within(const Alcove& a, const Alcove& c, const Weight& bound) const {
  const RootDatum& d = aff_->datum();
  Weight sc = d.to_root_coords_scaled(point_weight(diff_point(c, a), d.rank()));
  const long long den = d.cartan_det() * aff_->scale();
  for (int i = 0; i < d.rank(); ++i)
    if (sc[i] < 0 || sc[i] > bound[i] * den) return false;
  return true;
}

const GenericOrder::UpSet& GenericOrder::up_set_class(int w, const Weight& bound) {
  auto& slot = classes_[w];
  if (slot) {
    bool enough = true;
    for (std::size_t i = 0; i < bound.size(); ++i)
      if (bound[i] > slot->bound[i]) enough = false;
    if (enough) return *slot;
  }
  Weight nb = bound;
  if (slot)
    for (std::size_t i = 0; i < nb.size(); ++i) nb[i] = std::max(nb[i], 2 * slot->bound[i]);
  auto set = std::make_unique<UpSet>();
  set->bound = nb;
  const Alcove a = aff_->from_elt(AffElt{w, Weight(aff_->rank(), 0)});
  std::vector<Alcove> queue{a};
  set->offsets.insert(diff_point(a, a).key());
  const int nroots = aff_->datum().num_positive_roots();
  for (std::size_t h = 0; h < queue.size(); ++h) {
    const Alcove c = queue[h];
    for (int k = 0; k < nroots; ++k)
      for (long long n = aff_->shi(c, k) + 1;; ++n) {
        Alcove t = aff_->reflect(c, AffineReflection{k, n});
        if (!within(a, t, nb)) break;
        if (set->offsets.insert(diff_point(t, a).key()).second) queue.push_back(t);
      }
  }
  slot = std::move(set);
  return *slot;
}

const GenericOrder::UpSet& GenericOrder::down_set_class(int w, const Weight& bound) {
  auto& slot = down_classes_[w];
  if (slot) {
    bool enough = true;
    for (std::size_t i = 0; i < bound.size(); ++i)
      if (bound[i] > slot->bound[i]) enough = false;
    if (enough) return *slot;
  }
  Weight nb = bound;
  if (slot)
    for (std::size_t i = 0; i < nb.size(); ++i) nb[i] = std::max(nb[i], slot->bound[i]);
  auto set = std::make_unique<UpSet>();
  set->bound = nb;
  const Alcove b = aff_->from_elt(AffElt{w, Weight(aff_->rank(), 0)});
  std::vector<Alcove> queue{b};
  set->offsets.insert(diff_point(b, b).key());
  const int nroots = aff_->datum().num_positive_roots();
  for (std::size_t h = 0; h < queue.size(); ++h) {
    const Alcove c = queue[h];
    for (int k = 0; k < nroots; ++k)
      for (long long n = aff_->shi(c, k);; --n) {
        Alcove t = aff_->reflect(c, AffineReflection{k, n});
        if (!within(t, b, nb)) break;
        if (set->offsets.insert(diff_point(t, b).key()).second) queue.push_back(t);
      }
  }
  slot = std::move(set);
  return *slot;
}

bool GenericOrder::leq(const Alcove& a, const Alcove& b) {
  if (a == b) return true;
  Weight need = offset_root_coords(a, b);
  for (long long v : need)
    if (v < 0) return false;
  const UpSet& s = up_set_class(aff_->finite_part(a), need);
  return s.offsets.count(diff_point(b, a).key()) > 0;
}

std::vector<Alcove> GenericOrder::up_set(const Alcove& a, const Weight& bound) {
  const UpSet& s = up_set_class(aff_->finite_part(a), bound);
  std::vector<Alcove> out;
  for (std::uint64_t key : s.offsets) {
    Alcove c = add_point(a, decode_key(key));
    if (within(a, c, bound)) out.push_back(c);
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<Alcove> GenericOrder::down_set(const Alcove& b, const Weight& bound) {
  const UpSet& s = down_set_class(aff_->finite_part(b), bound);
  std::vector<Alcove> out;
  for (std::uint64_t key : s.offsets) {
    Alcove c = add_point(b, decode_key(key));
    if (within(c, b, bound)) out.push_back(c);
  }
  std::sort(out.begin(), out.end());
  return out;
}

// ---------------------------------------------------------------------------
// Periodic engine

PeriodicEngine::PeriodicEngine(const RootDatum& datum, PeriodicOptions opts)
    : datum_(&datum), opts_(opts), aff_(datum), order_(aff_) {
  dominant_ = std::make_unique<DominantKL>(aff_);
  ordinary_ = std::make_unique<KLEngine>(aff_);
}

std::size_t PeriodicEngine::kl_memo_size() const {
  return dominant_->memo_size() + ordinary_->memo_size();
}

PairClass PeriodicEngine::pair_class(const Alcove& a, const Alcove& b) const {
  PairClass c;
  c.w = aff_.finite_part(a);
  c.offset = diff_point(b, a).u;
  return c;
}

HalfLaurent PeriodicEngine::raw_at(const Alcove& a0, const Alcove& b0, int m) {
  Weight t = weight_scale(datum_->two_rho_root_coords(), m);
  Alcove am = aff_.translate(a0, t);
  Alcove bm = aff_.translate(b0, t);
  if (opts_.convention == StableConvention::LongestTwisted) return dominant_->kl(am, bm);
  return ordinary_->kl(am, bm);
}

HalfLaurent PeriodicEngine::phat_at_depth(const Alcove& a, const Alcove& b, int m) {
  PairClass c = pair_class(a, b);
  Alcove a0 = aff_.from_elt(AffElt{c.w, Weight(datum_->rank(), 0)});
  Alcove b0 = add_point(a0, Alcove{c.offset});
  return raw_at(a0, b0, m);
}

const PeriodicEngine::PhatEntry& PeriodicEngine::phat_entry(const Alcove& a, const Alcove& b) {
  PairClass c = pair_class(a, b);
  auto it = phat_cache_.find(c);
  if (it != phat_cache_.end()) return it->second;
  PhatEntry e;
  if (a == b) {
    e.value = HalfLaurent::constant(1);
  } else if (order_.leq(a, b)) {
    Alcove a0 = aff_.from_elt(AffElt{c.w, Weight(datum_->rank(), 0)});
    Alcove b0 = add_point(a0, Alcove{c.offset});
    Weight step = datum_->two_rho_root_coords();
    int m0 = 0;
    while (!(aff_.dominant(aff_.translate(a0, weight_scale(step, m0))) &&
             aff_.dominant(aff_.translate(b0, weight_scale(step, m0)))))
      ++m0;
    std::vector<HalfLaurent> vals;
    int found = -1;
    for (int m = m0; m <= m0 + opts_.max_extra_depth; ++m) {
      vals.push_back(raw_at(a0, b0, m));
      std::size_t n = vals.size();
      if (n >= 3 && vals[n - 1] == vals[n - 2] && vals[n - 2] == vals[n - 3]) {
        found = m - 2;
        break;
      }
    }
    if (found < 0)
      throw StabilizationFailed("P-hat did not stabilize for alcoves " + aff_.word_string(a0) +
                                " -> " + aff_.word_string(b0));
    e.value = vals[found - m0];
    e.depth = found;
  }
  return phat_cache_.emplace(c, std::move(e)).first->second;
}

HalfLaurent PeriodicEngine::phat(const Alcove& a, const Alcove& b) {
  if (opts_.method == PhatMethod::StarRecursion && opts_.convention == StableConvention::LongestTwisted)
    return phat_recursive(a, b);
  return phat_entry(a, b).value;
}

HalfLaurent PeriodicEngine::phat_stabilized(const Alcove& a, const Alcove& b) {
  return phat_entry(a, b).value;
}

int PeriodicEngine::phat_depth(const Alcove& a, const Alcove& b) { return phat_entry(a, b).depth; }

HalfLaurent PeriodicEngine::phat_recursive(const Alcove& a, const Alcove& b) {
  return HalfLaurent::from_q_coeffs(rec(a, b));
}

long long PeriodicEngine::rec_mu(const Alcove& z, const Alcove& c, long long d) {
  if (d == 1) return 1;
  const Poly& p = rec(z, c);
  std::size_t k = static_cast<std::size_t>((d - 1) / 2);
  return k < p.size() ? p[k] : 0;
}

unsigned PeriodicEngine::descents(const Alcove& a) const {
  unsigned mask = 0;
  for (int g = 0; g < aff_.num_generators(); ++g)
    if (aff_.signed_distance(aff_.right_mul(a, g), a) == 1) mask |= 1u << g;
  return mask;
}

void PeriodicEngine::certify_bottom(const std::vector<Alcove>& targets) {
  const Alcove bottom = aff_.from_elt(AffElt{datum_->longest(), Weight(datum_->rank(), 0)});
  struct Track {
    Alcove b;
    std::vector<Poly> vals;
  };
  std::vector<Track> open;
  for (const Alcove& b : targets)
    if (!bottom_.count(diff_point(bottom, b).key())) open.push_back({b, {}});
  const Weight step = datum_->two_rho_root_coords();
  // Every entry at depth m uses the same top, so the KL memo is shared.
  for (int m = 0; !open.empty(); ++m) {
    const Weight t = weight_scale(step, m);
    const Alcove top = aff_.translate(bottom, t);
    if (!aff_.dominant(top)) continue;
    std::vector<Track> still;
    for (Track& tr : open) {
      const Alcove x = aff_.translate(tr.b, t);
      if (!aff_.dominant(x)) {
        still.push_back(std::move(tr));
        continue;
      }
      HalfLaurent v = dominant_->kl(x, top);
      Poly p;
      for (long long k = 0; k <= v.max_exponent() / 2 && !v.is_zero(); ++k) p.push_back(v.coeff(2 * k));
      tr.vals.push_back(std::move(p));
      const std::size_t n = tr.vals.size();
      if (n >= 3 && tr.vals[n - 1] == tr.vals[n - 2] && tr.vals[n - 2] == tr.vals[n - 3]) {
        bottom_depth_ = std::max(bottom_depth_, m - 2);
        bottom_.emplace(diff_point(bottom, tr.b).key(), std::move(tr.vals.back()));
      } else if (static_cast<int>(n) > opts_.max_extra_depth + 2) {
        throw StabilizationFailed("star-bottom column did not stabilize at offset " +
                                  aff_.word_string(tr.b));
      } else {
        still.push_back(std::move(tr));
      }
    }
    open = std::move(still);
  }
}

const PeriodicEngine::Poly& PeriodicEngine::bottom_value(const Alcove& b, const Alcove& bottom) {
  const std::uint64_t key = diff_point(bottom, b).key();
  auto it = bottom_.find(key);
  if (it != bottom_.end()) return it->second;
  const Alcove base = aff_.from_elt(AffElt{datum_->longest(), Weight(datum_->rank(), 0)});
  certify_bottom({add_point(base, diff_point(b, bottom))});
  return bottom_.at(key);
}

// Wall crossings inside the star of a: the lowest alcove of each star is read from the
// stabilized column, and every other alcove of the star is reached by going up one
// finite wall at a time.  (distance, position in the star) decreases along every call.
const PeriodicEngine::Poly& PeriodicEngine::rec(Alcove b, const Alcove& a) {
  if (a == b) return one_;
  PairClass key = pair_class(b, a);
  auto it = rec_memo_.find(key);
  if (it != rec_memo_.end()) return it->second;
  if (!order_.leq(b, a)) return rec_memo_.emplace(key, Poly{}).first->second;
  const long long d = aff_.signed_distance(b, a);
  if (d <= 2) return rec_memo_.emplace(key, Poly{1}).first->second;

  const unsigned da = descents(a);
  for (int g = 0; g < aff_.num_generators(); ++g) {
    if (!(da >> g & 1u)) continue;
    Alcove bs = aff_.right_mul(b, g);
    if (aff_.signed_distance(b, bs) == 1) {
      Poly r = rec(bs, a);
      return rec_memo_.emplace(key, std::move(r)).first->second;
    }
  }

  const int w = aff_.finite_part(a);
  if (w == datum_->longest()) {
    Poly r = bottom_value(b, a);
    return rec_memo_.emplace(key, std::move(r)).first->second;
  }
  int s = -1;
  for (int g = 1; g <= datum_->rank() && s < 0; ++g)
    if (da >> g & 1u) s = g;
  const Alcove c = aff_.right_mul(a, s);
  const Alcove bs = aff_.right_mul(b, s);
  Poly acc;
  auto add_shifted = [&acc](const Poly& p, std::size_t shift, long long factor) {
    if (p.empty() || factor == 0) return;
    if (acc.size() < p.size() + shift) acc.resize(p.size() + shift, 0);
    for (std::size_t i = 0; i < p.size(); ++i)
      acc[i + shift] = checked_add(acc[i + shift], checked_mul(p[i], factor));
  };
  add_shifted(Poly(rec(bs, c)), 0, 1);
  add_shifted(Poly(rec(b, c)), 1, 1);
  const unsigned need = descents(c) | (1u << s);
  for (const Alcove& z : order_.down_set(c, order_.offset_root_coords(b, c))) {
    if (z == c) continue;
    const long long dz = aff_.signed_distance(z, c);
    if (dz % 2 == 0) continue;
    const unsigned dzm = descents(z);
    if (!(dzm >> s & 1u)) continue;
    if (dz > 1 && (dzm & need) != need) continue;
    if (!order_.leq(b, z)) continue;
    const long long m = rec_mu(z, c, dz);
    if (m == 0) continue;
    add_shifted(Poly(rec(b, z)), static_cast<std::size_t>((dz + 1) / 2), -m);
  }
  while (!acc.empty() && acc.back() == 0) acc.pop_back();
  return rec_memo_.emplace(key, std::move(acc)).first->second;
}

namespace {

// Smallest t such that {x : |<x, beta^vee>| <= 1 for all beta} lies in conv(W t rho);
// this set contains the difference of any two points of one alcove.
double alcove_spread(const RootDatum& d) {
  const Weight rho2 = d.two_rho_root_coords();
  double t = 0;
  for (int i = 0; i < d.rank(); ++i) {
    long long c = 0;
    for (const auto& r : d.positive_roots()) c = std::max(c, r.coroot_coords[i]);
    Weight w(d.rank(), 0);
    w[i] = 1;
    const Weight rc = d.to_root_coords_scaled(w);
    for (int j = 0; j < d.rank(); ++j)
      t = std::max(t, 2.0 * static_cast<double>(rc[j]) /
                          (static_cast<double>(d.cartan_det()) * static_cast<double>(c * rho2[j])));
  }
  return t;
}

}  // namespace

// (b - c)/H - rho inside conv(W R rho).  For R = 1 + spread this holds for every
// alcove carrying a weight of the baby Verma module with highest weight in b.
bool PeriodicEngine::in_column_window(const Alcove& c, const Alcove& b, double R) const {
  const RootDatum& d = *datum_;
  const int r = d.rank();
  const long long H = aff_.scale();
  Weight x(r);
  for (int i = 0; i < r; ++i) x[i] = b.u[i] - c.u[i] - H;
  Weight dom = x;
  for (int w = 0; w < d.weyl_order(); ++w) {
    Weight y = d.act(w, x);
    if (std::all_of(y.begin(), y.end(), [](long long v) { return v >= 0; })) {
      dom = std::move(y);
      break;
    }
  }
  const Weight rc = d.to_root_coords_scaled(dom);
  const Weight rho2 = d.two_rho_root_coords();
  const double den = static_cast<double>(d.cartan_det() * H);
  for (int j = 0; j < r; ++j)
    if (static_cast<double>(rc[j]) > R * den * static_cast<double>(rho2[j]) / 2.0 + 1e-9)
      return false;
  return true;
}

std::vector<std::pair<Alcove, HalfLaurent>> PeriodicEngine::q_column(const Alcove& b) {
  const int w = aff_.finite_part(b);
  auto it = q_columns_.find(w);
  if (it == q_columns_.end()) {
    const Alcove b0 = aff_.from_elt(AffElt{w, Weight(datum_->rank(), 0)});
    const double spread = alcove_spread(*datum_);
    const double inner = 1 + spread;
    const double outer = inner + spread;
    Weight box = datum_->two_rho_root_coords();
    for (auto& v : box) v = static_cast<long long>(std::ceil((1 + outer) * static_cast<double>(v) / 2)) + 1;
    std::vector<Alcove> down;
    for (const Alcove& c : order_.down_set(b0, box))
      if (in_column_window(c, b0, outer)) down.push_back(c);
    std::sort(down.begin(), down.end(), [&](const Alcove& x, const Alcove& y) {
      long long dx = aff_.signed_distance(x, b0), dy = aff_.signed_distance(y, b0);
      if (dx != dy) return dx < dy;
      return x < y;
    });
    std::vector<std::pair<Alcove, HalfLaurent>> nonzero;  // absolute alcoves
    for (const Alcove& c : down) {
      HalfLaurent val;
      if (c == b0) {
        val = HalfLaurent::constant(1);
      } else {
        for (const auto& [nu, qv] : nonzero) {
          if (!order_.leq(c, nu)) continue;
          HalfLaurent ph = phat(c, nu);
          if (ph.is_zero()) continue;
          long long d = aff_.signed_distance(c, nu);
          val -= (ph * qv).scaled(d % 2 == 0 ? 1 : -1);
        }
      }
      if (!val.is_zero()) {
        if (!in_column_window(c, b0, inner))
          throw WindowTooSmall("nonzero Q entry on the boundary layer of a column window");
        nonzero.emplace_back(c, val);
      }
    }
    std::vector<std::pair<Alcove, HalfLaurent>> rel;
    for (auto& [c, v] : nonzero) rel.emplace_back(diff_point(c, b0), v);
    it = q_columns_.emplace(w, std::move(rel)).first;
  }
  std::vector<std::pair<Alcove, HalfLaurent>> out;
  for (const auto& [d, v] : it->second) out.emplace_back(add_point(b, d), v);
  return out;
}

HalfLaurent PeriodicEngine::q(const Alcove& a, const Alcove& b) {
  for (const auto& [c, v] : q_column(b))
    if (c == a) return v;
  return {};
}

HalfLaurent PeriodicEngine::inversion_sum(const Alcove& a, const Alcove& b) {
  HalfLaurent total;
  if (!order_.leq(a, b)) return total;
  Weight bound = order_.offset_root_coords(a, b);
  for (const Alcove& c : order_.down_set(b, bound)) {
    if (!order_.leq(a, c)) continue;
    HalfLaurent qa = q(a, c);
    if (qa.is_zero()) continue;
    long long d = aff_.signed_distance(c, b);
    total += (qa * phat(c, b)).scaled(d % 2 == 0 ? 1 : -1);
  }
  return total;
}

std::string PeriodicEngine::table_signature() const {
  std::ostringstream os;
  os << "datum " << datum_->label() << " cartan";
  for (const auto& row : datum_->cartan())
    for (long long v : row) os << ' ' << v;
  os << " convention " << static_cast<int>(opts_.convention);
  return os.str();
}

// Lines: "pair|a|b|depth|poly" for stabilized pairs, "bottom|b|poly" for the star-bottom
// column (b relative to the bottom of the star of 0), "depth|m", and "q|b|c|poly" for
// Q columns (c relative to b with b in the base translate).
void PeriodicEngine::save(const std::string& path) const {
  std::vector<std::string> lines;
  for (const auto& [c, e] : phat_cache_) {
    Alcove a0 = aff_.from_elt(AffElt{c.w, Weight(datum_->rank(), 0)});
    Alcove b0 = add_point(a0, Alcove{c.offset});
    lines.push_back("pair|" + aff_.word_string(a0) + '|' + aff_.word_string(b0) + '|' +
                    std::to_string(e.depth) + '|' + e.value.serialize());
  }
  const Alcove base = aff_.from_elt(AffElt{datum_->longest(), Weight(datum_->rank(), 0)});
  for (const auto& [key, poly] : bottom_) {
    const Alcove b = diff_point(base, decode_key(key));
    lines.push_back("bottom|" + aff_.word_string(b) + '|' + HalfLaurent::from_q_coeffs(poly).serialize());
  }
  for (const auto& [w, col] : q_columns_) {
    const Alcove b0 = aff_.from_elt(AffElt{w, Weight(datum_->rank(), 0)});
    lines.push_back("qcol|" + aff_.word_string(b0));
    for (const auto& [d, v] : col)
      lines.push_back("q|" + aff_.word_string(b0) + '|' + aff_.word_string(add_point(b0, d)) + '|' + v.serialize());
  }
  std::sort(lines.begin(), lines.end());
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << kTableHeader << '\n' << table_signature() << '\n';
  out << "depth|" << bottom_depth_ << '\n';
  for (const auto& l : lines) out << l << '\n';
}

bool PeriodicEngine::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) return false;
  std::string line;
  if (!std::getline(in, line) || line != kTableHeader) return false;
  if (!std::getline(in, line) || line != table_signature()) return false;
  const Alcove base = aff_.from_elt(AffElt{datum_->longest(), Weight(datum_->rank(), 0)});
  std::map<int, std::vector<std::pair<Alcove, HalfLaurent>>> cols;
  while (std::getline(in, line)) {
    std::vector<std::string> f;
    std::stringstream ss(line);
    std::string tok;
    while (std::getline(ss, tok, '|')) f.push_back(tok);
    if (f.empty()) continue;
    auto alc = [&](const std::string& w) { return aff_.from_word(aff_.parse_word(w)); };
    if (f[0] == "pair" && f.size() == 5) {
      PhatEntry e;
      e.depth = std::stoi(f[3]);
      e.value = HalfLaurent::deserialize(f[4]);
      phat_cache_.emplace(pair_class(alc(f[1]), alc(f[2])), std::move(e));
    } else if (f[0] == "bottom" && f.size() == 3) {
      const HalfLaurent v = HalfLaurent::deserialize(f[2]);
      Poly poly;
      for (long long k = 0; !v.is_zero() && k <= v.max_exponent() / 2; ++k) poly.push_back(v.coeff(2 * k));
      bottom_.emplace(diff_point(base, alc(f[1])).key(), std::move(poly));
    } else if (f[0] == "depth" && f.size() == 2) {
      bottom_depth_ = std::max(bottom_depth_, std::stoi(f[1]));
    } else if (f[0] == "qcol" && f.size() == 2) {
      cols[aff_.finite_part(alc(f[1]))];
    } else if (f[0] == "q" && f.size() == 4) {
      const Alcove b0 = alc(f[1]);
      cols[aff_.finite_part(b0)].emplace_back(diff_point(alc(f[2]), b0), HalfLaurent::deserialize(f[3]));
    }
  }
  for (auto& [w, col] : cols) {
    // Restore the order of computation (by distance) so reports do not depend on the cache.
    const Alcove b0 = aff_.from_elt(AffElt{w, Weight(datum_->rank(), 0)});
    std::sort(col.begin(), col.end(), [&](const auto& x, const auto& y) {
      const long long dx = aff_.signed_distance(add_point(b0, x.first), b0);
      const long long dy = aff_.signed_distance(add_point(b0, y.first), b0);
      if (dx != dy) return dx < dy;
      return add_point(b0, x.first) < add_point(b0, y.first);
    });
    q_columns_.emplace(w, std::move(col));
  }
  return true;
}

// ---------------------------------------------------------------------------

PeriodicEngine& EngineRegistry::get(const RootDatum& datum) {
  auto it = engines_.find(datum.cartan());
  if (it != engines_.end()) return *it->second;
  data_.push_back(std::make_unique<RootDatum>(datum));
  auto eng = std::make_unique<PeriodicEngine>(*data_.back(), opts_);
  if (!cache_dir_.empty()) eng->load(cache_path(datum));
  return *engines_.emplace(datum.cartan(), std::move(eng)).first->second;
}

std::vector<PeriodicEngine*> EngineRegistry::engines() {
  std::vector<PeriodicEngine*> out;
  for (auto& [k, v] : engines_) out.push_back(v.get());
  return out;
}

std::string EngineRegistry::cache_path(const RootDatum& datum) const {
  std::string name = datum.label() + "_c";
  for (const auto& row : datum.cartan())
    for (long long v : row) name += std::to_string(v);
  for (char& ch : name)
    if (ch == '-') ch = 'm';
  name += opts_.convention == StableConvention::Plain ? "_plain" : "";
  return (std::filesystem::path(cache_dir_) / (name + ".tbl")).string();
}

void EngineRegistry::save_all() const {
  if (cache_dir_.empty()) return;
  std::filesystem::create_directories(cache_dir_);
  for (const auto& [k, eng] : engines_) {
    // Write then rename so a concurrent reader never sees a partial table.
    const std::string path = cache_path(eng->datum());
    const std::string tmp = path + ".tmp";
    eng->save(tmp);
    std::filesystem::rename(tmp, path);
  }
}

InversionReport inversion_check(PeriodicEngine& engine, const Weight& lambda, long long p) {
  InversionReport rep;
  const AffineWeyl& aff = engine.affine();
  std::vector<Weight> window = box_window(engine.datum(), lambda, p);
  std::vector<Alcove> alcoves;
  for (const auto& w : window) alcoves.push_back(aff.alcove_of(w, p));
  for (std::size_t i = 0; i < alcoves.size(); ++i)
    for (std::size_t j = 0; j < alcoves.size(); ++j) {
      HalfLaurent s = engine.inversion_sum(alcoves[i], alcoves[j]);
      HalfLaurent expect = i == j ? HalfLaurent::constant(1) : HalfLaurent{};
      ++rep.pairs_checked;
      if (!(s == expect)) {
        ++rep.failures;
        if (rep.messages.size() < 20)
          rep.messages.push_back("mu=" + format_weight(window[i]) + " lambda'=" +
                                 format_weight(window[j]) + " sum=" + s.to_string());
      }
    }
  return rep;
}

}  // namespace loewy
