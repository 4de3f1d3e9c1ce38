#include "loewy/alcove.hpp"

#include <algorithm>
#include <cctype>
#include <set>
#include <sstream>

namespace loewy {

namespace {

long long floor_div(long long a, long long b) {
  long long q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

long long ceil_div(long long a, long long b) { return -floor_div(-a, b); }

}  // namespace

Weight weight_add(const Weight& a, const Weight& b) {
  Weight c(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) c[i] = a[i] + b[i];
  return c;
}

Weight weight_sub(const Weight& a, const Weight& b) {
  Weight c(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) c[i] = a[i] - b[i];
  return c;
}

Weight weight_scale(const Weight& a, long long c) {
  Weight out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] * c;
  return out;
}

AffineWeyl::AffineWeyl(const RootDatum& datum) : datum_(&datum), H_(datum.coxeter_number()) {
  const auto& hs = datum.highest_short_roots();
  gens_.push_back({hs[0], 1});
  for (int i = 0; i < datum.rank(); ++i) gens_.push_back({datum.simple_root_index(i), 0});
  for (std::size_t c = 1; c < hs.size(); ++c) gens_.push_back({hs[c], 1});
  for (int w = 0; w < datum.weyl_order(); ++w) wrho_.push_back(datum.act(w, datum.rho()));
  for (int i = 0; i < rank(); ++i) {
    Weight e(rank(), 0);
    e[i] = 1;
    Weight col = datum.to_root_coords_scaled(e);
    for (int j = 0; j < rank(); ++j) adj_[j][i] = col[j];
  }
  modulus_ = datum.cartan_det() * H_;
  for (int w = 0; w < datum.weyl_order(); ++w) {
    Alcove a;
    for (int i = 0; i < rank(); ++i) a.u[i] = wrho_[w][i];
    residue_to_w_.emplace_back(residue(a), w);
  }
  for (std::size_t i = 0; i < residue_to_w_.size(); ++i)
    for (std::size_t j = 0; j < i; ++j)
      if (residue_to_w_[i].first == residue_to_w_[j].first)
        throw std::logic_error("finite parts are not separated by residues");
  for (int w = 0; w < datum.weyl_order(); ++w)
    for (int g = 0; g < num_generators(); ++g) {
      Alcove s = left_mul(g, base());
      Weight d(rank());
      for (int i = 0; i < rank(); ++i) d[i] = s.u[i] - 1;
      right_step_.push_back(datum.act(w, d));
    }
}

// Scaled root coordinates of the point modulo det * H; these separate the W-orbit of rho.
std::uint64_t AffineWeyl::residue(const Alcove& a) const {
  std::uint64_t key = 0;
  for (int i = 0; i < rank(); ++i) {
    long long v = 0;
    for (int j = 0; j < rank(); ++j) v += adj_[i][j] * a.u[j];
    v %= modulus_;
    if (v < 0) v += modulus_;
    key = key * static_cast<std::uint64_t>(modulus_) + static_cast<std::uint64_t>(v);
  }
  return key;
}

int AffineWeyl::finite_part(const Alcove& a) const {
  const std::uint64_t r = residue(a);
  for (const auto& [key, w] : residue_to_w_)
    if (key == r) return w;
  return finite_part_slow(a);
}

int AffineWeyl::finite_part_slow(const Alcove& a) const {
  const RootDatum& d = *datum_;
  const long long det = d.cartan_det();
  Weight diff(rank());
  for (int w = 0; w < d.weyl_order(); ++w) {
    bool ok = true;
    for (int i = 0; i < rank() && ok; ++i) {
      long long v = a.u[i] - wrho_[w][i];
      if (v % H_ != 0) ok = false;
      diff[i] = v / H_;
    }
    if (!ok) continue;
    Weight sc = d.to_root_coords_scaled(diff);
    if (std::all_of(sc.begin(), sc.end(), [&](long long v) { return v % det == 0; })) return w;
  }
  throw std::logic_error("alcove point does not correspond to an element of W_p");
}

bool AffineWeyl::dominant(const Alcove& a) const {
  for (int i = 0; i < rank(); ++i)
    if (a.u[i] <= 0) return false;
  return true;
}

Alcove AffineWeyl::base() const {
  Alcove a;
  for (int i = 0; i < rank(); ++i) a.u[i] = 1;
  return a;
}

Alcove AffineWeyl::from_elt(const AffElt& x) const {
  Weight wr = datum_->act(x.w, datum_->rho());
  Weight t = datum_->from_root_coords(x.nu);
  Alcove a;
  for (int i = 0; i < rank(); ++i) a.u[i] = wr[i] + H_ * t[i];
  return a;
}

AffElt AffineWeyl::to_elt(const Alcove& a) const {
  const RootDatum& d = *datum_;
  for (int w = 0; w < d.weyl_order(); ++w) {
    Weight wr = d.act(w, d.rho());
    Weight diff(rank());
    bool ok = true;
    for (int i = 0; i < rank(); ++i) {
      long long v = a.u[i] - wr[i];
      if (v % H_ != 0) {
        ok = false;
        break;
      }
      diff[i] = v / H_;
    }
    if (!ok) continue;
    auto nu = d.to_root_coords(diff);
    if (nu) return AffElt{w, *nu};
  }
  throw std::logic_error("alcove point does not correspond to an element of W_p");
}

long long AffineWeyl::pair(const Alcove& a, int root) const {
  const auto& c = datum_->positive_roots()[root].coroot_coords;
  long long s = 0;
  for (int i = 0; i < rank(); ++i) s += a.u[i] * c[i];
  return s;
}

long long AffineWeyl::shi(const Alcove& a, int root) const { return floor_div(pair(a, root), H_); }

int AffineWeyl::length(const Alcove& a) const {
  long long l = 0;
  for (int k = 0; k < datum_->num_positive_roots(); ++k) l += std::llabs(shi(a, k));
  return static_cast<int>(l);
}

Alcove AffineWeyl::reflect(const Alcove& a, const AffineReflection& t) const {
  const auto& beta = datum_->positive_roots()[t.root].weight;
  long long c = pair(a, t.root) - t.n * H_;
  Alcove b = a;
  for (int i = 0; i < rank(); ++i) b.u[i] -= c * beta[i];
  return b;
}

Alcove AffineWeyl::right_mul(const Alcove& a, int gen) const {
  const Weight& wd = right_step_[finite_part(a) * num_generators() + gen];
  Alcove b = a;
  for (int i = 0; i < rank(); ++i) b.u[i] += wd[i];
  return b;
}

bool AffineWeyl::left_descent(int gen, const Alcove& a) const {
  const auto& t = gens_[gen];
  long long v = pair(a, t.root);
  return t.n == 0 ? v < 0 : v > t.n * H_;
}

int AffineWeyl::first_left_descent(const Alcove& a) const {
  for (int g = 0; g < num_generators(); ++g)
    if (left_descent(g, a)) return g;
  return -1;
}

Alcove AffineWeyl::translate(const Alcove& a, const Weight& nu_root_coords) const {
  Weight t = datum_->from_root_coords(nu_root_coords);
  Alcove b = a;
  for (int i = 0; i < rank(); ++i) b.u[i] += H_ * t[i];
  return b;
}

std::vector<int> AffineWeyl::reduced_word(const Alcove& a) const {
  std::vector<int> word;
  Alcove cur = a;
  for (int g = first_left_descent(cur); g >= 0; g = first_left_descent(cur)) {
    word.push_back(g);
    cur = left_mul(g, cur);
  }
  return word;
}

Alcove AffineWeyl::from_word(const std::vector<int>& word) const {
  Alcove a = base();
  for (auto it = word.rbegin(); it != word.rend(); ++it) {
    if (*it < 0 || *it >= num_generators()) throw std::out_of_range("generator index out of range");
    a = left_mul(*it, a);
  }
  return a;
}

std::string AffineWeyl::word_string(const Alcove& a) const {
  auto w = reduced_word(a);
  if (w.empty()) return "e";
  std::string s;
  for (int g : w) s += "s" + std::to_string(g);
  return s;
}

std::vector<int> AffineWeyl::parse_word(const std::string& text) const {
  std::vector<int> word;
  std::size_t i = 0;
  while (i < text.size()) {
    char c = text[i];
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t j = i;
      while (j < text.size() && std::isdigit(static_cast<unsigned char>(text[j]))) ++j;
      int g = std::stoi(text.substr(i, j - i));
      if (g >= num_generators()) throw std::invalid_argument("generator out of range in word: " + text);
      word.push_back(g);
      i = j;
    } else if (c == 's' || c == ' ' || c == ',' || c == '.' || c == '*') {
      ++i;
    } else if (c == 'e' && text.size() == 1) {
      ++i;
    } else {
      throw std::invalid_argument("cannot parse word: " + text);
    }
  }
  return word;
}

Alcove AffineWeyl::up_reflect(int root, const Alcove& a) const {
  return reflect(a, AffineReflection{root, shi(a, root) + 1});
}

long long AffineWeyl::signed_distance(const Alcove& a, const Alcove& b) const {
  long long d = 0;
  for (int k = 0; k < datum_->num_positive_roots(); ++k) d += shi(b, k) - shi(a, k);
  return d;
}

bool is_regular(const RootDatum& datum, const Weight& lambda, long long p) {
  Weight q = weight_add(lambda, datum.rho());
  for (int k = 0; k < datum.num_positive_roots(); ++k)
    if (datum.pair(q, k) % p == 0) return false;
  return true;
}

Alcove AffineWeyl::alcove_of(const Weight& lambda, long long p) const {
  const RootDatum& d = *datum_;
  if (!is_regular(d, lambda, p)) throw NotRegular("weight " + format_weight(lambda) + " is p-singular");
  Weight q = weight_add(lambda, d.rho());
  std::vector<int> word;
  for (;;) {
    int g = -1;
    for (int k = 0; k < num_generators() && g < 0; ++k) {
      long long v = d.pair(q, gens_[k].root);
      if (gens_[k].n == 0 ? v < 0 : v > gens_[k].n * p) g = k;
    }
    if (g < 0) break;
    const auto& t = gens_[g];
    long long c = d.pair(q, t.root) - t.n * p;
    const auto& beta = d.positive_roots()[t.root].weight;
    for (int i = 0; i < rank(); ++i) q[i] -= c * beta[i];
    word.push_back(g);
  }
  return from_word(word);
}

AffElt AffineWeyl::compose(const AffElt& x, const AffElt& y) const {
  const RootDatum& d = *datum_;
  Weight wy = d.act(x.w, d.from_root_coords(y.nu));
  Weight nu = weight_add(*d.to_root_coords(wy), x.nu);
  return AffElt{d.weyl_mul(x.w, y.w), nu};
}

AffElt AffineWeyl::inverse(const AffElt& x) const {
  const RootDatum& d = *datum_;
  int wi = d.weyl_inverse(x.w);
  Weight nu = *d.to_root_coords(d.act(wi, d.from_root_coords(x.nu)));
  return AffElt{wi, weight_scale(nu, -1)};
}

Weight AffineWeyl::weight_in(const Alcove& b, const Weight& lambda, long long p) const {
  AffElt xl = to_elt(alcove_of(lambda, p));
  AffElt xb = to_elt(b);
  return dot_act(*datum_, compose(xb, inverse(xl)), lambda, p);
}

Weight dot_act(const RootDatum& datum, const AffElt& x, const Weight& lambda, long long p) {
  Weight v = datum.act(x.w, weight_add(lambda, datum.rho()));
  Weight t = datum.from_root_coords(x.nu);
  for (std::size_t i = 0; i < v.size(); ++i) v[i] += p * t[i] - 1;
  return v;
}

WeightDecomp decompose(const Weight& lambda, long long p) {
  WeightDecomp d;
  for (long long v : lambda) {
    long long q = floor_div(v, p);
    d.quotient.push_back(q);
    d.restricted.push_back(v - q * p);
  }
  return d;
}

Weight lambda_bracket(const RootDatum& datum, const Weight& lambda, int w, long long p) {
  Weight wr = datum.act(w, datum.rho());
  Weight out = lambda;
  for (std::size_t i = 0; i < out.size(); ++i) out[i] += (p - 1) * (wr[i] - 1);
  return out;
}

long long weight_shi(const RootDatum& datum, const Weight& lambda, int root, long long p) {
  return floor_div(datum.pair(weight_add(lambda, datum.rho()), root), p);
}

long long rd(const RootDatum& datum, const Weight& mu, const Weight& lambda, long long p,
             const std::vector<int>& roots) {
  long long d = 0;
  auto add = [&](int k) { d += weight_shi(datum, lambda, k, p) - weight_shi(datum, mu, k, p); };
  if (roots.empty()) {
    for (int k = 0; k < datum.num_positive_roots(); ++k) add(k);
  } else {
    for (int k : roots) add(k);
  }
  return d;
}

std::vector<Weight> box_window(const RootDatum& datum, const Weight& lambda, long long p,
                               const ParabolicDatum* levi) {
  if (!is_regular(datum, lambda, p))
    throw NotRegular("weight " + format_weight(lambda) + " is p-singular");
  const int r = datum.rank();
  Weight bound = weight_scale(datum.two_rho_root_coords(), p - 1);
  Weight q = weight_add(lambda, datum.rho());
  std::set<Weight> out;
  std::vector<int> ws;
  if (levi) {
    ws = levi->levi_weyl();
  } else {
    for (int w = 0; w < datum.weyl_order(); ++w) ws.push_back(w);
  }
  for (int w : ws) {
    Weight c = *datum.to_root_coords(weight_sub(q, datum.act(w, q)));
    std::vector<long long> lo(r), hi(r);
    bool empty = false;
    for (int i = 0; i < r; ++i) {
      if (levi && !levi->contains(i)) {
        lo[i] = hi[i] = 0;
        if (c[i] < 0 || c[i] > bound[i]) empty = true;
      } else {
        lo[i] = ceil_div(c[i] - bound[i], p);
        hi[i] = floor_div(c[i], p);
        if (lo[i] > hi[i]) empty = true;
      }
    }
    if (empty) continue;
    Weight nu = lo;
    for (;;) {
      out.insert(dot_act(datum, AffElt{w, nu}, lambda, p));
      int i = 0;
      while (i < r && nu[i] == hi[i]) {
        nu[i] = lo[i];
        ++i;
      }
      if (i == r) break;
      ++nu[i];
    }
  }
  return {out.begin(), out.end()};
}

}  // namespace loewy
