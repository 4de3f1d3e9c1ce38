#include <algorithm>
#include <unordered_set>

#include "loewy/kl.hpp"

namespace loewy {

namespace {

void add_shifted(std::vector<long long>& acc, const std::vector<long long>& p, int shift,
                 long long factor) {
  if (p.empty() || factor == 0) return;
  if (acc.size() < p.size() + shift) acc.resize(p.size() + shift, 0);
  for (std::size_t i = 0; i < p.size(); ++i)
    acc[i + shift] = checked_add(acc[i + shift], checked_mul(p[i], factor));
}

}  // namespace

DominantKL::DominantKL(const AffineWeyl& aff) : aff_(&aff) {}

void DominantKL::clear_memo() {
  memo_.clear();
  covers_.clear();
  leq_memo_.clear();
}

bool DominantKL::leq(const Alcove& x, const Alcove& z) {
  Key key{x.key(), z.key()};
  auto it = leq_memo_.find(key);
  if (it != leq_memo_.end()) return it->second;
  if (leq_memo_.size() > (1u << 24)) leq_memo_.clear();
  bool r = bruhat_leq(*aff_, x, z);
  leq_memo_.emplace(key, r);
  return r;
}

// Generators s with zs below z or outside the dominant chamber.
unsigned DominantKL::descents(const Alcove& z, int lz) {
  unsigned mask = 0;
  for (int g = 0; g < aff_->num_generators(); ++g) {
    Alcove t = aff_->right_mul(z, g);
    if (!aff_->dominant(t) || aff_->length(t) < lz) mask |= 1u << g;
  }
  return mask;
}

const std::vector<Alcove>& DominantKL::covers(const Alcove& z, int lz) {
  auto it = covers_.find(z.key());
  if (it != covers_.end()) return it->second;
  std::vector<Alcove> out;
  const int nroots = aff_->datum().num_positive_roots();
  for (int k = 0; k < nroots; ++k) {
    long long kb = aff_->shi(z, k);
    for (long long n = 1; n <= kb; ++n) {
      Alcove t = aff_->reflect(z, AffineReflection{k, n});
      if (aff_->dominant(t) && aff_->length(t) == lz - 1) out.push_back(t);
    }
  }
  return covers_.emplace(z.key(), std::move(out)).first->second;
}

std::vector<Alcove> DominantKL::interval(const Alcove& x, int lx, const Alcove& v, int lv) {
  std::vector<Alcove> result;
  std::vector<Alcove> layer{v};
  std::unordered_set<Alcove, AlcoveHash> next;
  for (int l = lv; l > lx && !layer.empty(); --l) {
    next.clear();
    for (const Alcove& z : layer)
      for (const Alcove& c : covers(z, l))
        if (!next.count(c) && leq(x, c)) next.insert(c);
    layer.assign(next.begin(), next.end());
    result.insert(result.end(), layer.begin(), layer.end());
  }
  return result;
}

long long DominantKL::mu_raw(const Alcove& z, const Alcove& v, int lz, int lv) {
  int diff = lv - lz;
  if (diff <= 0 || diff % 2 == 0) return 0;
  if (diff == 1) return 1;
  const Poly& p = compute(z, v, lv);
  std::size_t k = static_cast<std::size_t>((diff - 1) / 2);
  return k < p.size() ? p[k] : 0;
}

const DominantKL::Poly& DominantKL::compute(Alcove x, const Alcove& y, int ly) {
  int lx = aff_->length(x);
  if (x == y) return one_;
  if (lx >= ly) return zero_;
  if (!bruhat_leq(*aff_, x, y)) return zero_;
  const int ngen = aff_->num_generators();
  std::vector<int> rdesc;
  for (int g = 0; g < ngen; ++g)
    if (aff_->length(aff_->right_mul(y, g)) < ly) rdesc.push_back(g);
  // P_{w0 x, w0 y} = P_{w0 xs, w0 y} when s is a right descent of y and xs > x stays dominant.
  bool moved = true;
  while (moved) {
    moved = false;
    for (int g : rdesc) {
      Alcove xs = aff_->right_mul(x, g);
      if (aff_->dominant(xs) && aff_->length(xs) > lx) {
        x = xs;
        ++lx;
        moved = true;
      }
    }
  }
  if (x == y) return one_;
  if (ly - lx <= 2) return one_;
  Key key{x.key(), y.key()};
  auto it = memo_.find(key);
  if (it != memo_.end()) return it->second;

  const int s = rdesc.front();
  const Alcove v = aff_->right_mul(y, s);
  const int lv = ly - 1;
  Poly acc;
  Alcove xs = aff_->right_mul(x, s);
  if (aff_->dominant(xs)) {
    add_shifted(acc, compute(xs, v, lv), 0, 1);
    add_shifted(acc, compute(x, v, lv), 1, 1);
  } else {
    const Poly& pxv = compute(x, v, lv);
    add_shifted(acc, pxv, 0, 1);
    add_shifted(acc, pxv, 1, 1);
  }
  std::vector<Alcove> zs = interval(x, lx, v, lv);
  // mu(z, v) vanishes unless every descent of v is one of z, or z is a cover of v.
  const unsigned dv = descents(v, lv);
  const unsigned need = dv | (1u << s);
  for (const Alcove& z : zs) {
    int lz = aff_->length(z);
    if ((lv - lz) % 2 == 0) continue;
    const unsigned dz = descents(z, lz);
    if (!(dz >> s & 1u)) continue;
    if (lv - lz > 1 && (dz & need) != need) continue;
    long long m = mu_raw(z, v, lz, lv);
    if (m == 0) continue;
    Poly pxz = compute(x, z, lz);
    add_shifted(acc, pxz, (ly - lz) / 2, -m);
  }
  while (!acc.empty() && acc.back() == 0) acc.pop_back();
  return memo_.emplace(key, std::move(acc)).first->second;
}

HalfLaurent DominantKL::kl(const Alcove& x, const Alcove& y) {
  if (!aff_->dominant(x) || !aff_->dominant(y))
    throw std::invalid_argument("DominantKL expects dominant alcoves");
  return HalfLaurent::from_q_coeffs(compute(x, y, aff_->length(y)));
}

}  // namespace loewy
