#include "loewy/kl.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <sstream>
#include <unordered_set>

namespace loewy {

namespace {

constexpr const char* kCacheHeader = "loewy-kl-cache v1";

void add_shifted(std::vector<long long>& acc, const std::vector<long long>& p, int shift,
                 long long factor) {
  if (p.empty() || factor == 0) return;
  if (acc.size() < p.size() + shift) acc.resize(p.size() + shift, 0);
  for (std::size_t i = 0; i < p.size(); ++i)
    acc[i + shift] = checked_add(acc[i + shift], checked_mul(p[i], factor));
}

HalfLaurent to_half(const std::vector<long long>& p) { return HalfLaurent::from_q_coeffs(p); }

std::string cartan_string(const RootDatum& d) {
  std::ostringstream os;
  for (const auto& row : d.cartan())
    for (long long v : row) os << v << ' ';
  return os.str();
}

}  // namespace

KLEngine::KLEngine(const AffineWeyl& aff) : aff_(&aff) {}

void KLEngine::clear_memo() { memo_.clear(); }

bool KLEngine::bruhat_leq(const Alcove& x0, const Alcove& y0) const {
  return loewy::bruhat_leq(*aff_, x0, y0);
}

bool bruhat_leq(const AffineWeyl& aff, const Alcove& x0, const Alcove& y0) {
  const AffineWeyl* aff_ = &aff;
  Alcove x = x0;
  Alcove y = y0;
  int lx = aff_->length(x);
  int ly = aff_->length(y);
  for (;;) {
    if (x == y) return true;
    if (lx >= ly) return false;
    if (lx == 0) return true;
    int s = aff_->first_left_descent(y);
    if (aff_->left_descent(s, x)) {
      x = aff_->left_mul(s, x);
      --lx;
    }
    y = aff_->left_mul(s, y);
    --ly;
  }
}

void KLEngine::down_covers(const Alcove& z, int lz, std::vector<Alcove>& out) const {
  const int nroots = aff_->datum().num_positive_roots();
  for (int k = 0; k < nroots; ++k) {
    long long kb = aff_->shi(z, k);
    long long lo = kb >= 1 ? 1 : kb + 1;
    long long hi = kb >= 1 ? kb : 0;
    for (long long n = lo; n <= hi; ++n) {
      Alcove t = aff_->reflect(z, AffineReflection{k, n});
      if (aff_->length(t) == lz - 1) out.push_back(t);
    }
  }
}

std::vector<Alcove> KLEngine::interval(const Alcove& x, const Alcove& y) const {
  std::vector<Alcove> result;
  if (!bruhat_leq(x, y)) return result;
  int lx = aff_->length(x);
  int ly = aff_->length(y);
  std::vector<Alcove> layer{y};
  std::vector<Alcove> covers;
  for (int l = ly; l >= lx && !layer.empty(); --l) {
    std::sort(layer.begin(), layer.end());
    result.insert(result.end(), layer.begin(), layer.end());
    if (l == lx) break;
    std::unordered_set<Alcove, AlcoveHash> next;
    for (const Alcove& z : layer) {
      covers.clear();
      down_covers(z, l, covers);
      for (const Alcove& c : covers)
        if (!next.count(c) && bruhat_leq(x, c)) next.insert(c);
    }
    layer.assign(next.begin(), next.end());
  }
  std::reverse(result.begin(), result.end());
  std::stable_sort(result.begin(), result.end(), [&](const Alcove& a, const Alcove& b) {
    return aff_->length(a) < aff_->length(b);
  });
  return result;
}

long long KLEngine::mu_raw(const Alcove& z, const Alcove& v, int lz, int lv) {
  int diff = lv - lz;
  if (diff <= 0 || diff % 2 == 0) return 0;
  if (diff == 1) return bruhat_leq(z, v) ? 1 : 0;
  const Poly& p = compute(z, v, lv);
  std::size_t k = static_cast<std::size_t>((diff - 1) / 2);
  return k < p.size() ? p[k] : 0;
}

const KLEngine::Poly& KLEngine::compute(Alcove x, const Alcove& y, int ly, int forced) {
  int lx = aff_->length(x);
  if (x == y) return one_;
  if (lx >= ly) return zero_;
  if (!bruhat_leq(x, y)) return zero_;
  if (forced < 0) {
    // P_{x,y} = P_{sx,y} whenever s is a common left descent.
    bool moved = true;
    while (moved) {
      moved = false;
      for (int g = 0; g < aff_->num_generators(); ++g)
        if (aff_->left_descent(g, y) && aff_->left_descent(g, x)) {
          x = aff_->left_mul(g, x);
          --lx;
          moved = true;
          break;
        }
    }
    if (ly - lx <= 2) return one_;
  }
  Key key{x.key(), y.key()};
  if (forced < 0) {
    auto it = memo_.find(key);
    if (it != memo_.end()) return it->second;
  }

  int s = forced >= 0 ? forced : aff_->first_left_descent(y);
  Alcove v = aff_->left_mul(s, y);
  Alcove sx = aff_->left_mul(s, x);
  const int lv = ly - 1;
  const bool c = aff_->left_descent(s, x);

  Poly acc;
  add_shifted(acc, compute(sx, v, lv), c ? 0 : 1, 1);
  add_shifted(acc, compute(x, v, lv), c ? 1 : 0, 1);

  std::vector<Alcove> zs = interval(x, v);
  for (const Alcove& z : zs) {
    if (z == v) continue;
    if (!aff_->left_descent(s, z)) continue;
    int lz = aff_->length(z);
    if ((lv - lz) % 2 == 0) continue;
    long long m = mu_raw(z, v, lz, lv);
    if (m == 0) continue;
    Poly pxz = compute(x, z, lz);
    add_shifted(acc, pxz, (ly - lz) / 2, -m);
  }
  while (!acc.empty() && acc.back() == 0) acc.pop_back();
  if (forced >= 0) {
    forced_result_ = std::move(acc);
    return forced_result_;
  }
  auto [it, inserted] = memo_.emplace(key, std::move(acc));
  return it->second;
}

HalfLaurent KLEngine::kl(const Alcove& x, const Alcove& y) {
  Key key{x.key(), y.key()};
  auto hit = top_.find(key);
  if (hit != top_.end()) {
    ++cache_hits_;
    return hit->second;
  }
  HalfLaurent r = to_half(compute(x, y, aff_->length(y)));
  top_.emplace(key, r);
  requested_.push_back({{x, y}, r});
  return r;
}

HalfLaurent KLEngine::kl_via(const Alcove& x, const Alcove& y, int descent) {
  if (!aff_->left_descent(descent, y)) throw std::invalid_argument("not a left descent of y");
  if (x == y) return HalfLaurent::constant(1);
  if (!bruhat_leq(x, y)) return {};
  return to_half(compute(x, y, aff_->length(y), descent));
}

long long KLEngine::mu(const Alcove& x, const Alcove& y) {
  return mu_raw(x, y, aff_->length(x), aff_->length(y));
}

void KLEngine::save_cache(const std::string& path) const {
  std::map<std::pair<std::string, std::string>, std::string> lines;
  for (const auto& [xy, p] : requested_)
    lines[{aff_->word_string(xy.first), aff_->word_string(xy.second)}] = p.serialize();
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write cache file " + path);
  out << kCacheHeader << '\n';
  out << "datum " << aff_->datum().label() << " cartan " << cartan_string(aff_->datum()) << '\n';
  for (const auto& [xy, p] : lines) out << xy.first << '|' << xy.second << '|' << p << '\n';
}

bool KLEngine::load_cache(const std::string& path) {
  std::ifstream in(path);
  if (!in) return false;
  std::string line;
  if (!std::getline(in, line) || line != kCacheHeader) return false;
  std::ostringstream expect;
  expect << "datum " << aff_->datum().label() << " cartan " << cartan_string(aff_->datum());
  if (!std::getline(in, line) || line != expect.str()) return false;
  while (std::getline(in, line)) {
    auto a = line.find('|');
    auto b = line.find('|', a + 1);
    if (a == std::string::npos || b == std::string::npos) continue;
    Alcove x = aff_->from_word(aff_->parse_word(line.substr(0, a)));
    Alcove y = aff_->from_word(aff_->parse_word(line.substr(a + 1, b - a - 1)));
    HalfLaurent p = HalfLaurent::deserialize(line.substr(b + 1));
    Key key{x.key(), y.key()};
    if (top_.emplace(key, p).second) requested_.push_back({{x, y}, p});
  }
  return true;
}

}  // namespace loewy
