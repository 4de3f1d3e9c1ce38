#include "loewy/rootsys.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <sstream>

namespace loewy {

namespace {

IntMatrix identity_matrix(int n) {
  IntMatrix m(n, std::vector<long long>(n, 0));
  for (int i = 0; i < n; ++i) m[i][i] = 1;
  return m;
}

IntMatrix matmul(const IntMatrix& a, const IntMatrix& b) {
  const int n = static_cast<int>(a.size());
  IntMatrix c(n, std::vector<long long>(n, 0));
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < n; ++k) {
      if (a[i][k] == 0) continue;
      for (int j = 0; j < n; ++j) c[i][j] += a[i][k] * b[k][j];
    }
  return c;
}

long long det_rec(const IntMatrix& m) {
  const int n = static_cast<int>(m.size());
  if (n == 0) return 1;
  if (n == 1) return m[0][0];
  long long d = 0;
  for (int c = 0; c < n; ++c) {
    IntMatrix sub;
    for (int r = 1; r < n; ++r) {
      std::vector<long long> row;
      for (int k = 0; k < n; ++k)
        if (k != c) row.push_back(m[r][k]);
      sub.push_back(row);
    }
    d += ((c % 2) ? -1 : 1) * m[0][c] * det_rec(sub);
  }
  return d;
}

IntMatrix adjugate(const IntMatrix& m) {
  const int n = static_cast<int>(m.size());
  IntMatrix adj(n, std::vector<long long>(n, 0));
  if (n == 1) {
    adj[0][0] = 1;
    return adj;
  }
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      IntMatrix sub;
      for (int r = 0; r < n; ++r) {
        if (r == j) continue;
        std::vector<long long> row;
        for (int k = 0; k < n; ++k)
          if (k != i) row.push_back(m[r][k]);
        sub.push_back(row);
      }
      adj[i][j] = (((i + j) % 2) ? -1 : 1) * det_rec(sub);
    }
  return adj;
}

}  // namespace

RootDatum RootDatum::build(std::string_view label) {
  IntMatrix c;
  if (label == "A1") {
    c = {{2}};
  } else if (label == "A1xA1") {
    c = {{2, 0}, {0, 2}};
  } else if (label == "A2") {
    c = {{2, -1}, {-1, 2}};
  } else if (label == "B2") {
    c = {{2, -1}, {-2, 2}};
  } else if (label == "G2") {
    c = {{2, -3}, {-1, 2}};
  } else if (label == "A3") {
    c = {{2, -1, 0}, {-1, 2, -1}, {0, -1, 2}};
  } else {
    throw UnsupportedType("unsupported root datum type: " + std::string(label));
  }
  return from_cartan(std::string(label), std::move(c));
}

RootDatum RootDatum::from_cartan(std::string label, IntMatrix cartan) {
  const int r = static_cast<int>(cartan.size());
  if (r < 1 || r > 3) throw UnsupportedType("rank must be between 1 and 3");
  for (const auto& row : cartan)
    if (static_cast<int>(row.size()) != r) throw UnsupportedType("Cartan matrix must be square");
  RootDatum d;
  d.label_ = std::move(label);
  d.cartan_ = std::move(cartan);
  d.det_ = det_rec(d.cartan_);
  if (d.det_ <= 0) throw UnsupportedType("Cartan matrix is not of finite type");
  d.adj_ = adjugate(d.cartan_);
  d.enumerate_roots();
  d.find_components();
  d.enumerate_weyl();
  return d;
}

void RootDatum::enumerate_roots() {
  const int r = rank();
  std::map<Weight, int> seen;
  std::vector<PositiveRoot> queue;
  for (int i = 0; i < r; ++i) {
    PositiveRoot pr;
    pr.root_coords.assign(r, 0);
    pr.root_coords[i] = 1;
    pr.coroot_coords = pr.root_coords;
    queue.push_back(pr);
  }
  for (std::size_t head = 0; head < queue.size(); ++head) {
    if (queue.size() > 64) throw UnsupportedType("root system is not finite");
    PositiveRoot cur = queue[head];
    if (seen.count(cur.root_coords)) continue;
    seen[cur.root_coords] = 1;
    for (int i = 0; i < r; ++i) {
      long long b = 0;  // <beta, alpha_i^vee>
      long long bc = 0;  // <alpha_i, beta^vee>
      for (int j = 0; j < r; ++j) {
        b += cur.root_coords[j] * cartan_[i][j];
        bc += cur.coroot_coords[j] * cartan_[j][i];
      }
      PositiveRoot nxt = cur;
      nxt.root_coords[i] -= b;
      nxt.coroot_coords[i] -= bc;
      bool positive = true;
      bool zero = true;
      for (long long v : nxt.root_coords) {
        if (v < 0) positive = false;
        if (v != 0) zero = false;
      }
      if (positive && !zero && !seen.count(nxt.root_coords)) queue.push_back(nxt);
    }
  }
  std::vector<PositiveRoot> roots;
  for (auto& pr : queue) {
    if (std::any_of(roots.begin(), roots.end(),
                    [&](const PositiveRoot& o) { return o.root_coords == pr.root_coords; }))
      continue;
    pr.weight.assign(r, 0);
    for (int i = 0; i < r; ++i)
      for (int j = 0; j < r; ++j) pr.weight[i] += cartan_[i][j] * pr.root_coords[j];
    pr.height = static_cast<int>(std::accumulate(pr.root_coords.begin(), pr.root_coords.end(), 0LL));
    pr.coroot_height =
        static_cast<int>(std::accumulate(pr.coroot_coords.begin(), pr.coroot_coords.end(), 0LL));
    roots.push_back(pr);
  }
  std::sort(roots.begin(), roots.end(), [](const PositiveRoot& a, const PositiveRoot& b) {
    if (a.height != b.height) return a.height < b.height;
    return a.root_coords > b.root_coords;
  });
  roots_ = std::move(roots);
  simple_index_.assign(r, -1);
  for (int k = 0; k < num_positive_roots(); ++k)
    if (roots_[k].height == 1)
      for (int i = 0; i < r; ++i)
        if (roots_[k].root_coords[i] == 1) simple_index_[i] = k;
}

void RootDatum::find_components() {
  const int r = rank();
  std::vector<int> comp(r, -1);
  int n = 0;
  for (int i = 0; i < r; ++i) {
    if (comp[i] >= 0) continue;
    std::vector<int> stack{i};
    comp[i] = n;
    while (!stack.empty()) {
      int a = stack.back();
      stack.pop_back();
      for (int b = 0; b < r; ++b)
        if (comp[b] < 0 && cartan_[a][b] != 0) {
          comp[b] = n;
          stack.push_back(b);
        }
    }
    ++n;
  }
  components_.assign(n, {});
  for (int i = 0; i < r; ++i) components_[comp[i]].push_back(i);
  highest_short_.clear();
  coxeter_ = 0;
  for (const auto& c : components_) {
    int best = -1;
    for (int k = 0; k < num_positive_roots(); ++k) {
      bool inside = true;
      for (int i = 0; i < r; ++i)
        if (roots_[k].root_coords[i] != 0 &&
            std::find(c.begin(), c.end(), i) == c.end())
          inside = false;
      if (!inside) continue;
      if (best < 0 || roots_[k].coroot_height > roots_[best].coroot_height) best = k;
    }
    highest_short_.push_back(best);
    coxeter_ = std::max(coxeter_, roots_[best].coroot_height + 1);
  }
}

void RootDatum::enumerate_weyl() {
  const int r = rank();
  std::vector<IntMatrix> gens;
  for (int i = 0; i < r; ++i) {
    IntMatrix s = identity_matrix(r);
    for (int k = 0; k < r; ++k) s[k][i] -= cartan_[k][i];
    gens.push_back(s);
  }
  std::map<IntMatrix, int> index;
  std::vector<IntMatrix> mats{identity_matrix(r)};
  index[mats[0]] = 0;
  for (std::size_t h = 0; h < mats.size(); ++h) {
    for (int i = 0; i < r; ++i) {
      IntMatrix m = matmul(gens[i], mats[h]);
      if (!index.count(m)) {
        index[m] = static_cast<int>(mats.size());
        mats.push_back(m);
        if (mats.size() > 100000) throw UnsupportedType("Weyl group is not finite");
      }
    }
  }

  // Signed action on positive roots, via weight lookup.
  std::map<Weight, int> root_lookup;
  for (int k = 0; k < num_positive_roots(); ++k) {
    root_lookup[roots_[k].weight] = k + 1;
    Weight neg = roots_[k].weight;
    for (auto& v : neg) v = -v;
    root_lookup[neg] = -(k + 1);
  }
  auto apply = [&](const IntMatrix& m, const Weight& v) {
    Weight out(r, 0);
    for (int i = 0; i < r; ++i)
      for (int j = 0; j < r; ++j) out[i] += m[i][j] * v[j];
    return out;
  };

  const int n = static_cast<int>(mats.size());
  std::vector<int> lengths(n, 0);
  std::vector<std::vector<int>> ract(n, std::vector<int>(num_positive_roots()));
  for (int w = 0; w < n; ++w)
    for (int k = 0; k < num_positive_roots(); ++k) {
      auto it = root_lookup.find(apply(mats[w], roots_[k].weight));
      if (it == root_lookup.end()) throw UnsupportedType("Weyl group does not permute roots");
      ract[w][k] = it->second;
      if (it->second < 0) ++lengths[w];
    }

  // Lexicographically smallest reduced words, built from the smallest left descent.
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int a, int b) { return lengths[a] < lengths[b]; });
  std::vector<std::vector<int>> words(n);
  for (int w : order) {
    if (lengths[w] == 0) continue;
    for (int i = 0; i < r; ++i) {
      int sw = index.at(matmul(gens[i], mats[w]));
      if (lengths[sw] < lengths[w]) {
        words[w] = {i};
        words[w].insert(words[w].end(), words[sw].begin(), words[sw].end());
        break;
      }
    }
  }
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    if (lengths[a] != lengths[b]) return lengths[a] < lengths[b];
    return words[a] < words[b];
  });
  std::vector<int> new_index(n);
  for (int k = 0; k < n; ++k) new_index[order[k]] = k;

  weyl_.assign(n, {});
  root_action_.assign(n, {});
  for (int k = 0; k < n; ++k) {
    int old = order[k];
    weyl_[k].word = words[old];
    weyl_[k].action = mats[old];
    weyl_[k].length = lengths[old];
    root_action_[k] = ract[old];
  }
  std::map<IntMatrix, int> final_index;
  for (int k = 0; k < n; ++k) final_index[weyl_[k].action] = k;
  mul_.assign(n, std::vector<int>(n));
  inv_.assign(n, 0);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      mul_[a][b] = final_index.at(matmul(weyl_[a].action, weyl_[b].action));
      if (mul_[a][b] == 0) inv_[a] = b;
    }
  simple_refl_.assign(r, 0);
  for (int i = 0; i < r; ++i) simple_refl_[i] = final_index.at(gens[i]);
  longest_ = 0;
  for (int k = 0; k < n; ++k)
    if (weyl_[k].length > weyl_[longest_].length) longest_ = k;

  root_refl_.assign(num_positive_roots(), 0);
  for (int k = 0; k < num_positive_roots(); ++k) {
    IntMatrix s = identity_matrix(r);
    // s_beta(lambda) = lambda - <lambda, beta^vee> beta
    for (int i = 0; i < r; ++i)
      for (int j = 0; j < r; ++j) s[i][j] -= roots_[k].weight[i] * roots_[k].coroot_coords[j];
    root_refl_[k] = final_index.at(s);
  }
}

Weight RootDatum::simple_root(int i) const {
  Weight w(rank());
  for (int k = 0; k < rank(); ++k) w[k] = cartan_[k][i];
  return w;
}

long long RootDatum::pair(const Weight& lambda, int root) const {
  return pair_coroot(lambda, roots_[root].coroot_coords);
}

long long RootDatum::pair_coroot(const Weight& lambda, const Weight& coroot_coords) {
  long long s = 0;
  for (std::size_t i = 0; i < lambda.size(); ++i) s += lambda[i] * coroot_coords[i];
  return s;
}

Weight RootDatum::two_rho_root_coords() const {
  Weight s(rank(), 0);
  for (const auto& b : roots_)
    for (int i = 0; i < rank(); ++i) s[i] += b.root_coords[i];
  return s;
}

Weight RootDatum::act(int w, const Weight& lambda) const {
  const auto& m = weyl_[w].action;
  Weight out(rank(), 0);
  for (int i = 0; i < rank(); ++i)
    for (int j = 0; j < rank(); ++j) out[i] += m[i][j] * lambda[j];
  return out;
}

int RootDatum::act_on_root(int w, int root, bool& negative) const {
  int v = root_action_[w][root];
  negative = v < 0;
  return std::abs(v) - 1;
}

Weight RootDatum::to_root_coords_scaled(const Weight& lambda) const {
  Weight out(rank(), 0);
  for (int i = 0; i < rank(); ++i)
    for (int j = 0; j < rank(); ++j) out[i] += adj_[i][j] * lambda[j];
  return out;
}

std::optional<Weight> RootDatum::to_root_coords(const Weight& lambda) const {
  Weight s = to_root_coords_scaled(lambda);
  for (auto& v : s) {
    if (v % det_ != 0) return std::nullopt;
    v /= det_;
  }
  return s;
}

Weight RootDatum::from_root_coords(const Weight& coords) const {
  Weight out(rank(), 0);
  for (int i = 0; i < rank(); ++i)
    for (int j = 0; j < rank(); ++j) out[i] += cartan_[i][j] * coords[j];
  return out;
}

bool RootDatum::is_dominant(const Weight& lambda) const {
  return std::all_of(lambda.begin(), lambda.end(), [](long long v) { return v >= 0; });
}

int RootDatum::find_weyl(const IntMatrix& action) const {
  for (int k = 0; k < weyl_order(); ++k)
    if (weyl_[k].action == action) return k;
  return -1;
}

ParabolicDatum::ParabolicDatum(const RootDatum& datum, std::vector<int> subset)
    : datum_(&datum), subset_(std::move(subset)) {
  const int r = datum.rank();
  std::sort(subset_.begin(), subset_.end());
  subset_.erase(std::unique(subset_.begin(), subset_.end()), subset_.end());
  for (int i : subset_)
    if (i < 0 || i >= r) throw std::out_of_range("simple root index out of range");

  levi_flag_.assign(datum.num_positive_roots(), 0);
  for (int k = 0; k < datum.num_positive_roots(); ++k) {
    bool in = true;
    for (int i = 0; i < r; ++i)
      if (datum.positive_roots()[k].root_coords[i] != 0 && !contains(i)) in = false;
    if (in) {
      levi_flag_[k] = 1;
      levi_roots_.push_back(k);
    }
  }
  for (int w = 0; w < datum.weyl_order(); ++w) {
    const auto& word = datum.weyl(w).word;
    if (std::all_of(word.begin(), word.end(), [&](int i) { return contains(i); }))
      levi_weyl_.push_back(w);
  }
  w_I_ = levi_weyl_.front();
  for (int w : levi_weyl_)
    if (datum.weyl(w).length > datum.weyl(w_I_).length) w_I_ = w;
  w_upper_ = datum.weyl_mul(datum.longest(), w_I_);

  for (int w = 0; w < datum.weyl_order(); ++w) {
    bool ok = true;
    for (int v : levi_weyl_)
      if (datum.weyl(datum.weyl_mul(w, v)).length != datum.weyl(w).length + datum.weyl(v).length) {
        ok = false;
        break;
      }
    if (ok) min_reps_.push_back(w);
  }

  two_rho_I_.assign(r, 0);
  Weight two_rho(r, 2);
  for (int k : levi_roots_)
    for (int i = 0; i < r; ++i) two_rho_I_[i] += datum.positive_roots()[k].weight[i];
  two_rho_P_.assign(r, 0);
  for (int i = 0; i < r; ++i) two_rho_P_[i] = two_rho[i] - two_rho_I_[i];

  Weight check = datum.act(w_I_, datum.rho());
  for (int i = 0; i < r; ++i) check[i] += 1;
  if (check != two_rho_P_) throw std::logic_error("parabolic datum: 2rho_P != w_I rho + rho");
  const int h = datum.coxeter_number();
  for (int i = 0; i < r; ++i) {
    long long v = two_rho_P_[i];
    if (contains(i) ? v != 0 : (v < 2 || v > h))
      throw std::logic_error("parabolic datum: <2rho_P, alpha_i^vee> out of range");
  }
  if (datum.weyl(w_upper_).length != datum.weyl(datum.longest()).length - datum.weyl(w_I_).length)
    throw std::logic_error("parabolic datum: length of w^I");
  if (min_reps_.size() * levi_weyl_.size() != static_cast<std::size_t>(datum.weyl_order()))
    throw std::logic_error("parabolic datum: coset count");
}

bool ParabolicDatum::contains(int i) const {
  return std::binary_search(subset_.begin(), subset_.end(), i);
}

bool ParabolicDatum::is_levi_root(int root) const { return levi_flag_[root] != 0; }

std::optional<RootDatum> ParabolicDatum::levi_datum() const {
  if (subset_.empty()) return std::nullopt;
  IntMatrix sub;
  for (int i : subset_) {
    std::vector<long long> row;
    for (int j : subset_) row.push_back(datum_->cartan()[i][j]);
    sub.push_back(row);
  }
  std::string label;
  const int n = static_cast<int>(sub.size());
  if (n == 1) {
    label = "A1";
  } else if (n == 2) {
    long long prod = sub[0][1] * sub[1][0];
    label = prod == 0 ? "A1xA1" : prod == 1 ? "A2" : prod == 2 ? "B2" : "G2";
  } else {
    label = datum_->label();
  }
  return RootDatum::from_cartan(label, sub);
}

std::string format_weight(const Weight& w) {
  std::ostringstream os;
  os << '(';
  for (std::size_t i = 0; i < w.size(); ++i) os << (i ? "," : "") << w[i];
  os << ')';
  return os.str();
}

std::string format_subset(const std::vector<int>& subset) {
  std::ostringstream os;
  for (std::size_t i = 0; i < subset.size(); ++i) os << (i ? "," : "") << subset[i] + 1;
  return os.str();
}

}  // namespace loewy
