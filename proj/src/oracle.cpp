#include "loewy/oracle.hpp"

#include <algorithm>
#include <numeric>

namespace loewy::oracle {

namespace {

int modp(long long x, int p) {
  x %= p;
  return static_cast<int>(x < 0 ? x + p : x);
}

int inverse(int a, int p) {
  long long r = 1, b = a, e = p - 2;
  while (e > 0) {
    if (e & 1) r = r * b % p;
    b = b * b % p;
    e >>= 1;
  }
  return static_cast<int>(r);
}

// Subspace of F_p^n kept in reduced row echelon form.
class Echelon {
 public:
  Echelon(int n, int p) : n_(n), p_(p) {}

  void reduce(Vec& v) const {
    for (std::size_t r = 0; r < rows_.size(); ++r) {
      const int c = piv_[r];
      if (v[c] == 0) continue;
      const int f = v[c];
      const Vec& row = rows_[r];
      for (int k = 0; k < n_; ++k)
        if (row[k] != 0) v[k] = modp(v[k] - static_cast<long long>(f) * row[k], p_);
    }
  }

  bool insert(Vec v) {
    reduce(v);
    int c = 0;
    while (c < n_ && v[c] == 0) ++c;
    if (c == n_) return false;
    const int s = inverse(v[c], p_);
    for (int& x : v) x = static_cast<int>(static_cast<long long>(x) * s % p_);
    for (Vec& row : rows_) {
      if (row[c] == 0) continue;
      const int f = row[c];
      for (int k = 0; k < n_; ++k)
        if (v[k] != 0) row[k] = modp(row[k] - static_cast<long long>(f) * v[k], p_);
    }
    rows_.push_back(std::move(v));
    piv_.push_back(c);
    return true;
  }

  int size() const { return static_cast<int>(rows_.size()); }
  const std::vector<Vec>& rows() const { return rows_; }
  const std::vector<int>& pivots() const { return piv_; }

  // Basis of {x : row . x = 0 for all rows}.
  std::vector<Vec> kernel() const {
    std::vector<char> is_pivot(n_, 0);
    for (int c : piv_) is_pivot[c] = 1;
    std::vector<Vec> out;
    for (int fcol = 0; fcol < n_; ++fcol) {
      if (is_pivot[fcol]) continue;
      Vec x(n_, 0);
      x[fcol] = 1;
      for (std::size_t r = 0; r < rows_.size(); ++r) x[piv_[r]] = modp(-rows_[r][fcol], p_);
      out.push_back(std::move(x));
    }
    return out;
  }

 private:
  int n_, p_;
  std::vector<Vec> rows_;
  std::vector<int> piv_;
};

Weight simple_root(Algebra g, int i) {
  if (g == Algebra::sl2) return {2};
  return i == 0 ? Weight{2, -1} : Weight{-1, 2};
}

Vec unit(int n, int j) {
  Vec v(n, 0);
  v[j] = 1;
  return v;
}

SparseAction to_sparse(const std::vector<Vec>& cols) {
  SparseAction s(cols.size());
  for (std::size_t j = 0; j < cols.size(); ++j)
    for (std::size_t r = 0; r < cols[j].size(); ++r)
      if (cols[j][r] != 0) s[j].emplace_back(static_cast<int>(r), cols[j][r]);
  return s;
}

SparseAction transpose(const SparseAction& a) {
  SparseAction t(a.size());
  for (std::size_t j = 0; j < a.size(); ++j)
    for (auto [r, v] : a[j]) t[r].emplace_back(static_cast<int>(j), v);
  return t;
}

long long level(const Weight& top, const Weight& w) {
  long long s = 0;
  for (std::size_t i = 0; i < w.size(); ++i) s += top[i] - w[i];
  return s;
}

// Index of the unique highest weight vector, or -1.
int top_vector(const FpModule& m) {
  auto spaces = m.weight_spaces();
  int found = -1;
  for (const auto& [w, idx] : spaces) {
    bool maximal = true;
    for (int i = 0; i < m.rank() && maximal; ++i)
      if (spaces.count(weight_add(w, simple_root(m.algebra, i)))) maximal = false;
    if (!maximal) continue;
    if (found >= 0 || idx.size() != 1) return -1;
    found = idx[0];
  }
  return found;
}

// {x in span(indices) : the top weight component of u(n_gens^+) x vanishes}, for a
// coordinate subspace stable under e_i, i in gens.  Weights are processed downwards.
std::vector<Vec> top_radical(const FpModule& m, int top, const std::vector<int>& indices,
                             const std::vector<int>& gens) {
  const int n = m.dim();
  const Weight& mu = m.weights[top];
  std::map<long long, std::map<Weight, std::vector<int>>> by_level;
  for (int j : indices) by_level[level(mu, m.weights[j])][m.weights[j]].push_back(j);
  Echelon rad(n, m.p);
  std::vector<Vec> out;
  for (const auto& [lev, spaces] : by_level) {
    if (lev == 0) continue;
    std::vector<Vec> found;
    for (const auto& [w, J] : spaces) {
      const int k = static_cast<int>(J.size());
      Echelon cons(k, m.p);
      for (int i : gens) {
        std::vector<Vec> images;
        for (int j : J) {
          Vec v = m.apply(m.e[i], unit(n, j));
          rad.reduce(v);
          images.push_back(std::move(v));
        }
        for (int s = 0; s < n; ++s) {
          Vec row(k);
          bool any = false;
          for (int t = 0; t < k; ++t) any |= (row[t] = images[t][s]) != 0;
          if (any) cons.insert(std::move(row));
        }
      }
      for (const Vec& x : cons.kernel()) {
        Vec v(n, 0);
        for (int t = 0; t < k; ++t) v[J[t]] = x[t];
        found.push_back(std::move(v));
      }
    }
    for (Vec& v : found) {
      out.push_back(v);
      rad.insert(std::move(v));
    }
  }
  return out;
}

// Graded maps L -> M: a basis of the solution space, each map recorded by the images
// of a spanning set of L.
struct Embeddings {
  int dim = 0;
  std::vector<Vec> images;
};

Embeddings embeddings(const FpModule& L, const FpModule& M) {
  Embeddings out;
  const int top = top_vector(L);
  if (top < 0) throw NotHighestWeight("hom_space expects a simple source module");
  const int nl = L.dim(), nm = M.dim();
  const auto mspaces = M.weight_spaces();
  auto it = mspaces.find(L.weights[top]);
  if (it == mspaces.end()) return out;
  const std::vector<int>& J = it->second;
  const int k = static_cast<int>(J.size());

  // Basis of L by f-words: b_0 = v+, b_c = f_gen b_parent.
  std::vector<Vec> basis{unit(nl, top)};
  std::vector<std::pair<int, int>> origin{{-1, -1}};
  Echelon span(nl, L.p);
  span.insert(basis[0]);
  for (std::size_t c = 0; c < basis.size(); ++c)
    for (int i = 0; i < L.rank(); ++i) {
      Vec u = L.apply(L.f[i], basis[c]);
      if (span.insert(u)) {
        basis.push_back(std::move(u));
        origin.emplace_back(static_cast<int>(c), i);
      }
    }
  if (static_cast<int>(basis.size()) != nl)
    throw NotHighestWeight("hom_space expects a module generated by its top vector");

  // Coordinates in the f-word basis: invert the matrix with columns basis[c].
  Matrix aug(nl, Vec(2 * nl, 0));
  for (int c = 0; c < nl; ++c)
    for (int r = 0; r < nl; ++r) aug[r][c] = basis[c][r];
  for (int r = 0; r < nl; ++r) aug[r][nl + r] = 1;
  for (int c = 0; c < nl; ++c) {
    int piv = c;
    while (aug[piv][c] == 0) ++piv;
    std::swap(aug[piv], aug[c]);
    const int s = inverse(aug[c][c], L.p);
    for (int& x : aug[c]) x = static_cast<int>(static_cast<long long>(x) * s % L.p);
    for (int r = 0; r < nl; ++r) {
      if (r == c || aug[r][c] == 0) continue;
      const int f = aug[r][c];
      for (int t = 0; t < 2 * nl; ++t)
        if (aug[c][t] != 0) aug[r][t] = modp(aug[r][t] - static_cast<long long>(f) * aug[c][t], L.p);
    }
  }
  auto coords = [&](const Vec& w) {
    Vec c(nl, 0);
    for (int r = 0; r < nl; ++r) {
      long long s = 0;
      for (int t = 0; t < nl; ++t)
        if (w[t] != 0) s += static_cast<long long>(aug[r][nl + t]) * w[t];
      c[r] = modp(s, L.p);
    }
    return c;
  };

  // T[c][t]: image of b_c under the map sending v+ to the t-th basis vector of M_mu.
  std::vector<std::vector<Vec>> T(nl);
  for (int t = 0; t < k; ++t) T[0].push_back(unit(nm, J[t]));
  for (int c = 1; c < nl; ++c)
    for (int t = 0; t < k; ++t) T[c].push_back(M.apply(M.f[origin[c].second], T[origin[c].first][t]));

  Echelon cons(k, M.p);
  for (int c = 0; c < nl && cons.size() < k; ++c)
    for (int gi = 0; gi < 2 * L.rank() && cons.size() < k; ++gi) {
      const bool is_e = gi < L.rank();
      const int i = gi % L.rank();
      const Vec cl = coords(L.apply(is_e ? L.e[i] : L.f[i], basis[c]));
      std::vector<Vec> lhs;
      for (int t = 0; t < k; ++t) {
        Vec v = M.apply(is_e ? M.e[i] : M.f[i], T[c][t]);
        for (int l = 0; l < nl; ++l) {
          if (cl[l] == 0) continue;
          for (int s = 0; s < nm; ++s)
            if (T[l][t][s] != 0) v[s] = modp(v[s] - static_cast<long long>(cl[l]) * T[l][t][s], M.p);
        }
        lhs.push_back(std::move(v));
      }
      for (int s = 0; s < nm; ++s) {
        Vec row(k);
        bool any = false;
        for (int t = 0; t < k; ++t) any |= (row[t] = lhs[t][s]) != 0;
        if (any) cons.insert(std::move(row));
      }
    }
  const std::vector<Vec> ker = cons.kernel();
  out.dim = static_cast<int>(ker.size());
  for (const Vec& x : ker)
    for (int c = 0; c < nl; ++c) {
      Vec v(nm, 0);
      for (int t = 0; t < k; ++t) {
        if (x[t] == 0) continue;
        for (int s = 0; s < nm; ++s)
          if (T[c][t][s] != 0) v[s] = modp(v[s] + static_cast<long long>(x[t]) * T[c][t][s], M.p);
      }
      out.images.push_back(std::move(v));
    }
  return out;
}

FpModule verma_sl2(long long mu, int p) {
  FpModule m;
  m.p = p;
  m.algebra = Algebra::sl2;
  std::vector<Vec> e(p, Vec(p, 0)), f(p, Vec(p, 0));
  for (int a = 0; a < p; ++a) {
    m.labels.push_back("f^" + std::to_string(a));
    m.weights.push_back({mu - 2 * a});
    if (a + 1 < p) f[a][a + 1] = 1;
    if (a >= 1) e[a][a - 1] = modp(static_cast<long long>(a) * (mu - a + 1), p);
  }
  m.e = {to_sparse(e)};
  m.f = {to_sparse(f)};
  return m;
}

// Basis f1^a f3^b f2^c v+ with f3 = [f2, f1].
FpModule verma_sl3(const Weight& mu, int p) {
  FpModule m;
  m.p = p;
  m.algebra = Algebra::sl3;
  const int n = p * p * p;
  auto idx = [p](int a, int b, int c) { return (a * p + b) * p + c; };
  std::vector<Vec> f1(n, Vec(n, 0)), f2(n, Vec(n, 0)), f3(n, Vec(n, 0));
  for (int a = 0; a < p; ++a)
    for (int b = 0; b < p; ++b)
      for (int c = 0; c < p; ++c) {
        const int j = idx(a, b, c);
        m.labels.push_back("f1^" + std::to_string(a) + " f12^" + std::to_string(b) + " f2^" +
                           std::to_string(c));
        m.weights.push_back({mu[0] - 2 * a - b + c, mu[1] + a - b - 2 * c});
        if (a + 1 < p) f1[j][idx(a + 1, b, c)] = 1;
        if (b + 1 < p) f3[j][idx(a, b + 1, c)] = 1;
        if (c + 1 < p) f2[j][idx(a, b, c + 1)] = 1;
        if (a >= 1 && b + 1 < p) f2[j][idx(a - 1, b + 1, c)] = modp(a, p);
      }
  auto act = [&](const std::vector<Vec>& g, const Vec& v) {
    Vec out(n, 0);
    for (int j = 0; j < n; ++j) {
      if (v[j] == 0) continue;
      for (int r = 0; r < n; ++r)
        if (g[j][r] != 0) out[r] = modp(out[r] + static_cast<long long>(v[j]) * g[j][r], p);
    }
    return out;
  };
  auto h = [&](int i, int j) { return modp(m.weights[j][i], p); };
  std::vector<Vec> e1(n), e2(n);
  for (int a = 0; a < p; ++a)
    for (int b = 0; b < p; ++b)
      for (int c = 0; c < p; ++c) {
        const int j = idx(a, b, c);
        if (j == 0) {
          e1[0] = e2[0] = Vec(n, 0);
          continue;
        }
        // e_i (f m') = f (e_i m') + [e_i, f] m'
        if (a > 0) {
          const int mp = idx(a - 1, b, c);
          e1[j] = act(f1, e1[mp]);
          e1[j][mp] = modp(e1[j][mp] + h(0, mp), p);
          e2[j] = act(f1, e2[mp]);
        } else if (b > 0) {
          const int mp = idx(0, b - 1, c);
          e1[j] = act(f3, e1[mp]);
          for (int r = 0; r < n; ++r) e1[j][r] = modp(e1[j][r] - f2[mp][r], p);
          e2[j] = act(f3, e2[mp]);
          for (int r = 0; r < n; ++r) e2[j][r] = modp(e2[j][r] + f1[mp][r], p);
        } else {
          const int mp = idx(0, 0, c - 1);
          e1[j] = act(f2, e1[mp]);
          e2[j] = act(f2, e2[mp]);
          e2[j][mp] = modp(e2[j][mp] + h(1, mp), p);
        }
      }
  m.e = {to_sparse(e1), to_sparse(e2)};
  m.f = {to_sparse(f1), to_sparse(f2)};
  return m;
}

}  // namespace

Algebra algebra_from_label(std::string_view label) {
  if (label == "sl2" || label == "A1") return Algebra::sl2;
  if (label == "sl3" || label == "A2") return Algebra::sl3;
  throw UnsupportedAlgebra("oracle supports sl2 and sl3 only, got " + std::string(label));
}

int algebra_rank(Algebra g) { return g == Algebra::sl2 ? 1 : 2; }

Vec FpModule::apply(const SparseAction& g, const Vec& v) const {
  Vec out(dim(), 0);
  for (int j = 0; j < dim(); ++j) {
    if (v[j] == 0) continue;
    for (auto [r, x] : g[j]) out[r] = modp(out[r] + static_cast<long long>(v[j]) * x, p);
  }
  return out;
}

Matrix FpModule::dense(const SparseAction& g) const {
  Matrix m(dim(), Vec(dim(), 0));
  for (int j = 0; j < dim(); ++j)
    for (auto [r, x] : g[j]) m[r][j] = x;
  return m;
}

std::map<Weight, std::vector<int>> FpModule::weight_spaces() const {
  std::map<Weight, std::vector<int>> out;
  for (int j = 0; j < dim(); ++j) out[weights[j]].push_back(j);
  return out;
}

std::vector<std::string> FpModule::axiom_violations() const {
  std::vector<std::string> bad;
  const int n = dim();
  for (int i = 0; i < rank(); ++i) {
    const Weight a = simple_root(algebra, i);
    for (int j = 0; j < n; ++j) {
      for (auto [r, x] : e[i][j])
        if (weights[r] != weight_add(weights[j], a)) bad.push_back("e" + std::to_string(i + 1) + " not graded");
      for (auto [r, x] : f[i][j])
        if (weights[r] != weight_sub(weights[j], a)) bad.push_back("f" + std::to_string(i + 1) + " not graded");
      Vec ve = unit(n, j), vf = unit(n, j);
      for (int k = 0; k < p; ++k) {
        ve = apply(e[i], ve);
        vf = apply(f[i], vf);
      }
      if (std::any_of(ve.begin(), ve.end(), [](int x) { return x != 0; }))
        bad.push_back("e" + std::to_string(i + 1) + "^p != 0");
      if (std::any_of(vf.begin(), vf.end(), [](int x) { return x != 0; }))
        bad.push_back("f" + std::to_string(i + 1) + "^p != 0");
    }
    for (int k = 0; k < rank(); ++k)
      for (int j = 0; j < n; ++j) {
        const Vec v = unit(n, j);
        Vec c = apply(e[i], apply(f[k], v));
        const Vec d = apply(f[k], apply(e[i], v));
        for (int r = 0; r < n; ++r) c[r] = modp(c[r] - d[r], p);
        if (i == k) c[j] = modp(c[j] - weights[j][i], p);
        if (std::any_of(c.begin(), c.end(), [](int x) { return x != 0; }))
          bad.push_back("[e" + std::to_string(i + 1) + ", f" + std::to_string(k + 1) + "] wrong");
      }
  }
  std::sort(bad.begin(), bad.end());
  bad.erase(std::unique(bad.begin(), bad.end()), bad.end());
  return bad;
}

FpModule verma_module(Algebra g, const Weight& mu, int p) {
  if (static_cast<int>(mu.size()) != algebra_rank(g))
    throw std::invalid_argument("weight has the wrong rank");
  return g == Algebra::sl2 ? verma_sl2(mu[0], p) : verma_sl3(mu, p);
}

FpModule baby_verma(Algebra g, const Weight& mu, int p) { return tau_dual(verma_module(g, mu, p)); }

std::vector<Vec> generated_submodule(const FpModule& m, const std::vector<Vec>& gens) {
  const int n = m.dim();
  Echelon span(n, m.p);
  std::vector<Vec> queue;
  for (const Vec& g : gens) {
    std::map<Weight, Vec> parts;
    for (int j = 0; j < n; ++j)
      if (g[j] != 0) {
        auto [it, fresh] = parts.try_emplace(m.weights[j], Vec(n, 0));
        it->second[j] = g[j];
      }
    for (auto& [w, v] : parts)
      if (span.insert(v)) queue.push_back(v);
  }
  for (std::size_t h = 0; h < queue.size(); ++h)
    for (int i = 0; i < m.rank(); ++i)
      for (const SparseAction* g : {&m.e[i], &m.f[i]}) {
        Vec u = m.apply(*g, queue[h]);
        if (span.insert(u)) queue.push_back(std::move(u));
      }
  return span.rows();
}

FpModule quotient(const FpModule& m, const std::vector<Vec>& sub) {
  const int n = m.dim();
  Echelon s(n, m.p);
  for (const Vec& v : sub) s.insert(v);
  std::vector<char> pivot(n, 0);
  for (int c : s.pivots()) pivot[c] = 1;
  std::vector<int> keep, pos(n, -1);
  for (int j = 0; j < n; ++j)
    if (!pivot[j]) {
      pos[j] = static_cast<int>(keep.size());
      keep.push_back(j);
    }
  FpModule q;
  q.p = m.p;
  q.algebra = m.algebra;
  for (int j : keep) {
    q.labels.push_back(m.labels[j]);
    q.weights.push_back(m.weights[j]);
  }
  auto induced = [&](const SparseAction& g) {
    SparseAction out(keep.size());
    for (std::size_t t = 0; t < keep.size(); ++t) {
      Vec v = m.apply(g, unit(n, keep[t]));
      s.reduce(v);
      for (int r = 0; r < n; ++r)
        if (v[r] != 0) out[t].emplace_back(pos[r], v[r]);
    }
    return out;
  };
  for (int i = 0; i < m.rank(); ++i) {
    q.e.push_back(induced(m.e[i]));
    q.f.push_back(induced(m.f[i]));
  }
  return q;
}

FpModule simple_head(const FpModule& m) {
  const int top = top_vector(m);
  if (top < 0) throw NotHighestWeight("module has no unique one-dimensional top weight");
  // Otherwise the top vector spans a proper submodule with the same simple head.
  if (static_cast<int>(generated_submodule(m, {unit(m.dim(), top)}).size()) != m.dim())
    return simple_head(verma_module(m.algebra, m.weights[top], m.p));
  std::vector<int> all(m.dim()), gens(m.rank());
  std::iota(all.begin(), all.end(), 0);
  std::iota(gens.begin(), gens.end(), 0);
  return quotient(m, top_radical(m, top, all, gens));
}

FpModule simple_module(Algebra g, const Weight& mu, int p) { return simple_head(verma_module(g, mu, p)); }

FpModule tau_dual(const FpModule& m) {
  FpModule d;
  d.p = m.p;
  d.algebra = m.algebra;
  d.weights = m.weights;
  for (const auto& l : m.labels) d.labels.push_back(l + "*");
  for (int i = 0; i < m.rank(); ++i) {
    d.e.push_back(transpose(m.f[i]));
    d.f.push_back(transpose(m.e[i]));
  }
  return d;
}

FpModule induce_parabolic(Algebra g, const std::vector<int>& I, const Weight& lambda, int p) {
  FpModule verma = verma_module(g, lambda, p);
  for (int i : I)
    if (i < 0 || i >= algebra_rank(g)) throw std::invalid_argument("Levi index out of range");
  if (I.empty()) return tau_dual(verma);
  // The Levi baby Verma u(n_I^-) v+ is spanned by the basis vectors whose weight
  // differs from lambda by a combination of alpha_i, i in I.
  std::vector<int> indices;
  for (int j = 0; j < verma.dim(); ++j) {
    const Weight d = weight_sub(lambda, verma.weights[j]);
    Weight coords;
    if (g == Algebra::sl2) {
      coords = {d[0] / 2};
    } else {
      coords = {(2 * d[0] + d[1]) / 3, (d[0] + 2 * d[1]) / 3};
    }
    bool inside = true;
    for (int i = 0; i < algebra_rank(g); ++i)
      if (std::find(I.begin(), I.end(), i) == I.end() && coords[i] != 0) inside = false;
    if (inside) indices.push_back(j);
  }
  const std::vector<Vec> rad = top_radical(verma, 0, indices, I);
  return tau_dual(quotient(verma, generated_submodule(verma, rad)));
}

int hom_space(const FpModule& L, const FpModule& M) { return embeddings(L, M).dim; }

Layers socle_series(const FpModule& m0) {
  Layers layers;
  std::map<Weight, FpModule> simples;
  FpModule m = m0;
  while (m.dim() > 0) {
    std::map<Weight, int> layer;
    std::vector<Vec> images;
    const int n = m.dim();
    for (const auto& [w, J] : m.weight_spaces()) {
      const int k = static_cast<int>(J.size());
      Echelon cons(k, m.p);
      for (int i = 0; i < m.rank(); ++i) {
        std::vector<Vec> cols;
        for (int j : J) cols.push_back(m.apply(m.e[i], unit(n, j)));
        for (int s = 0; s < n; ++s) {
          Vec row(k);
          bool any = false;
          for (int t = 0; t < k; ++t) any |= (row[t] = cols[t][s]) != 0;
          if (any) cons.insert(std::move(row));
        }
      }
      if (cons.size() == k) continue;  // no primitive vectors
      auto it = simples.find(w);
      if (it == simples.end()) it = simples.emplace(w, simple_module(m.algebra, w, m.p)).first;
      Embeddings emb = embeddings(it->second, m);
      if (emb.dim == 0) continue;
      layer[w] = emb.dim;
      images.insert(images.end(), emb.images.begin(), emb.images.end());
    }
    if (layer.empty()) throw std::logic_error("nonzero module with zero socle");
    layers.push_back(std::move(layer));
    m = quotient(m, generated_submodule(m, images));
  }
  return layers;
}

}  // namespace loewy::oracle
