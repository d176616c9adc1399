#pragma once
// Dense tensors over R^n in an orthonormal frame, rank 0..4, dimension 2..8.
// Indices are 0-based here; the JSON boundary converts from 1-based input.
// All index gymnastics (contraction, alternation, wedge, interior, flat Hodge
// star) live here so the geometry code never loops over raw permutations.

#include <algorithm>
#include <array>
#include <cstdint>
#include <stdexcept>
#include <utility>
#include <vector>

#include "skewtor/rational.hpp"

namespace skewtor {

inline constexpr int kMinDim = 2;
inline constexpr int kMaxDim = 8;
inline constexpr int kMaxRank = 4;

inline void check_dim(int n) {
  if (n < kMinDim || n > kMaxDim) throw std::invalid_argument("dimension out of range [2,8]");
}

template <class S>
class Tensor {
 public:
  Tensor() = default;
  Tensor(int n, int rank) : n_(n), rank_(rank) {
    check_dim(n);
    if (rank < 0 || rank > kMaxRank) throw std::invalid_argument("rank out of range [0,4]");
    std::size_t sz = 1;
    for (int r = 0; r < rank; ++r) sz *= static_cast<std::size_t>(n);
    c_.assign(sz, S(0));
  }

  int dim() const { return n_; }
  int rank() const { return rank_; }
  std::size_t size() const { return c_.size(); }

  S& operator()() { return c_[0]; }
  const S& operator()() const { return c_[0]; }
  S& operator()(int i) { return c_[static_cast<std::size_t>(i)]; }
  const S& operator()(int i) const { return c_[static_cast<std::size_t>(i)]; }
  S& operator()(int i, int j) { return c_[static_cast<std::size_t>(i * n_ + j)]; }
  const S& operator()(int i, int j) const { return c_[static_cast<std::size_t>(i * n_ + j)]; }
  S& operator()(int i, int j, int k) {
    return c_[static_cast<std::size_t>((i * n_ + j) * n_ + k)];
  }
  const S& operator()(int i, int j, int k) const {
    return c_[static_cast<std::size_t>((i * n_ + j) * n_ + k)];
  }
  S& operator()(int i, int j, int k, int l) {
    return c_[static_cast<std::size_t>(((i * n_ + j) * n_ + k) * n_ + l)];
  }
  const S& operator()(int i, int j, int k, int l) const {
    return c_[static_cast<std::size_t>(((i * n_ + j) * n_ + k) * n_ + l)];
  }

  S& at_flat(std::size_t pos) { return c_[pos]; }
  const S& at_flat(std::size_t pos) const { return c_[pos]; }
  S& at_idx(const std::array<int, kMaxRank>& idx) { return c_[flatten(idx)]; }
  const S& at_idx(const std::array<int, kMaxRank>& idx) const { return c_[flatten(idx)]; }

  std::size_t flatten(const std::array<int, kMaxRank>& idx) const {
    std::size_t pos = 0;
    for (int r = 0; r < rank_; ++r) pos = pos * static_cast<std::size_t>(n_) + static_cast<std::size_t>(idx[static_cast<std::size_t>(r)]);
    return pos;
  }

  Tensor& operator+=(const Tensor& o) {
    for (std::size_t p = 0; p < c_.size(); ++p) c_[p] += o.c_[p];
    return *this;
  }
  Tensor& operator-=(const Tensor& o) {
    for (std::size_t p = 0; p < c_.size(); ++p) c_[p] -= o.c_[p];
    return *this;
  }
  Tensor& operator*=(const S& s) {
    for (auto& v : c_) v *= s;
    return *this;
  }
  friend Tensor operator+(Tensor a, const Tensor& b) { return a += b; }
  friend Tensor operator-(Tensor a, const Tensor& b) { return a -= b; }
  friend Tensor operator*(const S& s, Tensor a) { return a *= s; }

  bool operator==(const Tensor& o) const { return n_ == o.n_ && rank_ == o.rank_ && c_ == o.c_; }

 private:
  int n_ = 0;
  int rank_ = 0;
  std::vector<S> c_;
};

// Visit every multi-index of a rank-r tensor in row-major order.
template <class Fn>
void for_each_index(int n, int rank, Fn&& fn) {
  std::array<int, kMaxRank> idx{0, 0, 0, 0};
  if (rank == 0) {
    fn(idx);
    return;
  }
  while (true) {
    fn(idx);
    int r = rank - 1;
    while (r >= 0 && ++idx[static_cast<std::size_t>(r)] == n) {
      idx[static_cast<std::size_t>(r)] = 0;
      --r;
    }
    if (r < 0) break;
  }
}

template <class S>
S max_abs_val(const Tensor<S>& t) {
  S best(0);
  for (std::size_t p = 0; p < t.size(); ++p) {
    S a = scalar_traits<S>::abs(t.at_flat(p));
    if (best < a) best = a;
  }
  return best;
}

template <class S>
bool is_exactly_zero(const Tensor<S>& t) {
  for (std::size_t p = 0; p < t.size(); ++p)
    if (!scalar_traits<S>::is_zero(t.at_flat(p))) return false;
  return true;
}

// ---- permutations -----------------------------------------------------------

// sign of a permutation given as the array p[0..k-1]; 0 if repeated entries
inline int perm_sign(const int* p, int k) {
  int sign = 1;
  for (int a = 0; a < k; ++a)
    for (int b = a + 1; b < k; ++b) {
      if (p[a] == p[b]) return 0;
      if (p[a] > p[b]) sign = -sign;
    }
  return sign;
}

// ---- contraction ------------------------------------------------------------

// General pairwise contraction: sums over pairs (slot of a, slot of b); the
// result keeps a's free slots (in order) followed by b's free slots.
template <class S>
Tensor<S> contract(const Tensor<S>& a, const Tensor<S>& b,
                   const std::vector<std::pair<int, int>>& pairs) {
  if (a.dim() != b.dim()) throw std::invalid_argument("contract: dimension mismatch");
  const int n = a.dim();
  const int np = static_cast<int>(pairs.size());
  std::array<bool, kMaxRank> ua{}, ub{};
  for (auto [sa, sb] : pairs) {
    if (sa < 0 || sa >= a.rank() || sb < 0 || sb >= b.rank())
      throw std::invalid_argument("contract: slot out of range");
    if (ua[static_cast<std::size_t>(sa)] || ub[static_cast<std::size_t>(sb)])
      throw std::invalid_argument("contract: repeated slot");
    ua[static_cast<std::size_t>(sa)] = ub[static_cast<std::size_t>(sb)] = true;
  }
  const int rout = a.rank() + b.rank() - 2 * np;
  if (rout > kMaxRank) throw std::invalid_argument("contract: result rank exceeds 4");

  std::vector<int> fa, fb;  // free slots
  for (int r = 0; r < a.rank(); ++r)
    if (!ua[static_cast<std::size_t>(r)]) fa.push_back(r);
  for (int r = 0; r < b.rank(); ++r)
    if (!ub[static_cast<std::size_t>(r)]) fb.push_back(r);

  Tensor<S> out(n, rout);
  std::array<int, kMaxRank> ia{}, ib{}, sum{};
  for_each_index(n, rout, [&](const std::array<int, kMaxRank>& fi) {
    S acc(0);
    // odometer over the contracted index tuple
    for_each_index(n, np, [&](const std::array<int, kMaxRank>& si) {
      for (std::size_t q = 0; q < static_cast<std::size_t>(np); ++q) sum[q] = si[q];
      for (std::size_t q = 0; q < fa.size(); ++q) ia[static_cast<std::size_t>(fa[q])] = fi[q];
      for (std::size_t q = 0; q < fb.size(); ++q)
        ib[static_cast<std::size_t>(fb[q])] = fi[fa.size() + q];
      for (int q = 0; q < np; ++q) {
        ia[static_cast<std::size_t>(pairs[static_cast<std::size_t>(q)].first)] = sum[static_cast<std::size_t>(q)];
        ib[static_cast<std::size_t>(pairs[static_cast<std::size_t>(q)].second)] = sum[static_cast<std::size_t>(q)];
      }
      acc += a.at_idx(ia) * b.at_idx(ib);
    });
    out.at_idx(fi) = acc;
  });
  return out;
}

// Self-contraction of two slots, e.g. trace2(T2, 0, 1) is the matrix trace.
template <class S>
Tensor<S> trace2(const Tensor<S>& a, int s1, int s2) {
  if (s1 == s2 || s1 < 0 || s2 < 0 || s1 >= a.rank() || s2 >= a.rank())
    throw std::invalid_argument("trace2: bad slots");
  if (s1 > s2) std::swap(s1, s2);
  const int n = a.dim();
  Tensor<S> out(n, a.rank() - 2);
  std::array<int, kMaxRank> ia{};
  for_each_index(n, a.rank() - 2, [&](const std::array<int, kMaxRank>& fi) {
    S acc(0);
    for (int s = 0; s < n; ++s) {
      int q = 0;
      for (int r = 0; r < a.rank(); ++r) {
        if (r == s1 || r == s2)
          ia[static_cast<std::size_t>(r)] = s;
        else
          ia[static_cast<std::size_t>(r)] = fi[static_cast<std::size_t>(q++)];
      }
      acc += a.at_idx(ia);
    }
    out.at_idx(fi) = acc;
  });
  return out;
}

// ---- alternating structure --------------------------------------------------

// Full antisymmetrization with the 1/p! normalization, so alternate is a
// projection (idempotent) and fixes alternating tensors.
template <class S>
Tensor<S> alternate(const Tensor<S>& t) {
  const int n = t.dim();
  const int p = t.rank();
  Tensor<S> out(n, p);
  if (p <= 1) return t;
  std::array<int, kMaxRank> order{};
  std::array<int, kMaxRank> src{};
  long fact = 1;
  for (int r = 2; r <= p; ++r) fact *= r;
  const S inv = frac<S>(1, fact);
  for_each_index(n, p, [&](const std::array<int, kMaxRank>& idx) {
    for (int r = 0; r < p; ++r) order[static_cast<std::size_t>(r)] = r;
    S acc(0);
    // iterate permutations of the p slots
    do {
      int sgn = perm_sign(order.data(), p);
      for (int r = 0; r < p; ++r) src[static_cast<std::size_t>(r)] = idx[static_cast<std::size_t>(order[static_cast<std::size_t>(r)])];
      if (sgn > 0)
        acc += t.at_idx(src);
      else
        acc -= t.at_idx(src);
    } while (std::next_permutation(order.begin(), order.begin() + p));
    out.at_idx(idx) = inv * acc;
  });
  return out;
}

template <class S>
bool is_alternating(const Tensor<S>& t) {
  return alternate(t) == t;
}

// Interior product e_j -| t : drop the first slot at value j.
template <class S>
Tensor<S> interior(int j, const Tensor<S>& t) {
  if (t.rank() < 1) throw std::invalid_argument("interior: rank 0");
  const int n = t.dim();
  Tensor<S> out(n, t.rank() - 1);
  std::array<int, kMaxRank> ia{};
  for_each_index(n, t.rank() - 1, [&](const std::array<int, kMaxRank>& fi) {
    ia[0] = j;
    for (int r = 1; r < t.rank(); ++r) ia[static_cast<std::size_t>(r)] = fi[static_cast<std::size_t>(r - 1)];
    out.at_idx(fi) = t.at_idx(ia);
  });
  return out;
}

// Wedge of alternating forms in the determinant (shuffle) convention:
// (a ^ b)(X_1..X_{p+q}) = sum over (p,q)-shuffles of sign * a(...) b(...).
// With this convention (e1^e2)(e1,e2) = 1 and the 4-form sigma built from
// 2-form squares matches its component formula with no extra factors.
template <class S>
Tensor<S> wedge(const Tensor<S>& a, const Tensor<S>& b) {
  if (a.dim() != b.dim()) throw std::invalid_argument("wedge: dimension mismatch");
  const int p = a.rank(), q = b.rank();
  if (p + q > kMaxRank) throw std::invalid_argument("wedge: rank exceeds 4");
  const int n = a.dim();
  Tensor<S> out(n, p + q);

  // enumerate shuffles: choose which of the p+q slots feed `a`, order-preserving
  std::vector<std::vector<int>> choices;
  std::vector<int> pick;
  auto rec = [&](auto&& self, int start) -> void {
    if (static_cast<int>(pick.size()) == p) {
      choices.push_back(pick);
      return;
    }
    for (int v = start; v < p + q; ++v) {
      pick.push_back(v);
      self(self, v + 1);
      pick.pop_back();
    }
  };
  rec(rec, 0);

  std::array<int, kMaxRank> ia{}, ib{}, perm{};
  for_each_index(n, p + q, [&](const std::array<int, kMaxRank>& idx) {
    S acc(0);
    for (const auto& ch : choices) {
      std::array<bool, kMaxRank> in_a{};
      for (int v : ch) in_a[static_cast<std::size_t>(v)] = true;
      int w = 0;
      for (int r = 0; r < p; ++r) perm[static_cast<std::size_t>(r)] = ch[static_cast<std::size_t>(r)];
      for (int r = 0; r < p + q; ++r)
        if (!in_a[static_cast<std::size_t>(r)]) perm[static_cast<std::size_t>(p + w++)] = r;
      int sgn = perm_sign(perm.data(), p + q);
      for (int r = 0; r < p; ++r) ia[static_cast<std::size_t>(r)] = idx[static_cast<std::size_t>(perm[static_cast<std::size_t>(r)])];
      for (int r = 0; r < q; ++r) ib[static_cast<std::size_t>(r)] = idx[static_cast<std::size_t>(perm[static_cast<std::size_t>(p + r)])];
      if (sgn > 0)
        acc += a.at_idx(ia) * b.at_idx(ib);
      else
        acc -= a.at_idx(ia) * b.at_idx(ib);
    }
    out.at_idx(idx) = acc;
  });
  return out;
}

// Hodge star for the FLAT metric delta and the standard orientation:
// (*w)_{j_1..j_{n-p}} = (1/p!) eps_{i_1..i_p j_1..j_{n-p}} w_{i_1..i_p}.
// Used by tests to cross-check the codifferential on flat instances.
template <class S>
Tensor<S> hodge_flat(const Tensor<S>& t) {
  const int n = t.dim();
  const int p = t.rank();
  if (n - p < 0 || n - p > kMaxRank)
    throw std::invalid_argument("hodge_flat: result rank out of range");
  Tensor<S> out(n, n - p);
  long fact = 1;
  for (int r = 2; r <= p; ++r) fact *= r;
  const S inv = frac<S>(1, fact);
  std::vector<int> full(static_cast<std::size_t>(n));
  std::array<int, kMaxRank> ia{};
  for_each_index(n, n - p, [&](const std::array<int, kMaxRank>& j) {
    S acc(0);
    for_each_index(n, p, [&](const std::array<int, kMaxRank>& i) {
      for (int r = 0; r < p; ++r) full[static_cast<std::size_t>(r)] = i[static_cast<std::size_t>(r)];
      for (int r = 0; r < n - p; ++r) full[static_cast<std::size_t>(p + r)] = j[static_cast<std::size_t>(r)];
      int sgn = perm_sign(full.data(), n);
      if (sgn == 0) return;
      for (int r = 0; r < p; ++r) ia[static_cast<std::size_t>(r)] = i[static_cast<std::size_t>(r)];
      if (sgn > 0)
        acc += t.at_idx(ia);
      else
        acc -= t.at_idx(ia);
    });
    out.at_idx(j) = inv * acc;
  });
  return out;
}

// Fill a fully antisymmetric tensor from one representative per orbit.
// reps entries are (i1<i2<..<ip, value); all signed permutations are set.
template <class S>
void set_alt_component(Tensor<S>& t, std::vector<int> idx, const S& value) {
  const int p = t.rank();
  if (static_cast<int>(idx.size()) != p) throw std::invalid_argument("set_alt_component: arity");
  std::vector<int> order(static_cast<std::size_t>(p));
  for (int r = 0; r < p; ++r) order[static_cast<std::size_t>(r)] = r;
  std::sort(order.begin(), order.end());
  std::array<int, kMaxRank> ia{};
  do {
    int sgn = perm_sign(order.data(), p);
    for (int r = 0; r < p; ++r) ia[static_cast<std::size_t>(r)] = idx[static_cast<std::size_t>(order[static_cast<std::size_t>(r)])];
    t.at_idx(ia) = sgn > 0 ? value : S(-value);
  } while (std::next_permutation(order.begin(), order.end()));
}

}  // namespace skewtor
