#include "skewtor/fuzz.hpp"

#include <algorithm>
#include <random>
#include <stdexcept>

#include "skewtor/identities.hpp"
#include "skewtor/lie.hpp"

namespace skewtor {

namespace {

using Rng = std::mt19937_64;

int pick(Rng& rng, int lo, int hi) {  // inclusive
  return std::uniform_int_distribution<int>(lo, hi)(rng);
}

Rat rand_rat(Rng& rng) {
  int p = pick(rng, -9, 9);
  if (p == 0) p = 1;
  return frac<Rat>(p, pick(rng, 1, 9));  // frac canonicalizes; the raw ctor would not
}

// base frames: flat abelian, strictly upper 3x3 matrices padded by a center,
// or (from dimension 6) strictly upper 4x4 matrices on E12,E13,E14,E23,E24,E34
Tensor<Rat> base_c(Rng& rng, int n) {
  Tensor<Rat> c(n, 3);
  int family = pick(rng, 0, n >= 6 ? 2 : 1);
  if (family == 0) return c;
  auto put = [&](int i, int j, int k) {
    c(i, j, k) = Rat(1);
    c(j, i, k) = Rat(-1);
  };
  if (family == 1) {
    put(0, 1, 2);
  } else {
    put(0, 3, 1);
    put(0, 4, 2);
    put(1, 5, 2);
    put(3, 5, 4);
  }
  return c;
}

Tensor<Rat> rand_torsion(Rng& rng, int n) {
  Tensor<Rat> T(n, 3);
  int placed = 0;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      for (int k = j + 1; k < n; ++k)
        if (pick(rng, 0, 2) == 0) {
          set_alt_component(T, {i, j, k}, rand_rat(rng));
          ++placed;
        }
  if (placed == 0) set_alt_component(T, {0, 1, pick(rng, 2, n - 1)}, rand_rat(rng));
  return T;
}

// exact orthogonal matrix: signed permutation times a few rational Givens
Tensor<Rat> rand_orthogonal(Rng& rng, int n) {
  Tensor<Rat> O(n, 2);
  std::vector<int> perm(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) perm[static_cast<std::size_t>(i)] = i;
  std::shuffle(perm.begin(), perm.end(), rng);
  for (int i = 0; i < n; ++i)
    O(i, perm[static_cast<std::size_t>(i)]) = Rat(pick(rng, 0, 1) ? 1 : -1);
  int rots = pick(rng, 1, 3);
  for (int r = 0; r < rots; ++r) {
    int p = pick(rng, 0, n - 1), q = pick(rng, 0, n - 2);
    if (q >= p) ++q;
    Rat cth, sth;
    if (pick(rng, 0, 1)) {
      cth = Rat(3, 5);
      sth = Rat(4, 5);
    } else {
      cth = Rat(5, 13);
      sth = Rat(12, 13);
    }
    if (pick(rng, 0, 1)) sth = -sth;
    // rows p and q of O <- rotation * O
    for (int j = 0; j < n; ++j) {
      Rat a = O(p, j), b = O(q, j);
      O(p, j) = Rat(cth * a - sth * b);
      O(q, j) = Rat(sth * a + cth * b);
    }
  }
  return O;
}

Tensor<Rat> rotate3(const Tensor<Rat>& t, const Tensor<Rat>& O, int n) {
  Tensor<Rat> out(n, 3);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) {
        Rat acc(0);
        for (int a = 0; a < n; ++a) {
          if (O(a, i) == 0) continue;
          for (int b = 0; b < n; ++b) {
            if (O(b, j) == 0) continue;
            for (int ci = 0; ci < n; ++ci) {
              if (t(a, b, ci) == 0) continue;
              acc += O(a, i) * O(b, j) * O(ci, k) * t(a, b, ci);
            }
          }
        }
        out(i, j, k) = acc;
      }
  return out;
}

}  // namespace

FuzzResult run_fuzz(const FuzzOptions& opt) {
  FuzzResult res;
  Rng rng(opt.seed);
  EvalOptions eo;
  eo.mutate_gen_sigma_flip = opt.mutate_gen_sigma_flip;
  const std::vector<std::string> universal = universal_identity_ids();

  for (int idx = 0; idx < opt.count; ++idx) {
    int n = opt.dims[static_cast<std::size_t>(idx) % opt.dims.size()];
    LieInstance<Rat> L;
    L.n = n;
    Tensor<Rat> O = rand_orthogonal(rng, n);
    L.c = rotate3(base_c(rng, n), O, n);
    L.T = rotate3(rand_torsion(rng, n), O, n);
    L.has_f = true;
    L.f = Rat(0);
    std::string err = validate_lie(L);
    if (!err.empty()) throw std::logic_error("fuzz built an invalid frame: " + err);

    PointData<Rat> P = lie_point_data(L);
    ++res.instances;

    auto fail_with = [&](const std::string& id, const Rat& resid) {
      res.ok = false;
      res.failed_identity = id;
      res.failed_index = idx;
      Geometry g;
      g.name = "fuzz_" + std::to_string(idx);
      g.data = L;
      nlohmann::ordered_json ce;
      ce["geometry"] = geometry_to_json(g);
      ce["identity"] = id;
      ce["residual_exact"] = format_rational(resid);
      res.counterexample = std::move(ce);
    };

    for (const std::string& id : universal) {
      IdentityValue<Rat> v = eval_identity<Rat>(id, P, eo);
      Rat r = point_residual(v);
      if (r != 0) {
        fail_with(id, r);
        break;
      }
    }
    if (!res.ok) return res;

    bool a = point_residual(eval_identity<Rat>("FOURF_A", P, eo)) == 0;
    bool b = point_residual(eval_identity<Rat>("FOURF_B", P, eo)) == 0;
    bool c = point_residual(eval_identity<Rat>("FOURF_C", P, eo)) == 0;
    if (a != b || b != c) {
      fail_with("FOURF_TRIPLE", Rat(1));
      res.counterexample["detail"] = std::string("equivalences disagree: alternating=") +
                                     (a ? "1" : "0") + " pair=" + (b ? "1" : "0") +
                                     " lc_form=" + (c ? "1" : "0");
      return res;
    }
    (b ? res.pair_true : res.pair_false)++;
  }
  return res;
}

}  // namespace skewtor
