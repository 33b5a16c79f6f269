#pragma once

// Tight supports and their entropy value.
//
// A support (set of coordinate triples) is tight when the used indices of the
// three factors admit injective integer labelings whose sum vanishes on every
// point. The witness search fixes the gauge at the first point and propagates
// forced labels through the constraint graph, falling back to bounded
// enumeration inside a window for genuinely free choices.
//
// The value of a support is 2^m where m maximizes, over probability
// distributions P on the points, the smallest of the three marginal Shannon
// entropies. That objective is concave and piecewise smooth; steepest ascent
// on the simplex with the minimum-norm supergradient direction and a
// backtracking line search converges quickly at this scale, and random
// restarts guard against boundary stalls.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <vector>

#include "sgap/errors.hpp"
#include "sgap/rng.hpp"
#include "sgap/tensor.hpp"

namespace sgap {

struct SupportPoint {
  std::size_t i, j, k;
  bool operator==(const SupportPoint& o) const { return i == o.i && j == o.j && k == o.k; }
  bool operator<(const SupportPoint& o) const {
    if (i != o.i) return i < o.i;
    if (j != o.j) return j < o.j;
    return k < o.k;
  }
};

struct Support {
  std::array<std::size_t, 3> dims{};
  std::vector<SupportPoint> points;  // sorted, unique
};

template <class E>
Support support_of(const Tensor3<E>& t) {
  Support s;
  s.dims = t.dims();
  for (std::size_t i = 0; i < t.dim(0); ++i)
    for (std::size_t j = 0; j < t.dim(1); ++j)
      for (std::size_t k = 0; k < t.dim(2); ++k)
        if (!t.at(i, j, k).is_zero()) s.points.push_back({i, j, k});
  return s;
}

// Injective integer labelings per factor with zero sum on every point.
struct TightWitness {
  // labels keyed by used index, one map per factor
  std::array<std::map<std::size_t, std::int64_t>, 3> labels;
};

enum class Tightness { Tight, NotTightWithinWindow };

struct TightResult {
  Tightness verdict;
  std::optional<TightWitness> witness;
  std::int64_t window = 0;
};

namespace detail {

struct TightSearch {
  // variable = (factor, index), flattened
  std::vector<std::vector<std::size_t>> var_points;  // var -> incident points
  std::vector<std::array<std::size_t, 3>> point_vars;
  std::vector<std::optional<std::int64_t>> value;
  std::vector<std::vector<bool>> used_label;  // per factor: label+B -> taken
  std::int64_t window;

  bool assign(std::size_t v, std::int64_t val, std::vector<std::size_t>& trail, std::size_t factor_of_v) {
    if (val < -window || val > window) return false;
    auto& taken = used_label[factor_of_v];
    if (taken[static_cast<std::size_t>(val + window)]) return false;
    value[v] = val;
    taken[static_cast<std::size_t>(val + window)] = true;
    trail.push_back(v);
    return true;
  }

  void undo_to(std::size_t mark, std::vector<std::size_t>& trail, const std::vector<std::size_t>& var_factor) {
    while (trail.size() > mark) {
      std::size_t v = trail.back();
      trail.pop_back();
      used_label[var_factor[v]][static_cast<std::size_t>(*value[v] + window)] = false;
      value[v].reset();
    }
  }
};

}  // namespace detail

inline TightResult is_tight(const Support& s) {
  if (s.points.empty()) throw degenerate_input_error("empty support");
  const std::int64_t window = 3 * static_cast<std::int64_t>(s.dims[0] + s.dims[1] + s.dims[2]);

  // collect used indices per factor and number the variables
  std::array<std::map<std::size_t, std::size_t>, 3> var_id;  // factor -> index -> var
  std::vector<std::size_t> var_factor, var_index;
  auto intern = [&](int f, std::size_t idx) {
    auto& m = var_id[static_cast<std::size_t>(f)];
    auto it = m.find(idx);
    if (it != m.end()) return it->second;
    std::size_t v = var_factor.size();
    m.emplace(idx, v);
    var_factor.push_back(static_cast<std::size_t>(f));
    var_index.push_back(idx);
    return v;
  };
  detail::TightSearch st;
  st.window = window;
  for (const auto& p : s.points) {
    std::array<std::size_t, 3> vs{intern(0, p.i), intern(1, p.j), intern(2, p.k)};
    st.point_vars.push_back(vs);
  }
  const std::size_t nvars = var_factor.size();
  st.value.assign(nvars, std::nullopt);
  st.var_points.assign(nvars, {});
  for (std::size_t pi = 0; pi < st.point_vars.size(); ++pi)
    for (auto v : st.point_vars[pi]) st.var_points[v].push_back(pi);
  for (int f = 0; f < 3; ++f)
    st.used_label.push_back(std::vector<bool>(static_cast<std::size_t>(2 * window + 1), false));

  std::vector<std::size_t> trail;

  // propagate points with exactly one free variable; returns false on conflict
  auto propagate = [&]() -> bool {
    bool progressed = true;
    while (progressed) {
      progressed = false;
      for (const auto& pv : st.point_vars) {
        int free_count = 0;
        std::size_t free_v = 0;
        std::int64_t sum = 0;
        for (auto v : pv) {
          if (st.value[v])
            sum += *st.value[v];
          else {
            ++free_count;
            free_v = v;
          }
        }
        if (free_count == 0) {
          if (sum != 0) return false;
        } else if (free_count == 1) {
          if (!st.assign(free_v, -sum, trail, var_factor[free_v])) return false;
          progressed = true;
        }
      }
    }
    return true;
  };

  std::function<bool()> search = [&]() -> bool {
    std::size_t mark = trail.size();
    if (!propagate()) {
      st.undo_to(mark, trail, var_factor);
      return false;
    }
    std::size_t v = nvars;
    for (std::size_t cand = 0; cand < nvars; ++cand)
      if (!st.value[cand]) {
        v = cand;
        break;
      }
    if (v == nvars) return true;  // fully assigned and consistent
    for (std::int64_t val = -window; val <= window; ++val) {
      std::size_t inner = trail.size();
      if (!st.assign(v, val, trail, var_factor[v])) continue;
      if (search()) return true;
      st.undo_to(inner, trail, var_factor);
    }
    st.undo_to(mark, trail, var_factor);
    return false;
  };

  // gauge: pin the first point's factor-1 and factor-2 labels to zero (the
  // third follows); any witness can be shifted into this normal form
  const auto& first = st.point_vars[0];
  bool ok = st.assign(first[0], 0, trail, var_factor[first[0]]) &&
            st.assign(first[1], 0, trail, var_factor[first[1]]);
  TightResult res;
  res.window = window;
  if (ok && search()) {
    TightWitness w;
    for (std::size_t v = 0; v < nvars; ++v) w.labels[var_factor[v]][var_index[v]] = *st.value[v];
    res.verdict = Tightness::Tight;
    res.witness = std::move(w);
  } else {
    res.verdict = Tightness::NotTightWithinWindow;
  }
  return res;
}

inline bool verify_tight_witness(const Support& s, const TightWitness& w) {
  for (const auto& p : s.points) {
    auto a = w.labels[0].find(p.i);
    auto b = w.labels[1].find(p.j);
    auto c = w.labels[2].find(p.k);
    if (a == w.labels[0].end() || b == w.labels[1].end() || c == w.labels[2].end()) return false;
    if (a->second + b->second + c->second != 0) return false;
  }
  for (const auto& m : w.labels) {
    std::vector<std::int64_t> vals;
    for (const auto& kv : m) vals.push_back(kv.second);
    std::sort(vals.begin(), vals.end());
    if (std::adjacent_find(vals.begin(), vals.end()) != vals.end()) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// Entropy value of a support.

namespace detail {

struct EntropyProblem {
  const Support& s;
  std::array<std::vector<double>, 3> marg;  // workspace

  explicit EntropyProblem(const Support& sup) : s(sup) {
    for (int f = 0; f < 3; ++f) marg[static_cast<std::size_t>(f)].assign(s.dims[static_cast<std::size_t>(f)], 0.0);
  }

  void marginals(const std::vector<double>& p) {
    for (auto& m : marg) std::fill(m.begin(), m.end(), 0.0);
    for (std::size_t x = 0; x < s.points.size(); ++x) {
      marg[0][s.points[x].i] += p[x];
      marg[1][s.points[x].j] += p[x];
      marg[2][s.points[x].k] += p[x];
    }
  }

  static double entropy(const std::vector<double>& m) {
    double h = 0;
    for (double v : m)
      if (v > 0) h -= v * std::log2(v);
    return h;
  }

  // objective: smallest marginal entropy; fills hs
  double value(const std::vector<double>& p, std::array<double, 3>& hs) {
    marginals(p);
    for (int f = 0; f < 3; ++f) hs[static_cast<std::size_t>(f)] = entropy(marg[static_cast<std::size_t>(f)]);
    return std::min({hs[0], hs[1], hs[2]});
  }

  // supergradient of H_f at the current marginals
  std::vector<double> gradient(int f) const {
    const auto& m = marg[static_cast<std::size_t>(f)];
    std::vector<double> g(s.points.size());
    constexpr double kLog2E = 1.4426950408889634;
    for (std::size_t x = 0; x < s.points.size(); ++x) {
      std::size_t idx = (f == 0) ? s.points[x].i : (f == 1) ? s.points[x].j : s.points[x].k;
      double v = std::max(m[idx], 1e-300);
      g[x] = -(std::log2(v) + kLog2E);
    }
    return g;
  }
};

// Euclidean projection onto the probability simplex (sort-based threshold).
inline void project_to_simplex(std::vector<double>& p) {
  std::vector<double> u = p;
  std::sort(u.begin(), u.end(), std::greater<double>());
  double cum = 0.0, theta = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) {
    cum += u[i];
    double t = (cum - 1.0) / static_cast<double>(i + 1);
    if (u[i] - t > 0) theta = t;
  }
  double sum = 0;
  for (auto& v : p) {
    v = std::max(0.0, v - theta);
    sum += v;
  }
  if (sum <= 0) {
    std::fill(p.begin(), p.end(), 1.0 / static_cast<double>(p.size()));
  } else if (std::fabs(sum - 1.0) > 1e-12) {
    for (auto& v : p) v /= sum;
  }
}

// Minimum-norm point of the convex hull of up to three vectors: try every
// nonempty subset, solve the equality-constrained least squares, keep the
// feasible solution with the smallest norm.
inline std::vector<double> min_norm_combination(const std::vector<std::vector<double>>& gs) {
  const std::size_t n = gs[0].size(), m = gs.size();
  auto dot = [&](const std::vector<double>& a, const std::vector<double>& b) {
    double s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
  };
  std::vector<std::vector<double>> gram(m, std::vector<double>(m));
  for (std::size_t a = 0; a < m; ++a)
    for (std::size_t b = 0; b < m; ++b) gram[a][b] = dot(gs[a], gs[b]);
  double best = 1e300;
  std::vector<double> best_lambda(m, 0.0);
  for (unsigned mask = 1; mask < (1u << m); ++mask) {
    std::vector<std::size_t> idx;
    for (std::size_t a = 0; a < m; ++a)
      if (mask & (1u << a)) idx.push_back(a);
    // minimize lambda' G lambda with sum lambda = 1 on the subset: solve
    // G_sub lambda = mu 1 via small Gaussian elimination on [G_sub | 1]
    const std::size_t k = idx.size();
    std::vector<std::vector<double>> a(k, std::vector<double>(k + 1));
    for (std::size_t r = 0; r < k; ++r) {
      for (std::size_t c = 0; c < k; ++c) a[r][c] = gram[idx[r]][idx[c]];
      a[r][k] = 1.0;
    }
    bool singular = false;
    for (std::size_t col = 0; col < k && !singular; ++col) {
      std::size_t piv = col;
      for (std::size_t r = col + 1; r < k; ++r)
        if (std::fabs(a[r][col]) > std::fabs(a[piv][col])) piv = r;
      if (std::fabs(a[piv][col]) < 1e-14) {
        singular = true;
        break;
      }
      std::swap(a[piv], a[col]);
      for (std::size_t r = 0; r < k; ++r) {
        if (r == col) continue;
        double f = a[r][col] / a[col][col];
        for (std::size_t c = col; c <= k; ++c) a[r][c] -= f * a[col][c];
      }
    }
    if (singular) continue;
    std::vector<double> lam(k);
    double sum = 0;
    for (std::size_t r = 0; r < k; ++r) {
      lam[r] = a[r][k] / a[r][r];
      sum += lam[r];
    }
    if (std::fabs(sum) < 1e-14) continue;
    bool feasible = true;
    for (auto& l : lam) {
      l /= sum;
      if (l < -1e-12) feasible = false;
    }
    if (!feasible) continue;
    double norm2 = 0;
    for (std::size_t r = 0; r < k; ++r)
      for (std::size_t c = 0; c < k; ++c) norm2 += lam[r] * lam[c] * gram[idx[r]][idx[c]];
    if (norm2 < best) {
      best = norm2;
      std::fill(best_lambda.begin(), best_lambda.end(), 0.0);
      for (std::size_t r = 0; r < k; ++r) best_lambda[idx[r]] = lam[r];
    }
  }
  std::vector<double> d(n, 0.0);
  for (std::size_t a2 = 0; a2 < m; ++a2)
    for (std::size_t i = 0; i < n; ++i) d[i] += best_lambda[a2] * gs[a2][i];
  return d;
}

inline double ascend(EntropyProblem& prob, std::vector<double> p, std::vector<double>* out) {
  const std::size_t n = p.size();
  std::array<double, 3> hs{};
  double f = prob.value(p, hs);
  for (int iter = 0; iter < 4000; ++iter) {
    f = prob.value(p, hs);  // refresh cached marginals after line-search probes
    // active entropies within a tie tolerance share the direction; project
    // each gradient onto the simplex tangent before the min-norm combination
    const double tie = 1e-9 + 1e-9 * std::fabs(f);
    std::vector<std::vector<double>> gs;
    for (int d = 0; d < 3; ++d)
      if (hs[static_cast<std::size_t>(d)] <= f + tie) gs.push_back(prob.gradient(d));
    for (auto& g : gs) {
      double mean = 0;
      for (double v : g) mean += v;
      mean /= static_cast<double>(n);
      for (auto& v : g) v -= mean;
    }
    std::vector<double> dir = min_norm_combination(gs);
    double norm = 0;
    for (double v : dir) norm += v * v;
    if (norm < 1e-22) break;
    double step = 1.0;
    bool improved = false;
    for (int bt = 0; bt < 60; ++bt) {
      std::vector<double> q(n);
      for (std::size_t i = 0; i < n; ++i) q[i] = p[i] + step * dir[i];
      project_to_simplex(q);
      std::array<double, 3> hq{};
      double fq = prob.value(q, hq);
      if (fq > f + 1e-16) {
        p = std::move(q);
        f = fq;
        hs = hq;
        improved = true;
        break;
      }
      step *= 0.5;
    }
    if (!improved) break;
  }
  // re-evaluate so the cached marginals match p
  f = prob.value(p, hs);
  if (out) *out = std::move(p);
  return f;
}

}  // namespace detail

struct SupportValue {
  double max_min_entropy = 0;          // the optimized exponent
  double value = 1;                    // 2^max_min_entropy
  std::vector<double> distribution;    // optimizing distribution on the points
};

inline SupportValue tight_support_value(const Support& s, std::uint64_t seed = 0) {
  if (s.points.empty()) throw degenerate_input_error("empty support");
  const std::size_t n = s.points.size();
  detail::EntropyProblem prob(s);
  SupportValue best;
  best.max_min_entropy = -1;
  auto consider = [&](std::vector<double> start) {
    std::vector<double> p;
    double f = detail::ascend(prob, std::move(start), &p);
    if (f > best.max_min_entropy) {
      best.max_min_entropy = f;
      best.distribution = std::move(p);
    }
  };
  consider(std::vector<double>(n, 1.0 / static_cast<double>(n)));
  Rng rng(derive_seed(seed, 0x7367617076616cULL));
  for (int r = 0; r < 10; ++r) {
    std::vector<double> p(n);
    double sum = 0;
    for (auto& v : p) {
      v = -std::log(std::max(1e-12, static_cast<double>(rng.next() >> 11) * 0x1.0p-53));
      sum += v;
    }
    for (auto& v : p) v /= sum;
    consider(std::move(p));
  }
  best.value = std::exp2(best.max_min_entropy);
  return best;
}

// Dense grid cross-check for tiny supports: enumerate compositions of m into
// |s| parts at increasingly fine resolution around the incumbent.
inline double grid_support_value(const Support& s, int levels = 6, int m = 24) {
  const std::size_t n = s.points.size();
  if (n > 6) throw degenerate_input_error("grid check is limited to six support points");
  detail::EntropyProblem prob(s);
  std::vector<double> center(n, 1.0 / static_cast<double>(n));
  double radius = 1.0;
  double best = -1;
  std::array<double, 3> hs{};
  for (int level = 0; level < levels; ++level) {
    std::vector<double> best_p = center;
    // enumerate lattice points of the shrunken simplex around the center
    std::vector<int> comp(n, 0);
    std::function<void(std::size_t, int)> rec = [&](std::size_t pos, int left) {
      if (pos + 1 == n) {
        comp[pos] = left;
        std::vector<double> p(n);
        double sum = 0;
        for (std::size_t i = 0; i < n; ++i) {
          p[i] = std::max(0.0, center[i] + radius * (static_cast<double>(comp[i]) / m - 1.0 / static_cast<double>(n)));
          sum += p[i];
        }
        if (sum <= 0) return;
        for (auto& v : p) v /= sum;
        double f = prob.value(p, hs);
        if (f > best) {
          best = f;
          best_p = p;
        }
        return;
      }
      for (int c = 0; c <= left; ++c) {
        comp[pos] = c;
        rec(pos + 1, left - c);
      }
    };
    rec(0, m);
    center = best_p;
    radius *= 0.35;
  }
  return best;
}

}  // namespace sgap
