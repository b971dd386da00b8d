#pragma once
// SPDX-License-Identifier: Apache-2.0

#include <cmath>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "veilkit/error.hpp"
#include "veilkit/numkit.hpp"

// Discrete information-theoretic quantities. Everything here is reported in
// bits (log base 2); training losses measured in nats must be divided by
// ln 2 before they cross into this module.

namespace veilkit::infotheory {

inline double log2p(double x) { return std::log2(x); }

// A discrete probability distribution.
struct Dist {
  std::vector<double> p;

  Dist() = default;
  Dist(std::initializer_list<double> init) : p(init) {}
  explicit Dist(std::vector<double> probs) : p(std::move(probs)) {}

  void validate() const {
    if (p.empty()) throw ValidationError("Dist: empty");
    double sum = 0.0;
    for (double v : p) {
      if (!(v >= 0.0 && v <= 1.0)) throw ValidationError("Dist: entry outside [0,1]");
      sum += v;
    }
    if (std::abs(sum - 1.0) > 1e-9) throw ValidationError("Dist: mass != 1");
  }
};

// Joint distribution over two discrete variables; rows index the first.
struct JointDist {
  numkit::Mat table;

  JointDist() = default;
  explicit JointDist(numkit::Mat t) : table(std::move(t)) {}

  void validate() const {
    if (table.size() == 0) throw ValidationError("JointDist: empty");
    double sum = 0.0;
    for (double v : table.data()) {
      if (v < 0.0) throw ValidationError("JointDist: negative entry");
      sum += v;
    }
    if (std::abs(sum - 1.0) > 1e-9) throw ValidationError("JointDist: mass != 1");
  }

  Dist row_marginal() const {
    Dist d;
    d.p.assign(table.rows(), 0.0);
    for (std::size_t i = 0; i < table.rows(); ++i)
      for (std::size_t j = 0; j < table.cols(); ++j) d.p[i] += table(i, j);
    return d;
  }

  Dist col_marginal() const {
    Dist d;
    d.p.assign(table.cols(), 0.0);
    for (std::size_t i = 0; i < table.rows(); ++i)
      for (std::size_t j = 0; j < table.cols(); ++j) d.p[j] += table(i, j);
    return d;
  }
};

namespace detail {
inline double plogp(double p) { return p > 0.0 ? -p * log2p(p) : 0.0; }
}  // namespace detail

// Shannon entropy in bits; 0 log 0 := 0.
inline double entropy(const Dist& d) {
  d.validate();
  double h = 0.0;
  for (double v : d.p) h += detail::plogp(v);
  return h;
}

// H(A|Z) for a joint with rows = A, cols = Z: H(A,Z) - H(Z).
inline double conditional_entropy(const JointDist& j) {
  j.validate();
  double hj = 0.0;
  for (double v : j.table.data()) hj += detail::plogp(v);
  double hz = 0.0;
  for (double v : j.col_marginal().p) hz += detail::plogp(v);
  return std::max(0.0, hj - hz);
}

// I(A;Z) = H(A) + H(Z) - H(A,Z), clamped at zero against roundoff.
inline double mutual_information(const JointDist& j) {
  j.validate();
  double ha = 0.0, hz = 0.0, hj = 0.0;
  for (double v : j.row_marginal().p) ha += detail::plogp(v);
  for (double v : j.col_marginal().p) hz += detail::plogp(v);
  for (double v : j.table.data()) hj += detail::plogp(v);
  const double mi = ha + hz - hj;
  return mi > 0.0 ? mi : 0.0;
}

// KL(p || q) in bits. A point with p_i > 0 and q_i = 0 yields +infinity,
// the explicit infinite-divergence signal; never a clamped large number.
inline double kl_divergence(const Dist& p, const Dist& q) {
  p.validate();
  q.validate();
  if (p.p.size() != q.p.size()) throw ShapeError("kl_divergence: length mismatch");
  double kl = 0.0;
  for (std::size_t i = 0; i < p.p.size(); ++i) {
    if (p.p[i] == 0.0) continue;
    if (q.p[i] == 0.0) return std::numeric_limits<double>::infinity();
    kl += p.p[i] * log2p(p.p[i] / q.p[i]);
  }
  return kl < 0.0 ? 0.0 : kl;
}

// Jensen-Shannon divergence in bits; bounded in [0, 1].
inline double js_divergence(const Dist& p, const Dist& q) {
  p.validate();
  q.validate();
  if (p.p.size() != q.p.size()) throw ShapeError("js_divergence: length mismatch");
  Dist m;
  m.p.resize(p.p.size());
  for (std::size_t i = 0; i < p.p.size(); ++i) m.p[i] = 0.5 * (p.p[i] + q.p[i]);
  const double js = 0.5 * kl_divergence(p, m) + 0.5 * kl_divergence(q, m);
  return js < 0.0 ? 0.0 : js;
}

// JS distance: sqrt of the divergence; a metric.
inline double js_distance(const Dist& p, const Dist& q) {
  return std::sqrt(js_divergence(p, q));
}

inline double binary_entropy(double t) {
  if (!(t >= 0.0 && t <= 1.0)) throw DomainError("binary_entropy: t outside [0,1]");
  return detail::plogp(t) + detail::plogp(1.0 - t);
}

// Unique t in [0, 1/2] with H2(t) = s, bisected to |dt| <= 1e-12.
inline double inv_binary_entropy(double s) {
  if (!(s >= 0.0 && s <= 1.0)) throw DomainError("inv_binary_entropy: s outside [0,1]");
  double lo = 0.0, hi = 0.5;
  for (int i = 0; i < 100 && hi - lo > 1e-13; ++i) {
    const double mid = 0.5 * (lo + hi);
    (binary_entropy(mid) < s ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

// The inference-error floor implied by a conditional entropy H* = H(A|Z):
// any adversary errs with probability at least h_star / 2 lg(6 / h_star).
// `inv_h2` carries the tighter intermediate floor H2^{-1}(H*) from which the
// closed form is loosened; both appear in reports.
struct PrivacyCertificate {
  double h_star = 0.0;  // bits
  double bound = 0.0;   // probability
  double inv_h2 = 0.0;  // probability; tighter reference floor
  static constexpr const char* h_star_units = "bits";
  static constexpr const char* bound_units = "probability";
};

inline PrivacyCertificate certificate(double h_star) {
  if (!(h_star >= 0.0 && h_star <= 1.0))
    throw DomainError("certificate: h_star outside [0,1]");
  PrivacyCertificate c;
  c.h_star = h_star;
  c.bound = h_star > 0.0 ? h_star / (2.0 * log2p(6.0 / h_star)) : 0.0;
  c.inv_h2 = inv_binary_entropy(h_star);
  return c;
}

// Measured utility/privacy quantities together with the two trade-off
// inequalities they must satisfy. d_js is the JS *distance* between the
// class-conditional target distributions; the theorem-2 bound uses its
// square (the divergence).
struct TradeoffLedger {
  double util0 = 0.0;
  double util1 = 0.0;
  double priv = 0.0;
  double d_js = 0.0;
  double thm2_lhs = 0.0;
  double thm2_rhs = 0.0;
  bool thm2_satisfied = false;
  std::optional<double> thm3_floor;  // empty when the precondition fails
};

// Util0 + Util1 + Priv <= 3 - D_JS/3, with djs_y the divergence in bits.
inline TradeoffLedger thm2_check(double util0, double util1, double priv, double djs_y) {
  for (double v : {util0, util1, priv})
    if (!(v >= 0.0 && v <= 1.0)) throw DomainError("thm2_check: probability outside [0,1]");
  if (!(djs_y >= 0.0 && djs_y <= 1.0)) throw DomainError("thm2_check: djs_y outside [0,1]");
  TradeoffLedger t;
  t.util0 = util0;
  t.util1 = util1;
  t.priv = priv;
  t.d_js = std::sqrt(djs_y);
  t.thm2_lhs = util0 + util1 + priv;
  t.thm2_rhs = 3.0 - djs_y / 3.0;
  t.thm2_satisfied = t.thm2_lhs <= t.thm2_rhs + 1e-9;
  return t;
}

// Floor on Err0 + Err1 when Priv >= 1 - D_JS; not applicable otherwise.
inline std::optional<double> thm3_floor(double priv, double djs_y) {
  if (!(priv >= 0.0 && priv <= 1.0)) throw DomainError("thm3_floor: priv outside [0,1]");
  if (!(djs_y >= 0.0 && djs_y <= 1.0)) throw DomainError("thm3_floor: djs_y outside [0,1]");
  if (priv < 1.0 - djs_y) return std::nullopt;
  const double gap = std::sqrt(djs_y) - std::sqrt(1.0 - priv);
  return 0.5 * gap * gap;
}

}  // namespace veilkit::infotheory
