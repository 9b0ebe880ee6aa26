#pragma once

#include "kmfaces/types.hpp"

namespace kmf::lp {

enum class Status { Optimal, Infeasible, Unbounded };

struct Solution {
  Status status = Status::Infeasible;
  RatVec x;       // structural variable values (Optimal only)
  Rat objective;  // maximized value
};

/// Exact-arithmetic linear program. All data rational; the solver is a dense
/// two-phase primal simplex with Bland's rule, so it terminates and every
/// certificate it returns is exact. Intended for the small instances that
/// arise here (dimension <= ~10, a few dozen rows).
class Problem {
 public:
  /// Adds a variable; `nonneg` ? x >= 0 : free (internally split).
  int add_var(bool nonneg = true);

  void add_le(const RatVec& a, const Rat& b);
  void add_ge(const RatVec& a, const Rat& b);
  void add_eq(const RatVec& a, const Rat& b);

  /// Objective is maximized; defaults to 0 (pure feasibility).
  void maximize(const RatVec& c);

  Solution solve() const;

  int num_vars() const { return static_cast<int>(nonneg_.size()); }

 private:
  enum class Rel { Le, Ge, Eq };
  struct Row {
    RatVec a;
    Rel rel;
    Rat b;
  };
  std::vector<bool> nonneg_;
  std::vector<Row> rows_;
  RatVec objective_;
};

/// Feasibility of { sum_i l_i p_i + sum_j m_j r_j = target, sum l = 1, l,m >= 0 }.
bool in_polyhedron(const std::vector<RatVec>& points, const std::vector<RatVec>& rays,
                   const RatVec& target);

/// Membership of `target` in the rational cone spanned by `rays`.
bool in_cone(const std::vector<RatVec>& rays, const RatVec& target);

}  // namespace kmf::lp
