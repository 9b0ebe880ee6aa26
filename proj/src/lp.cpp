#include "kmfaces/lp.hpp"

namespace kmf::lp {
namespace {

// Dense simplex tableau over Q.
//
// Layout: m rows of equalities T x = b with b >= 0, one basis column per row.
// Column classes: structural (possibly split free vars), slack, artificial.
// Bland's rule on the raw column index in both phases.
struct Tableau {
  int m = 0, n = 0;           // rows, columns (excluding rhs)
  std::vector<RatVec> row;    // each of size n
  RatVec rhs;                 // size m
  std::vector<int> basis;     // basis[r] = column index
  RatVec cost;                // size n (phase-2 objective, maximize)
  std::vector<bool> banned;   // columns barred from entering (artificials in phase 2)

  void pivot(int r, int c) {
    Rat piv = row[r][c];
    row[r] /= piv;
    rhs[r] /= piv;
    for (int i = 0; i < m; ++i) {
      if (i == r) continue;
      Rat f = row[i][c];
      if (f == 0) continue;
      row[i] -= f * row[r];
      rhs[i] -= f * rhs[r];
    }
    basis[r] = c;
  }

  // Maximizes `obj` over the current basic feasible tableau.
  // Returns false when unbounded.
  bool run(const RatVec& obj) {
    for (;;) {
      // reduced costs: z_j - c_j with z from basic costs
      RatVec y = RatVec::Zero(m);
      for (int r = 0; r < m; ++r) y[r] = obj[basis[r]];
      int enter = -1;
      for (int c = 0; c < n; ++c) {
        if (banned[c]) continue;
        Rat red = obj[c];
        for (int r = 0; r < m; ++r) red -= y[r] * row[r][c];
        if (red > 0) {
          enter = c;  // Bland: first improving column
          break;
        }
      }
      if (enter < 0) return true;
      int leave = -1;
      Rat best;
      for (int r = 0; r < m; ++r) {
        if (row[r][enter] <= 0) continue;
        Rat ratio = rhs[r] / row[r][enter];
        if (leave < 0 || ratio < best ||
            (ratio == best && basis[r] < basis[leave])) {
          leave = r;
          best = ratio;
        }
      }
      if (leave < 0) return false;
      pivot(leave, enter);
    }
  }
};

}  // namespace

int Problem::add_var(bool nonneg) {
  nonneg_.push_back(nonneg);
  return static_cast<int>(nonneg_.size()) - 1;
}

void Problem::add_le(const RatVec& a, const Rat& b) { rows_.push_back({a, Rel::Le, b}); }
void Problem::add_ge(const RatVec& a, const Rat& b) { rows_.push_back({a, Rel::Ge, b}); }
void Problem::add_eq(const RatVec& a, const Rat& b) { rows_.push_back({a, Rel::Eq, b}); }
void Problem::maximize(const RatVec& c) { objective_ = c; }

Solution Problem::solve() const {
  const int nv = num_vars();
  const int m = static_cast<int>(rows_.size());

  // Map structural variables to nonnegative columns: free x -> x+ - x-.
  std::vector<int> pos_col(nv), neg_col(nv, -1);
  int ncols = 0;
  for (int v = 0; v < nv; ++v) {
    pos_col[v] = ncols++;
    if (!nonneg_[v]) neg_col[v] = ncols++;
  }
  const int n_struct = ncols;
  // One slack/surplus column per inequality row, then artificials as needed.
  std::vector<int> slack_col(m, -1);
  for (int r = 0; r < m; ++r)
    if (rows_[r].rel != Rel::Eq) slack_col[r] = ncols++;
  std::vector<int> art_col(m, -1);
  // A row needs an artificial unless its slack can host the (sign-fixed) basis.
  // Decide after sign normalization below.

  // Build rows with b >= 0.
  std::vector<RatVec> A(m);
  RatVec b = RatVec::Zero(m);
  std::vector<int> sign(m, 1);
  for (int r = 0; r < m; ++r) {
    const Row& rw = rows_[r];
    if (static_cast<int>(rw.a.size()) != nv) fail(Errc::Internal, "lp: row arity mismatch");
    sign[r] = (rw.b < 0) ? -1 : 1;
    b[r] = rw.b * sign[r];
  }
  int n_art = 0;
  for (int r = 0; r < m; ++r) {
    const Row& rw = rows_[r];
    // slack coefficient after normalization: +1 hosts the basis, -1 does not
    int sc = 0;
    if (rw.rel == Rel::Le) sc = sign[r];
    if (rw.rel == Rel::Ge) sc = -sign[r];
    if (sc != 1) {
      art_col[r] = ncols + n_art;
      ++n_art;
    }
  }
  const int total = ncols + n_art;

  Tableau t;
  t.m = m;
  t.n = total;
  t.rhs = b;
  t.basis.assign(m, -1);
  t.banned.assign(total, false);
  t.row.assign(m, RatVec::Zero(total));
  for (int r = 0; r < m; ++r) {
    const Row& rw = rows_[r];
    for (int v = 0; v < nv; ++v) {
      Rat c = rw.a[v] * sign[r];
      if (c == 0) continue;
      t.row[r][pos_col[v]] = c;
      if (neg_col[v] >= 0) t.row[r][neg_col[v]] = -c;
    }
    if (slack_col[r] >= 0) {
      int sc = (rw.rel == Rel::Le) ? sign[r] : -sign[r];
      t.row[r][slack_col[r]] = sc;
      if (sc == 1) t.basis[r] = slack_col[r];
    }
    if (t.basis[r] < 0) {
      t.row[r][art_col[r]] = 1;
      t.basis[r] = art_col[r];
    }
  }

  // Phase 1: maximize -(sum of artificials).
  if (n_art > 0) {
    RatVec ph1 = RatVec::Zero(total);
    for (int r = 0; r < m; ++r)
      if (art_col[r] >= 0) ph1[art_col[r]] = -1;
    bool ok = t.run(ph1);
    if (!ok) fail(Errc::Internal, "lp: phase-1 unbounded");
    Rat v1 = 0;
    for (int r = 0; r < m; ++r)
      if (art_col[r] >= 0 && t.basis[r] == art_col[r]) v1 += t.rhs[r];
    if (v1 != 0) return {Status::Infeasible, RatVec(), Rat(0)};
    // Pivot remaining artificials out of the basis where possible.
    for (int r = 0; r < m; ++r) {
      if (art_col[r] < 0 || t.basis[r] != art_col[r]) continue;
      int c = -1;
      for (int j = 0; j < ncols; ++j)
        if (t.row[r][j] != 0) {
          c = j;
          break;
        }
      if (c >= 0) t.pivot(r, c);
      // else: redundant zero row; leave the artificial at value 0.
    }
    for (int r = 0; r < m; ++r)
      if (art_col[r] >= 0) t.banned[art_col[r]] = true;
  }

  // Phase 2.
  RatVec obj = RatVec::Zero(total);
  if (objective_.size() == nv) {
    for (int v = 0; v < nv; ++v) {
      obj[pos_col[v]] = objective_[v];
      if (neg_col[v] >= 0) obj[neg_col[v]] = -objective_[v];
    }
  } else if (objective_.size() != 0) {
    fail(Errc::Internal, "lp: objective arity mismatch");
  }
  if (!t.run(obj)) return {Status::Unbounded, RatVec(), Rat(0)};

  RatVec full = RatVec::Zero(total);
  for (int r = 0; r < m; ++r) full[t.basis[r]] = t.rhs[r];
  Solution s;
  s.status = Status::Optimal;
  s.x = RatVec::Zero(nv);
  for (int v = 0; v < nv; ++v) {
    s.x[v] = full[pos_col[v]];
    if (neg_col[v] >= 0) s.x[v] -= full[neg_col[v]];
  }
  s.objective = 0;
  for (int v = 0; v < nv; ++v) s.objective += (objective_.size() ? objective_[v] : Rat(0)) * s.x[v];
  (void)n_struct;
  return s;
}

bool in_polyhedron(const std::vector<RatVec>& points, const std::vector<RatVec>& rays,
                   const RatVec& target) {
  if (points.empty()) return false;
  const int np = static_cast<int>(points.size());
  const int nr = static_cast<int>(rays.size());
  const auto dim = target.size();
  Problem p;
  for (int i = 0; i < np + nr; ++i) p.add_var(true);
  for (Eigen::Index d = 0; d < dim; ++d) {
    RatVec a = RatVec::Zero(np + nr);
    for (int i = 0; i < np; ++i) a[i] = points[i][d];
    for (int j = 0; j < nr; ++j) a[np + j] = rays[j][d];
    p.add_eq(a, target[d]);
  }
  RatVec ones = RatVec::Zero(np + nr);
  for (int i = 0; i < np; ++i) ones[i] = 1;
  p.add_eq(ones, Rat(1));
  return p.solve().status == Status::Optimal;
}

bool in_cone(const std::vector<RatVec>& rays, const RatVec& target) {
  if ((target.array() == Rat(0)).all()) return true;
  if (rays.empty()) return false;
  const int nr = static_cast<int>(rays.size());
  Problem p;
  for (int j = 0; j < nr; ++j) p.add_var(true);
  for (Eigen::Index d = 0; d < target.size(); ++d) {
    RatVec a = RatVec::Zero(nr);
    for (int j = 0; j < nr; ++j) a[j] = rays[j][d];
    p.add_eq(a, target[d]);
  }
  return p.solve().status == Status::Optimal;
}

}  // namespace kmf::lp
