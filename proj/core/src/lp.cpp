#include "polycalc/lp.hpp"

#include <cstddef>
#include <vector>

#include "polycalc/errors.hpp"

namespace polycalc {
namespace {

// Standard form used internally:
//   columns [0, n)         x⁺
//           [n, 2n)        x⁻
//           [2n, 2n+p)     inequality slacks
//           [N, N+R)       artificials, N = 2n+p, R = p+q
// Row r is multiplied by sign_[r] so that its right-hand side is ≥ 0. The
// artificial block starts as the identity and is never allowed to re-enter
// the basis, so it records B⁻¹ for dual recovery.
class Tableau {
 public:
  Tableau(const HPolyhedron& p)
      : n_(p.dim()),
        p_(p.ineq().size()),
        q_(p.eq().size()),
        N_(2 * n_ + p_),
        R_(p_ + q_),
        rhs_(N_ + R_),
        rows_(R_, Vec(N_ + R_ + 1, Rational(0))),
        cost_row_(N_ + R_ + 1, Rational(0)),
        basis_(R_),
        sign_(R_, 1) {
    for (std::size_t r = 0; r < R_; ++r) {
      const Row& src = r < p_ ? p.ineq()[r] : p.eq()[r - p_];
      sign_[r] = sgn(src.b) < 0 ? -1 : 1;
      Vec& row = rows_[r];
      for (std::size_t j = 0; j < n_; ++j) {
        if (sgn(src.a[j]) == 0) continue;
        row[j] = src.a[j] * sign_[r];
        row[n_ + j] = -row[j];
      }
      if (r < p_) row[2 * n_ + r] = sign_[r];
      row[N_ + r] = 1;
      row[rhs_] = src.b * sign_[r];
      basis_[r] = (r < p_ && sign_[r] > 0) ? 2 * n_ + r : N_ + r;
    }
  }

  // Phase 1. Returns true when a feasible basis was found.
  bool phase_one() {
    Vec cost(N_ + R_, Rational(0));
    for (std::size_t k = 0; k < R_; ++k) cost[N_ + k] = 1;
    set_costs(cost);
    run();  // phase 1 is bounded below by 0
    if (sgn(cost_row_[rhs_]) != 0) return false;
    drive_out_artificials();
    return true;
  }

  // Phase 2 for min cᵀz. Returns the entering column on unboundedness.
  std::optional<std::size_t> phase_two(const Vec& cost) {
    set_costs(cost);
    return run();
  }

  // Duals y of the sign-adjusted rows, converted back to original rows:
  // u_r = sign_r · (c_{a_r} - d_{a_r}).
  Vec row_duals(const Rational& artificial_cost) const {
    Vec u(R_);
    for (std::size_t r = 0; r < R_; ++r) {
      Rational y = artificial_cost - cost_row_[N_ + r];
      u[r] = y * sign_[r];
    }
    return u;
  }

  Vec point() const {
    Vec x = zeros(n_);
    for (std::size_t r = 0; r < R_; ++r) {
      const std::size_t b = basis_[r];
      if (b < n_) {
        x[b] += rows_[r][rhs_];
      } else if (b < 2 * n_) {
        x[b - n_] -= rows_[r][rhs_];
      }
    }
    return x;
  }

  Vec ray(std::size_t entering) const {
    Vec d = zeros(n_);
    auto accumulate = [&](std::size_t col, const Rational& amount) {
      if (col < n_) {
        d[col] += amount;
      } else if (col < 2 * n_) {
        d[col - n_] -= amount;
      }
    };
    accumulate(entering, Rational(1));
    for (std::size_t r = 0; r < R_; ++r) {
      if (sgn(rows_[r][entering]) != 0) {
        accumulate(basis_[r], Rational(-rows_[r][entering]));
      }
    }
    return d;
  }

  std::size_t ineq_rows() const { return p_; }
  std::size_t eq_rows() const { return q_; }

 private:
  void set_costs(const Vec& cost) {
    for (std::size_t j = 0; j < N_ + R_; ++j) cost_row_[j] = cost[j];
    cost_row_[rhs_] = 0;
    for (std::size_t r = 0; r < R_; ++r) {
      const Rational& cb = cost[basis_[r]];
      if (sgn(cb) == 0) continue;
      const Vec& row = rows_[r];
      for (std::size_t j = 0; j <= rhs_; ++j) {
        if (sgn(row[j]) != 0) cost_row_[j] -= cb * row[j];
      }
    }
  }

  // Bland's rule iterations. Returns the entering column if unbounded.
  std::optional<std::size_t> run() {
    for (;;) {
      std::size_t entering = N_;
      for (std::size_t j = 0; j < N_; ++j) {
        if (sgn(cost_row_[j]) < 0) {
          entering = j;
          break;
        }
      }
      if (entering == N_) return std::nullopt;

      std::size_t leaving = R_;
      Rational best_ratio;
      for (std::size_t r = 0; r < R_; ++r) {
        const Rational& coef = rows_[r][entering];
        if (sgn(coef) <= 0) continue;
        Rational ratio = rows_[r][rhs_] / coef;
        if (leaving == R_ || ratio < best_ratio ||
            (ratio == best_ratio && basis_[r] < basis_[leaving])) {
          leaving = r;
          best_ratio = std::move(ratio);
        }
      }
      if (leaving == R_) return entering;
      pivot(leaving, entering);
    }
  }

  void drive_out_artificials() {
    for (std::size_t r = 0; r < R_; ++r) {
      if (basis_[r] < N_) continue;
      for (std::size_t j = 0; j < N_; ++j) {
        if (sgn(rows_[r][j]) != 0) {
          pivot(r, j);
          break;
        }
      }
      // A row with no standard-column entries is redundant; its artificial
      // stays basic at level zero and never blocks a ratio test.
    }
  }

  void pivot(std::size_t pr, std::size_t pc) {
    Vec& prow = rows_[pr];
    const Rational inv = 1 / prow[pc];
    std::vector<std::size_t> nz;
    nz.reserve(rhs_ + 1);
    for (std::size_t j = 0; j <= rhs_; ++j) {
      if (sgn(prow[j]) != 0) {
        prow[j] *= inv;
        nz.push_back(j);
      }
    }
    auto eliminate = [&](Vec& row) {
      if (sgn(row[pc]) == 0) return;
      const Rational f = row[pc];
      for (std::size_t j : nz) row[j] -= f * prow[j];
    };
    for (std::size_t r = 0; r < R_; ++r) {
      if (r != pr) eliminate(rows_[r]);
    }
    eliminate(cost_row_);
    basis_[pr] = pc;
  }

  std::size_t n_, p_, q_, N_, R_, rhs_;
  std::vector<Vec> rows_;
  Vec cost_row_;
  std::vector<std::size_t> basis_;
  std::vector<int> sign_;
};

// min cᵀy subject to M y = r, y ≥ 0, with M given by its columns. Used for
// implication tests, where the row count is the (small) ambient dimension.
struct StandardResult {
  enum class Status { kOptimal, kInfeasible, kUnbounded } status;
  Vec y;
  Rational value;
};

StandardResult solve_standard(const std::vector<Vec>& columns, VecView r,
                              VecView c) {
  const std::size_t R = r.size();
  const std::size_t K = columns.size();
  const std::size_t rhs = K + R;
  std::vector<Vec> t(R, Vec(rhs + 1, Rational(0)));
  std::vector<std::size_t> basis(R);
  for (std::size_t i = 0; i < R; ++i) {
    const int sign = sgn(r[i]) < 0 ? -1 : 1;
    for (std::size_t k = 0; k < K; ++k) {
      if (sgn(columns[k][i]) != 0) t[i][k] = columns[k][i] * sign;
    }
    t[i][K + i] = 1;
    t[i][rhs] = r[i] * sign;
    basis[i] = K + i;
  }
  Vec cost_row(rhs + 1, Rational(0));

  auto pivot = [&](std::size_t pr, std::size_t pc) {
    Vec& prow = t[pr];
    const Rational inv = 1 / prow[pc];
    std::vector<std::size_t> nz;
    for (std::size_t j = 0; j <= rhs; ++j) {
      if (sgn(prow[j]) != 0) {
        prow[j] *= inv;
        nz.push_back(j);
      }
    }
    auto eliminate = [&](Vec& row) {
      if (sgn(row[pc]) == 0) return;
      const Rational f = row[pc];
      for (std::size_t j : nz) row[j] -= f * prow[j];
    };
    for (std::size_t i = 0; i < R; ++i) {
      if (i != pr) eliminate(t[i]);
    }
    eliminate(cost_row);
    basis[pr] = pc;
  };
  auto set_costs = [&](const Vec& cost) {
    for (std::size_t j = 0; j <= rhs; ++j) cost_row[j] = j < rhs ? cost[j] : Rational(0);
    for (std::size_t i = 0; i < R; ++i) {
      const Rational& cb = cost[basis[i]];
      if (sgn(cb) == 0) continue;
      for (std::size_t j = 0; j <= rhs; ++j) {
        if (sgn(t[i][j]) != 0) cost_row[j] -= cb * t[i][j];
      }
    }
  };
  // Largest-coefficient pricing; after a run of degenerate pivots it falls
  // back to Bland's rule for good, which rules out cycling. False when
  // unbounded.
  auto run = [&]() {
    constexpr int kDegenerateLimit = 20;
    int degenerate = 0;
    bool bland = false;
    for (;;) {
      std::size_t entering = K;
      for (std::size_t j = 0; j < K; ++j) {
        if (sgn(cost_row[j]) >= 0) continue;
        if (entering == K || (!bland && cost_row[j] < cost_row[entering])) {
          entering = j;
          if (bland) break;
        }
      }
      if (entering == K) return true;
      std::size_t leaving = R;
      Rational best;
      for (std::size_t i = 0; i < R; ++i) {
        if (sgn(t[i][entering]) <= 0) continue;
        Rational ratio = t[i][rhs] / t[i][entering];
        if (leaving == R || ratio < best ||
            (ratio == best && basis[i] < basis[leaving])) {
          leaving = i;
          best = std::move(ratio);
        }
      }
      if (leaving == R) return false;
      if (sgn(best) == 0) {
        if (++degenerate >= kDegenerateLimit) bland = true;
      } else {
        degenerate = 0;
      }
      pivot(leaving, entering);
    }
  };

  Vec cost(rhs, Rational(0));
  for (std::size_t i = 0; i < R; ++i) cost[K + i] = 1;
  set_costs(cost);
  run();
  if (sgn(cost_row[rhs]) != 0) return {StandardResult::Status::kInfeasible, {}, {}};
  for (std::size_t i = 0; i < R; ++i) {
    if (basis[i] < K) continue;
    for (std::size_t j = 0; j < K; ++j) {
      if (sgn(t[i][j]) != 0) {
        pivot(i, j);
        break;
      }
    }
  }
  Vec phase2(rhs, Rational(0));
  for (std::size_t k = 0; k < K; ++k) phase2[k] = c[k];
  set_costs(phase2);
  if (!run()) return {StandardResult::Status::kUnbounded, {}, {}};
  StandardResult out{StandardResult::Status::kOptimal, zeros(K), Rational(0)};
  for (std::size_t i = 0; i < R; ++i) {
    if (basis[i] < K) out.y[basis[i]] = t[i][rhs];
  }
  out.value = dot(c, out.y);
  return out;
}

Vec transpose_combination(const HPolyhedron& p, const Vec& y, const Vec& z) {
  Vec s = zeros(p.dim());
  for (std::size_t i = 0; i < p.ineq().size(); ++i) {
    if (sgn(y[i]) == 0) continue;
    for (std::size_t j = 0; j < p.dim(); ++j) s[j] += y[i] * p.ineq()[i].a[j];
  }
  for (std::size_t i = 0; i < p.eq().size(); ++i) {
    if (sgn(z[i]) == 0) continue;
    for (std::size_t j = 0; j < p.dim(); ++j) s[j] += z[i] * p.eq()[i].a[j];
  }
  return s;
}

Rational bound_combination(const HPolyhedron& p, const Vec& y, const Vec& z) {
  Rational s = 0;
  for (std::size_t i = 0; i < p.ineq().size(); ++i) s += y[i] * p.ineq()[i].b;
  for (std::size_t i = 0; i < p.eq().size(); ++i) s += z[i] * p.eq()[i].b;
  return s;
}

}  // namespace

LpResult solve_lp(VecView objective, Sense sense, const HPolyhedron& p) {
  require_dim(objective.size(), p.dim(), "solve_lp objective");
  const std::size_t n = p.dim();
  const Rational s = sense == Sense::kMaximize ? 1 : -1;
  Vec w(n);
  for (std::size_t j = 0; j < n; ++j) w[j] = objective[j] * s;

  Tableau t(p);
  const std::size_t np = p.ineq().size();
  const std::size_t nq = p.eq().size();

  if (!t.phase_one()) {
    Vec u = t.row_duals(Rational(1));
    LpInfeasible cert{zeros(np), zeros(nq)};
    for (std::size_t i = 0; i < np; ++i) cert.ineq_multipliers[i] = -u[i];
    for (std::size_t i = 0; i < nq; ++i) cert.eq_multipliers[i] = -u[np + i];
    LpResult result = cert;
    if (!verify_lp_result(objective, sense, p, result)) {
      fail(ErrorKind::kInternalConsistency, "Farkas certificate check failed");
    }
    return result;
  }

  // min (-w)ᵀ(x⁺ - x⁻)
  Vec cost = zeros(2 * n + np + np + nq);
  for (std::size_t j = 0; j < n; ++j) {
    cost[j] = -w[j];
    cost[n + j] = w[j];
  }
  if (auto entering = t.phase_two(cost)) {
    LpResult result = LpUnbounded{t.point(), t.ray(*entering)};
    if (!verify_lp_result(objective, sense, p, result)) {
      fail(ErrorKind::kInternalConsistency, "unbounded ray check failed");
    }
    return result;
  }

  Vec u = t.row_duals(Rational(0));
  LpOptimal opt;
  opt.point = t.point();
  opt.ineq_duals = zeros(np);
  opt.eq_duals = zeros(nq);
  for (std::size_t i = 0; i < np; ++i) opt.ineq_duals[i] = -u[i];
  for (std::size_t i = 0; i < nq; ++i) opt.eq_duals[i] = -u[np + i];
  opt.value = dot(objective, opt.point);
  LpResult result = std::move(opt);
  if (!verify_lp_result(objective, sense, p, result)) {
    fail(ErrorKind::kInternalConsistency, "optimality certificate check failed");
  }
  return result;
}

bool verify_lp_result(VecView objective, Sense sense, const HPolyhedron& p,
                      const LpResult& result) {
  const Rational s = sense == Sense::kMaximize ? 1 : -1;
  if (const auto* opt = std::get_if<LpOptimal>(&result)) {
    if (!p.contains(opt->point)) return false;
    if (opt->ineq_duals.size() != p.ineq().size() ||
        opt->eq_duals.size() != p.eq().size()) {
      return false;
    }
    for (std::size_t i = 0; i < p.ineq().size(); ++i) {
      if (sgn(opt->ineq_duals[i]) < 0) return false;
      if (sgn(opt->ineq_duals[i]) > 0 &&
          dot(p.ineq()[i].a, opt->point) != p.ineq()[i].b) {
        return false;
      }
    }
    const Vec combo = transpose_combination(p, opt->ineq_duals, opt->eq_duals);
    for (std::size_t j = 0; j < p.dim(); ++j) {
      if (combo[j] != objective[j] * s) return false;
    }
    if (bound_combination(p, opt->ineq_duals, opt->eq_duals) !=
        opt->value * s) {
      return false;
    }
    return opt->value == dot(objective, opt->point);
  }
  if (const auto* unb = std::get_if<LpUnbounded>(&result)) {
    if (!p.contains(unb->point)) return false;
    for (const Row& r : p.ineq()) {
      if (sgn(dot(r.a, unb->ray)) > 0) return false;
    }
    for (const Row& r : p.eq()) {
      if (sgn(dot(r.a, unb->ray)) != 0) return false;
    }
    return sgn(dot(objective, unb->ray)) * sgn(s) > 0;
  }
  const auto& inf = std::get<LpInfeasible>(result);
  if (inf.ineq_multipliers.size() != p.ineq().size() ||
      inf.eq_multipliers.size() != p.eq().size()) {
    return false;
  }
  for (const Rational& y : inf.ineq_multipliers) {
    if (sgn(y) < 0) return false;
  }
  if (!is_zero(
          transpose_combination(p, inf.ineq_multipliers, inf.eq_multipliers))) {
    return false;
  }
  return sgn(bound_combination(p, inf.ineq_multipliers, inf.eq_multipliers)) <
         0;
}

std::optional<Vec> feasible_point(const HPolyhedron& p) {
  LpResult r = solve_lp(zeros(p.dim()), Sense::kMaximize, p);
  if (auto* opt = std::get_if<LpOptimal>(&r)) return std::move(opt->point);
  return std::nullopt;
}

bool is_feasible(const HPolyhedron& p) {
  if (p.is_trivially_empty()) return false;
  return feasible_point(p).has_value();
}

bool implies(const HPolyhedron& p, VecView a, const Rational& b) {
  require_dim(a.size(), p.dim(), "implies");
  // Columns: inequality normals, then ± equality normals.
  std::vector<Vec> columns;
  Vec cost;
  for (const Row& r : p.ineq()) {
    columns.push_back(r.a);
    cost.push_back(r.b);
  }
  for (const Row& e : p.eq()) {
    columns.push_back(e.a);
    cost.push_back(e.b);
    columns.push_back(negate(e.a));
    cost.push_back(-e.b);
  }
  const StandardResult res = solve_standard(columns, a, cost);
  switch (res.status) {
    case StandardResult::Status::kInfeasible:
      return false;
    case StandardResult::Status::kUnbounded:
      // The dual is unbounded only when P is empty.
      return true;
    case StandardResult::Status::kOptimal:
      break;
  }
  if (res.value > b) return false;
  // Re-check the certificate: y ≥ 0, Σ y_k col_k = a, costᵀy ≤ b.
  Vec combo = zeros(p.dim());
  for (std::size_t k = 0; k < columns.size(); ++k) {
    if (sgn(res.y[k]) < 0) fail(ErrorKind::kInternalConsistency, "negative multiplier");
    if (sgn(res.y[k]) == 0) continue;
    combo = add(combo, scale(columns[k], res.y[k]));
  }
  if (combo != Vec(a.begin(), a.end())) {
    fail(ErrorKind::kInternalConsistency, "implication certificate check failed");
  }
  return true;
}

}  // namespace polycalc
