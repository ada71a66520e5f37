#include "ucvrp/lp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "ucvrp/errors.hpp"
#include "ucvrp/random.hpp"
#include "ucvrp/tsp.hpp"

namespace ucvrp {

namespace {

constexpr std::size_t kTableGround = 16;

// Counts demand-feasible sets, stopping once the count passes `cap`.
void count_sets(const Instance& inst, const CustomerSet& ground,
                std::size_t from, int load, std::uint64_t& count,
                std::uint64_t cap) {
  for (std::size_t i = from; i < ground.size() && count <= cap; ++i) {
    const int next = load + inst.demand(ground[i]);
    if (next > inst.capacity()) {
      continue;
    }
    ++count;
    count_sets(inst, ground, i + 1, next, count, cap);
  }
}

void collect(const Instance& inst, const CustomerSet& ground, std::size_t from,
             int load, CustomerSet& current, std::vector<CustomerSet>& out) {
  for (std::size_t i = from; i < ground.size(); ++i) {
    const int next = load + inst.demand(ground[i]);
    if (next > inst.capacity()) {
      continue;
    }
    current.push_back(ground[i]);
    out.push_back(current);
    collect(inst, ground, i + 1, next, current, out);
    current.pop_back();
  }
}

// Dense m x m basis inverse, row-major.
class BasisInverse {
public:
  explicit BasisInverse(std::size_t m) : m_(m), a_(m * m, 0.0) {
    for (std::size_t i = 0; i < m; ++i) {
      a_[i * m + i] = 1.0;
    }
  }

  double& at(std::size_t r, std::size_t c) { return a_[r * m_ + c]; }
  double at(std::size_t r, std::size_t c) const { return a_[r * m_ + c]; }

  // Replaces basis row `leave` given d = B^-1 a_enter.
  void pivot(const std::vector<double>& d, std::size_t leave) {
    const double piv = d[leave];
    for (std::size_t c = 0; c < m_; ++c) {
      at(leave, c) /= piv;
    }
    for (std::size_t r = 0; r < m_; ++r) {
      if (r == leave || d[r] == 0.0) {
        continue;
      }
      const double f = d[r];
      for (std::size_t c = 0; c < m_; ++c) {
        at(r, c) -= f * at(leave, c);
      }
    }
  }

  // Gauss-Jordan with partial pivoting on the dense basis matrix.
  bool refactor(const std::vector<std::vector<double>>& columns) {
    std::vector<double> b(m_ * m_, 0.0);
    for (std::size_t c = 0; c < m_; ++c) {
      for (std::size_t r = 0; r < m_; ++r) {
        b[r * m_ + c] = columns[c][r];
      }
    }
    std::fill(a_.begin(), a_.end(), 0.0);
    for (std::size_t i = 0; i < m_; ++i) {
      a_[i * m_ + i] = 1.0;
    }
    for (std::size_t col = 0; col < m_; ++col) {
      std::size_t piv = col;
      for (std::size_t r = col + 1; r < m_; ++r) {
        if (std::abs(b[r * m_ + col]) > std::abs(b[piv * m_ + col])) {
          piv = r;
        }
      }
      if (std::abs(b[piv * m_ + col]) < 1e-12) {
        return false;
      }
      if (piv != col) {
        for (std::size_t c = 0; c < m_; ++c) {
          std::swap(b[piv * m_ + c], b[col * m_ + c]);
          std::swap(a_[piv * m_ + c], a_[col * m_ + c]);
        }
      }
      const double p = b[col * m_ + col];
      for (std::size_t c = 0; c < m_; ++c) {
        b[col * m_ + c] /= p;
        a_[col * m_ + c] /= p;
      }
      for (std::size_t r = 0; r < m_; ++r) {
        const double f = b[r * m_ + col];
        if (r == col || f == 0.0) {
          continue;
        }
        for (std::size_t c = 0; c < m_; ++c) {
          b[r * m_ + c] -= f * b[col * m_ + c];
          a_[r * m_ + c] -= f * a_[col * m_ + c];
        }
      }
    }
    return true;
  }

private:
  std::size_t m_;
  std::vector<double> a_;
};

} // namespace

std::uint64_t tour_key(const CustomerSet& sorted_ids) {
  std::uint64_t h = 0x243f6a8885a308d3ULL;
  for (const int v : sorted_ids) {
    h = mix64(h, static_cast<std::uint64_t>(v));
  }
  return h;
}

TourCatalog enumerate_tours(const Instance& inst, LpVariant variant,
                            const Rational& delta, std::uint64_t size_cap) {
  TourCatalog cat;
  cat.variant = variant;
  cat.delta = variant == LpVariant::lp1 ? Rational(0) : delta;
  for (int v = 1; v <= inst.n(); ++v) {
    if (variant == LpVariant::lp1 || inst.norm_demand(v) > delta) {
      cat.cover.push_back(v);
    }
  }
  std::uint64_t count = 0;
  count_sets(inst, cat.cover, 0, 0, count, size_cap);
  if (count > size_cap) {
    throw CatalogTooLarge(count);
  }
  CustomerSet current;
  collect(inst, cat.cover, 0, 0, current, cat.sets);
  std::sort(cat.sets.begin(), cat.sets.end());

  const std::size_t cap = heldkarp_cap();
  cat.costs.resize(cat.sets.size());
  cat.keys.resize(cat.sets.size());
  if (cat.cover.size() <= std::min(kTableGround, cap)) {
    const auto table = subset_tour_costs(inst, cat.cover);
    for (std::size_t s = 0; s < cat.sets.size(); ++s) {
      std::size_t mask = 0;
      for (const int v : cat.sets[s]) {
        const auto pos = std::lower_bound(cat.cover.begin(), cat.cover.end(), v) -
                         cat.cover.begin();
        mask |= std::size_t{1} << pos;
      }
      cat.costs[s] = table[mask];
    }
  } else {
    for (std::size_t s = 0; s < cat.sets.size(); ++s) {
      if (cat.sets[s].size() <= cap) {
        cat.costs[s] = exact_tsp(inst, cat.sets[s]).cost;
      } else {
        cat.costs[s] = approx_tsp(inst, cat.sets[s]).cost;
        cat.exact_pricing = false;
      }
    }
  }
  for (std::size_t s = 0; s < cat.sets.size(); ++s) {
    cat.keys[s] = tour_key(cat.sets[s]);
  }
  return cat;
}

LpSolution solve_covering_lp(const TourCatalog& catalog) {
  const std::size_t m = catalog.cover.size();
  const std::size_t ncols = catalog.sets.size();
  LpSolution sol;
  sol.x.assign(ncols, 0.0);
  if (m == 0) {
    sol.certified = true;
    return sol;
  }

  // Rows of each set in cover coordinates.
  std::vector<std::vector<std::size_t>> rows(ncols);
  for (std::size_t j = 0; j < ncols; ++j) {
    for (const int v : catalog.sets[j]) {
      rows[j].push_back(static_cast<std::size_t>(
          std::lower_bound(catalog.cover.begin(), catalog.cover.end(), v) -
          catalog.cover.begin()));
    }
  }
  // Variables: 0..ncols-1 sets, ncols + i surplus of row i, ncols + m + i
  // artificial unit column of row i. Artificials only start in the basis,
  // for rows no singleton tour covers, and are never priced back in.
  double max_cost = 0.0;
  for (const double c : catalog.costs) {
    max_cost = std::max(max_cost, std::abs(c));
  }
  const double big_m = 2.0 * max_cost + 1.0;
  const std::size_t artificial = ncols + m;
  const auto column = [&](std::size_t var) {
    std::vector<double> a(m, 0.0);
    if (var < ncols) {
      for (const std::size_t r : rows[var]) {
        a[r] = 1.0;
      }
    } else if (var < artificial) {
      a[var - ncols] = -1.0;
    } else {
      a[var - artificial] = 1.0;
    }
    return a;
  };
  const auto var_cost = [&](std::size_t var) {
    if (var < ncols) {
      return catalog.costs[var];
    }
    return var < artificial ? 0.0 : big_m;
  };

  std::vector<std::size_t> basis(m, artificial);
  for (std::size_t j = 0; j < ncols; ++j) {
    if (rows[j].size() == 1 && basis[rows[j][0]] == artificial) {
      basis[rows[j][0]] = j;
    }
  }
  for (std::size_t i = 0; i < m; ++i) {
    if (basis[i] == artificial) {
      basis[i] = artificial + i;
    }
  }
  BasisInverse inv(m);
  std::vector<double> xb(m, 1.0);
  const double eps = 1e-11 * std::max(1.0, max_cost);

  const auto refactor = [&] {
    std::vector<std::vector<double>> cols;
    cols.reserve(m);
    for (const std::size_t var : basis) {
      cols.push_back(column(var));
    }
    if (!inv.refactor(cols)) {
      throw LpFailure("covering LP: singular basis");
    }
    for (std::size_t r = 0; r < m; ++r) {
      double s = 0.0;
      for (std::size_t c = 0; c < m; ++c) {
        s += inv.at(r, c);
      }
      xb[r] = std::max(0.0, s);
    }
  };
  const auto duals = [&] {
    std::vector<double> y(m, 0.0);
    for (std::size_t r = 0; r < m; ++r) {
      const double cb = var_cost(basis[r]);
      if (cb == 0.0) {
        continue;
      }
      for (std::size_t c = 0; c < m; ++c) {
        y[c] += cb * inv.at(r, c);
      }
    }
    return y;
  };
  const auto reduced = [&](std::size_t var, const std::vector<double>& y) {
    if (var >= ncols) {
      return y[var - ncols];
    }
    double s = catalog.costs[var];
    for (const std::size_t r : rows[var]) {
      s -= y[r];
    }
    return s;
  };

  const int max_iter = 50000 + 20 * static_cast<int>(ncols + m);
  int degenerate_run = 0;
  std::vector<char> in_basis(ncols + 2 * m, 0);
  for (const std::size_t var : basis) {
    in_basis[var] = 1;
  }
  for (int it = 0;; ++it) {
    if (it >= max_iter) {
      throw LpFailure("covering LP: iteration limit reached");
    }
    if (it % 64 == 63) {
      refactor();
    }
    const auto y = duals();
    const bool bland = degenerate_run > 30;
    std::size_t enter = ncols + m;
    double best = -eps;
    for (std::size_t var = 0; var < ncols + m; ++var) {
      if (in_basis[var]) {
        continue;
      }
      const double rc = reduced(var, y);
      if (rc < best) {
        enter = var;
        best = rc;
        if (bland) {
          break;
        }
      }
    }
    if (enter == ncols + m) {
      sol.iterations = it;
      break;
    }
    const auto a = column(enter);
    std::vector<double> d(m, 0.0);
    for (std::size_t r = 0; r < m; ++r) {
      double s = 0.0;
      for (std::size_t c = 0; c < m; ++c) {
        s += inv.at(r, c) * a[c];
      }
      d[r] = s;
    }
    std::size_t leave = m;
    double ratio = std::numeric_limits<double>::infinity();
    for (std::size_t r = 0; r < m; ++r) {
      if (d[r] <= 1e-9) {
        continue;
      }
      const double q = xb[r] / d[r];
      if (q < ratio - 1e-12 ||
          (q <= ratio + 1e-12 && leave < m && basis[r] < basis[leave])) {
        ratio = std::min(ratio, q);
        leave = r;
      }
    }
    if (leave == m) {
      throw LpFailure("covering LP: unbounded direction");
    }
    degenerate_run = ratio <= 1e-12 ? degenerate_run + 1 : 0;
    for (std::size_t r = 0; r < m; ++r) {
      xb[r] = r == leave ? ratio : std::max(0.0, xb[r] - ratio * d[r]);
    }
    inv.pivot(d, leave);
    in_basis[basis[leave]] = 0;
    in_basis[enter] = 1;
    basis[leave] = enter;
  }

  refactor();
  for (std::size_t r = 0; r < m; ++r) {
    if (basis[r] >= artificial && xb[r] > 1e-9) {
      throw LpFailure("covering LP: customer " +
                      std::to_string(catalog.cover[basis[r] - artificial]) +
                      " is in no tour");
    }
  }
  auto y = duals();
  sol.objective = 0.0;
  for (std::size_t r = 0; r < m; ++r) {
    if (basis[r] < ncols) {
      sol.x[basis[r]] = std::min(1.0, xb[r]);
    }
  }
  for (std::size_t j = 0; j < ncols; ++j) {
    sol.objective += catalog.costs[j] * sol.x[j];
  }
  std::vector<double> coverage(m, 0.0);
  for (std::size_t j = 0; j < ncols; ++j) {
    for (const std::size_t r : rows[j]) {
      coverage[r] += sol.x[j];
    }
  }
  for (std::size_t r = 0; r < m; ++r) {
    sol.max_coverage_violation =
        std::max(sol.max_coverage_violation, 1.0 - coverage[r]);
  }
  double dual_neg = 0.0;
  for (auto& v : y) {
    dual_neg = std::max(dual_neg, -v);
    v = std::max(0.0, v);
  }
  for (std::size_t j = 0; j < ncols; ++j) {
    sol.max_reduced_cost_violation =
        std::max(sol.max_reduced_cost_violation, -reduced(j, y));
  }
  sol.duals = y;
  sol.dual_objective = 0.0;
  for (const double v : y) {
    sol.dual_objective += v;
  }
  const double tol = 1e-9 * std::max(1.0, std::abs(sol.objective));
  sol.certified = sol.max_coverage_violation <= 1e-9 && dual_neg <= tol &&
                  sol.max_reduced_cost_violation <= tol &&
                  std::abs(sol.objective - sol.dual_objective) <= tol;
  if (!sol.certified) {
    std::ostringstream msg;
    msg << "covering LP certificate failed: coverage residual "
        << sol.max_coverage_violation << ", reduced-cost residual "
        << sol.max_reduced_cost_violation << ", gap "
        << sol.objective - sol.dual_objective;
    throw LpFailure(msg.str());
  }
  return sol;
}

RoundingOutcome round_nothing(const CustomerSet& cover) {
  RoundingOutcome out;
  out.uncovered = cover;
  return out;
}

RoundingOutcome round_tours(const TourCatalog& catalog, const LpSolution& lp,
                            double gamma, std::uint64_t seed) {
  if (gamma < 0.0) {
    throw std::invalid_argument("gamma must be non-negative");
  }
  if (gamma == 0.0) {
    return round_nothing(catalog.cover);
  }
  RoundingOutcome out;
  std::vector<char> covered(catalog.cover.size(), 0);
  for (std::size_t j = 0; j < catalog.sets.size(); ++j) {
    const double p = std::min(1.0, gamma * lp.x[j]);
    if (p <= 0.0 || keyed_uniform(seed, catalog.keys[j]) >= p) {
      continue;
    }
    out.selected.push_back(j);
    out.cost += catalog.costs[j];
    for (const int v : catalog.sets[j]) {
      covered[std::lower_bound(catalog.cover.begin(), catalog.cover.end(), v) -
              catalog.cover.begin()] = 1;
    }
  }
  for (std::size_t r = 0; r < catalog.cover.size(); ++r) {
    if (!covered[r]) {
      out.uncovered.push_back(catalog.cover[r]);
    }
  }
  return out;
}

nlohmann::json to_json(const TourCatalog& catalog, const LpSolution* lp) {
  nlohmann::json doc;
  doc["variant"] = catalog.variant == LpVariant::lp1 ? "lp1" : "lp2";
  doc["delta"] = catalog.delta.str();
  doc["cover"] = catalog.cover;
  doc["exact_pricing"] = catalog.exact_pricing;
  auto& tours = doc["tours"] = nlohmann::json::array();
  for (std::size_t j = 0; j < catalog.sets.size(); ++j) {
    nlohmann::json t{{"customers", catalog.sets[j]}, {"cost", catalog.costs[j]}};
    if (lp != nullptr) {
      t["x"] = lp->x[j];
    }
    tours.push_back(std::move(t));
  }
  if (lp != nullptr) {
    doc["objective"] = lp->objective;
    doc["dual_objective"] = lp->dual_objective;
    doc["duals"] = lp->duals;
    doc["certified"] = lp->certified;
    doc["iterations"] = lp->iterations;
  }
  return doc;
}

} // namespace ucvrp
