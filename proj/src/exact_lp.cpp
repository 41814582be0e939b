#include "rgr/exact_lp.hpp"

#include <stdexcept>
#include <utility>

namespace rgr {

void LinearFeasibility::add(std::vector<mpq_class> coeffs, Relation rel, mpq_class rhs) {
  if (coeffs.size() != variables_) throw std::invalid_argument("constraint has the wrong width");
  rows_.push_back({std::move(coeffs), rel, std::move(rhs)});
}

std::optional<std::vector<mpq_class>> LinearFeasibility::solve() const {
  const std::size_t m = rows_.size();
  const std::size_t n = variables_;
  if (m == 0) return std::vector<mpq_class>(n, 0);

  // Column layout: originals, one slack per inequality, artificials, rhs.
  std::size_t slacks = 0;
  for (const Row& r : rows_) slacks += r.rel != Relation::equal;
  std::vector<std::size_t> basis(m);
  std::vector<std::vector<mpq_class>> t(m);
  std::vector<std::size_t> needs_artificial;

  std::size_t slack_col = n;
  for (std::size_t r = 0; r < m; ++r) {
    const Row& row = rows_[r];
    std::vector<mpq_class>& tr = t[r];
    tr.assign(n + slacks, 0);
    for (std::size_t j = 0; j < n; ++j) tr[j] = row.coeffs[j];
    std::size_t own_slack = n + slacks;
    if (row.rel != Relation::equal) {
      own_slack = slack_col++;
      tr[own_slack] = row.rel == Relation::less_equal ? 1 : -1;
    }
    mpq_class rhs = row.rhs;
    if (sgn(rhs) < 0) {
      for (auto& v : tr) v = -v;
      rhs = -rhs;
    }
    tr.push_back(rhs);  // temporarily at index n + slacks
    if (own_slack < n + slacks && tr[own_slack] == 1) {
      basis[r] = own_slack;
    } else {
      needs_artificial.push_back(r);
    }
  }

  const std::size_t first_art = n + slacks;
  const std::size_t arts = needs_artificial.size();
  const std::size_t width = first_art + arts + 1;
  const std::size_t rhs_col = width - 1;
  for (auto& tr : t) {
    mpq_class rhs = std::move(tr.back());
    tr.pop_back();
    tr.resize(width, 0);
    tr[rhs_col] = std::move(rhs);
  }
  for (std::size_t k = 0; k < arts; ++k) {
    const std::size_t r = needs_artificial[k];
    t[r][first_art + k] = 1;
    basis[r] = first_art + k;
  }

  // z[j] = minus the reduced cost of column j for min sum(artificials).
  std::vector<mpq_class> z(width, 0);
  for (std::size_t r : needs_artificial) {
    for (std::size_t j = 0; j < first_art; ++j) z[j] += t[r][j];
    z[rhs_col] += t[r][rhs_col];
  }

  while (sgn(z[rhs_col]) > 0) {
    std::size_t enter = first_art;
    for (std::size_t j = 0; j < first_art; ++j) {
      if (sgn(z[j]) > 0) {
        enter = j;
        break;
      }
    }
    if (enter == first_art) break;

    std::size_t leave = m;
    mpq_class best;
    for (std::size_t r = 0; r < m; ++r) {
      if (sgn(t[r][enter]) <= 0) continue;
      mpq_class ratio = t[r][rhs_col] / t[r][enter];
      if (leave == m || ratio < best || (ratio == best && basis[r] < basis[leave])) {
        leave = r;
        best = std::move(ratio);
      }
    }
    // Phase one is bounded below by zero, so some row always limits the step.
    if (leave == m) throw std::logic_error("phase-one simplex found an unbounded ray");

    std::vector<mpq_class>& pr = t[leave];
    const mpq_class pivot = pr[enter];
    for (auto& v : pr) {
      if (sgn(v) != 0) v /= pivot;
    }
    auto eliminate = [&](std::vector<mpq_class>& row) {
      if (sgn(row[enter]) == 0) return;
      const mpq_class factor = row[enter];
      for (std::size_t j = 0; j < width; ++j) {
        if (sgn(pr[j]) != 0) row[j] -= factor * pr[j];
      }
    };
    for (std::size_t r = 0; r < m; ++r) {
      if (r != leave) eliminate(t[r]);
    }
    eliminate(z);
    basis[leave] = enter;
  }

  if (sgn(z[rhs_col]) != 0) return std::nullopt;
  std::vector<mpq_class> x(n, 0);
  for (std::size_t r = 0; r < m; ++r) {
    if (basis[r] < n) x[basis[r]] = t[r][rhs_col];
  }
  return x;
}

}  // namespace rgr
