#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <optional>
#include <vector>

namespace rgr {

enum class Relation { less_equal, equal, greater_equal };

/// Linear feasibility over nonnegative rational variables, decided exactly by
/// phase-one simplex with Bland's rule (terminates on degenerate systems).
class LinearFeasibility {
 public:
  explicit LinearFeasibility(std::size_t variables) : variables_(variables) {}

  std::size_t variable_count() const noexcept { return variables_; }
  std::size_t constraint_count() const noexcept { return rows_.size(); }

  /// Adds sum_j coeffs[j] x_j (rel) rhs. coeffs.size() must equal
  /// variable_count().
  void add(std::vector<mpq_class> coeffs, Relation rel, mpq_class rhs);

  /// A point x >= 0 satisfying every constraint, or nullopt when none exists.
  std::optional<std::vector<mpq_class>> solve() const;

 private:
  struct Row {
    std::vector<mpq_class> coeffs;
    Relation rel;
    mpq_class rhs;
  };
  std::size_t variables_;
  std::vector<Row> rows_;
};

}  // namespace rgr
