#pragma once

#include <string>
#include <vector>

#include "lcav/analytics.hpp"

namespace lcav {

struct ValidationReport {
  struct Item {
    std::string name;
    bool pass = false;
    std::string detail;
  };
  std::vector<Item> items;

  bool all_pass() const {
    for (const Item& i : items)
      if (!i.pass) return false;
    return true;
  }
};

/// Evaluate the kappa = 0 stencil on unit density matrices of an enlarged
/// grid (so upper-truncation reads cannot mask couplings) and report whether
/// the element (row; col) has an identically vanishing derivative.
ElementClass classify_element_stencil(const BasisIndex& row,
                                      const BasisIndex& col);

/// Same brute-force evaluation for every element pair with k,m <= limit,
/// returned in row-major flat order of a Basis(limit, limit).
std::vector<ElementClass> classify_all_stencil(int limit);

/// Fast cross-checks of the analytics formulas and structural invariants;
/// the full oracle suite lives in the tests.
ValidationReport run_validation_suite();

}  // namespace lcav
