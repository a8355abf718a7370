#pragma once

#include <string>
#include <vector>

namespace bhcycle {

struct StructuralCheck {
  std::string name;
  bool passed = true;
  std::string detail;  // first counterexample when failed
};

struct StructuralReport {
  int n = 0;
  std::vector<StructuralCheck> checks;

  bool ok() const;
  std::string summary() const;
};

/// Enumerates BH_n (1 <= n <= 4) and checks vertex count, 2n-regularity,
/// symmetry, bipartition by inner-index parity, twin uniqueness, |E_j| = 4^n,
/// and for every split dimension the four-member decomposition, the crossing
/// direction and the isomorphism of each member with BH_{n-1}.
StructuralReport structural_suite(int n);

}  // namespace bhcycle
