#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "hyperforge/cgroup.hpp"
#include "hyperforge/coset_enumeration.hpp"
#include "hyperforge/geometry.hpp"
#include "hyperforge/permutation.hpp"
#include "hyperforge/presentation.hpp"

namespace hyperforge {

/// Cubic toroid {4,3^{n-2},4} of rank n+1 with lattice class k in {1,2,n} and size s.
struct ToroidParams {
  unsigned n = 3;
  unsigned k = 1;
  unsigned s = 2;
  std::string label() const;
};

/// Throws InvalidParams unless n >= 3, s >= 2 and k in {1, 2, n}.
void validate(const ToroidParams& p);

/// Number of lattice cosets, i.e. vertices of the toroid.
std::uint64_t toroid_vertex_count(const ToroidParams& p);
/// 2^n n! times the vertex count.
std::uint64_t toroid_group_order(const ToroidParams& p);

GroupPresentation cubic_toroid_presentation(const ToroidParams& p);
/// Halved group on (rho0 rho1 rho0, rho1, ..., rhon).
GroupPresentation halved_presentation(const ToroidParams& p);
/// Halved again at (n, n-1): last generator becomes rhon rho(n-1) rhon.
GroupPresentation double_halved_presentation(const ToroidParams& p);

/// {0,1}-truncation bipartite unless k and s are both odd.
bool predict_truncation_bipartite(const ToroidParams& p);
/// Leaf (0,1) fails the first leaf condition exactly for k = 1, s = 2.
bool predict_degenerate_leaf(const ToroidParams& p);
/// Double halving is excluded for (k,s) = (1,2) and (2,2).
bool double_halving_supported(const ToroidParams& p);

/// Coxeter matrix after halving at (i,j) where i is attached only to j.
CoxeterMatrix halved_coxeter_matrix(const CoxeterMatrix& m, std::size_t i, std::size_t j);
/// Expected diagrams of the toroid, its halving and its double halving.
CoxeterMatrix toroid_coxeter_matrix(unsigned n, unsigned depth);

struct ToroidBuildOptions {
  std::size_t max_cosets = default_max_cosets();
  /// Check geometry, thinness, residual connectedness, flag-transitivity
  /// and the intersection property; throws PropertyViolation on failure.
  bool verify = true;
  ScanLimits limits;
};

struct CubicToroid {
  ToroidParams params;
  GroupPresentation presentation;
  PermGroup group;  // regular action from the coset table
  CosetGeometry coset;
};

CubicToroid build_cubic_toroid(const ToroidParams& p, const ToroidBuildOptions& opts = {});

struct CheckResult {
  std::string name;
  bool passed = false;
  std::string detail;
};

struct FamilyReport {
  ToroidParams params;
  unsigned depth = 0;
  std::vector<CheckResult> checks;
  /// Construction branch taken at each depth ("P" or "BP").
  std::vector<std::string> branches;

  bool passed() const;
};

struct FamilyOptions {
  std::size_t max_cosets = default_max_cosets();
  ScanLimits limits;
};

/// Builds the toroid and halves it `depth` times (0..2), comparing the
/// combinatorial route with the group route and the closed-form presentations.
FamilyReport verify_family(const ToroidParams& p, unsigned depth, const FamilyOptions& opts = {});
/// Independent cells run concurrently; results keep the input order.
std::vector<FamilyReport> verify_families(const std::vector<ToroidParams>& cells, unsigned depth,
                                          const FamilyOptions& opts = {});

}  // namespace hyperforge
