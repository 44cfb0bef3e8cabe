#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "hyperforge/permutation.hpp"
#include "hyperforge/presentation.hpp"

namespace hyperforge {

inline constexpr std::uint32_t kUndefined = 0xffffffffu;

/// Complete coset table; coset 0 is the subgroup, numbering follows first definition.
struct CosetTable {
  std::size_t ngens = 0;
  std::vector<Word> subgroup;
  std::vector<std::uint32_t> entries;  // row-major: coset * ngens + generator
  std::size_t defined_total = 0;       // cosets defined during the run, dead ones included

  std::size_t size() const { return ngens == 0 ? 1 : entries.size() / ngens; }
  std::uint32_t at(std::size_t coset, Generator g) const { return entries[coset * ngens + g]; }
};

/// Coset limit: HYPERFORGE_MAX_COSETS when set, otherwise 5,000,000.
std::size_t default_max_cosets();

/// HLT enumeration with lookahead and coincidence processing.
/// Throws Overflow when the live coset count cannot fit under max_cosets.
CosetTable todd_coxeter(const GroupPresentation& p, const std::vector<Word>& subgroup,
                        std::size_t max_cosets = default_max_cosets());

/// Every relator traces to a loop from every coset and every subgroup word fixes coset 0.
bool table_consistent(const GroupPresentation& p, const CosetTable& t);

/// Generators as permutations of cosets; semiregular when the subgroup is trivially generated.
PermGroup perm_image(const CosetTable& t);

}  // namespace hyperforge
