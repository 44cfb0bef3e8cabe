#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace hyperforge {

using Generator = std::uint32_t;
using Word = std::vector<Generator>;

/// Presentation on involutory generators 0..ngens-1; g^2 = 1 is implicit.
struct GroupPresentation {
  std::size_t ngens = 0;
  std::vector<Word> relators;
};

/// Throws InvalidInput on out-of-range letters.
void validate(const GroupPresentation& p);

Word power(const Word& w, std::size_t exponent);
Word concat(std::initializer_list<Word> parts);
/// Free reduction for involutions: removes adjacent equal letters.
Word reduce(Word w);
std::string to_string(const Word& w);

/// Symmetric matrix of orders m_ij of products of generator pairs; diagonal 1.
/// Zero encodes an unbounded order.
class CoxeterMatrix {
 public:
  CoxeterMatrix() = default;
  explicit CoxeterMatrix(std::size_t n);

  std::size_t size() const { return n_; }
  std::uint32_t operator()(std::size_t i, std::size_t j) const { return m_[i * n_ + j]; }
  void set(std::size_t i, std::size_t j, std::uint32_t order);

  /// String diagram with consecutive labels; unlisted pairs commute.
  static CoxeterMatrix string(const std::vector<std::uint32_t>& labels);

  friend bool operator==(const CoxeterMatrix&, const CoxeterMatrix&) = default;

 private:
  std::size_t n_ = 0;
  std::vector<std::uint32_t> m_;
};

std::string to_string(const CoxeterMatrix& m);

/// Relators (g_i g_j)^{m_ij} for every pair i<j with finite order.
std::vector<Word> coxeter_relators(const CoxeterMatrix& m);
GroupPresentation coxeter_presentation(const CoxeterMatrix& m);

}  // namespace hyperforge
