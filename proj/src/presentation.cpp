#include "hyperforge/presentation.hpp"

#include "hyperforge/error.hpp"

namespace hyperforge {

void validate(const GroupPresentation& p) {
  for (const Word& r : p.relators) {
    for (Generator g : r) {
      if (g >= p.ngens) {
        throw Error(ErrorCode::kInvalidInput,
                    "relator letter " + std::to_string(g) + " outside " + std::to_string(p.ngens) + " generators");
      }
    }
  }
}

Word power(const Word& w, std::size_t exponent) {
  Word out;
  out.reserve(w.size() * exponent);
  for (std::size_t i = 0; i < exponent; ++i) out.insert(out.end(), w.begin(), w.end());
  return out;
}

Word concat(std::initializer_list<Word> parts) {
  Word out;
  for (const Word& p : parts) out.insert(out.end(), p.begin(), p.end());
  return out;
}

Word reduce(Word w) {
  Word out;
  for (Generator g : w) {
    if (!out.empty() && out.back() == g) {
      out.pop_back();
    } else {
      out.push_back(g);
    }
  }
  return out;
}

std::string to_string(const Word& w) {
  std::string s;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (i) s += ' ';
    s += std::to_string(w[i]);
  }
  return s;
}

CoxeterMatrix::CoxeterMatrix(std::size_t n) : n_(n), m_(n * n, 2) {
  for (std::size_t i = 0; i < n; ++i) m_[i * n + i] = 1;
}

void CoxeterMatrix::set(std::size_t i, std::size_t j, std::uint32_t order) {
  if (i >= n_ || j >= n_ || i == j) throw Error(ErrorCode::kInvalidInput, "bad Coxeter matrix entry");
  m_[i * n_ + j] = order;
  m_[j * n_ + i] = order;
}

CoxeterMatrix CoxeterMatrix::string(const std::vector<std::uint32_t>& labels) {
  CoxeterMatrix m(labels.size() + 1);
  for (std::size_t i = 0; i < labels.size(); ++i) m.set(i, i + 1, labels[i]);
  return m;
}

std::string to_string(const CoxeterMatrix& m) {
  std::string s;
  for (std::size_t i = 0; i < m.size(); ++i) {
    s += '[';
    for (std::size_t j = 0; j < m.size(); ++j) {
      if (j) s += ',';
      s += std::to_string(m(i, j));
    }
    s += ']';
  }
  return s;
}

std::vector<Word> coxeter_relators(const CoxeterMatrix& m) {
  std::vector<Word> out;
  for (Generator i = 0; i < m.size(); ++i) {
    for (Generator j = i + 1; j < m.size(); ++j) {
      if (m(i, j) != 0) out.push_back(power(Word{i, j}, m(i, j)));
    }
  }
  return out;
}

GroupPresentation coxeter_presentation(const CoxeterMatrix& m) {
  return GroupPresentation{m.size(), coxeter_relators(m)};
}

}  // namespace hyperforge
