#include "hyperforge/cgroup.hpp"

#include <algorithm>
#include <bit>
#include <numeric>
#include <string>

#include "hyperforge/error.hpp"

namespace hyperforge {

namespace {

constexpr ElementId kNoElement() { return 0xffffffffu; }

class Bitset {
 public:
  explicit Bitset(std::size_t n) : words_((n + 63) / 64, 0) {}
  void set(std::size_t i) { words_[i / 64] |= std::uint64_t{1} << (i % 64); }
  bool test(std::size_t i) const { return (words_[i / 64] >> (i % 64)) & 1u; }
  std::size_t count() const {
    std::size_t c = 0;
    for (auto w : words_) c += static_cast<std::size_t>(std::popcount(w));
    return c;
  }
  std::size_t count_and(const Bitset& o) const {
    std::size_t c = 0;
    for (std::size_t i = 0; i < words_.size(); ++i) c += static_cast<std::size_t>(std::popcount(words_[i] & o.words_[i]));
    return c;
  }

 private:
  std::vector<std::uint64_t> words_;
};

std::vector<std::size_t> all_but(std::size_t n, std::initializer_list<std::size_t> skip) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < n; ++i) {
    if (std::find(skip.begin(), skip.end(), i) == skip.end()) out.push_back(i);
  }
  return out;
}

// Closure of a seed set under the listed generators (right multiplication).
Bitset closure(const PermGroup& g, const std::vector<Point>& seeds, const std::vector<std::size_t>& gens) {
  Bitset in(g.degree());
  std::vector<Point> stack;
  for (Point p : seeds) {
    if (!in.test(p)) {
      in.set(p);
      stack.push_back(p);
    }
  }
  while (!stack.empty()) {
    Point p = stack.back();
    stack.pop_back();
    for (std::size_t i : gens) {
      Point q = g.generator(i)[p];
      if (!in.test(q)) {
        in.set(q);
        stack.push_back(q);
      }
    }
  }
  return in;
}

// Left multiplications by each generator in a transitive regular action with 0 = identity.
std::vector<Permutation> left_multiplications(const PermGroup& r) {
  const std::size_t n = r.degree();
  std::vector<Point> order{0};
  std::vector<Point> parent(n, 0);
  std::vector<std::size_t> via(n, 0);
  std::vector<bool> seen(n, false);
  seen[0] = true;
  for (std::size_t h = 0; h < order.size(); ++h) {
    for (std::size_t i = 0; i < r.generator_count(); ++i) {
      Point q = r.generator(i)[order[h]];
      if (!seen[q]) {
        seen[q] = true;
        parent[q] = order[h];
        via[q] = i;
        order.push_back(q);
      }
    }
  }
  std::vector<Permutation> out;
  for (std::size_t j = 0; j < r.generator_count(); ++j) {
    std::vector<Point> img(n);
    img[0] = r.generator(j)[0];
    for (std::size_t h = 1; h < order.size(); ++h) {
      Point p = order[h];
      img[p] = r.generator(via[p])[img[parent[p]]];
    }
    out.emplace_back(std::move(img));
  }
  return out;
}

}  // namespace

CoxeterMatrix coxeter_matrix(const PermGroup& g) {
  const std::size_t n = g.generator_count();
  CoxeterMatrix m(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      m.set(i, j, static_cast<std::uint32_t>(g.generator(i).then(g.generator(j)).order()));
    }
  }
  return m;
}

bool intersection_property(const PermGroup& g, const GroupLimits& limits) {
  const std::size_t r = g.generator_count();
  if (r > 16) throw Error(ErrorCode::kSizeLimitExceeded, "too many generators for the subset check");
  PermGroup reg = regular_representation(g, limits);
  const std::size_t masks = std::size_t{1} << r;
  std::vector<Bitset> parabolic;
  parabolic.reserve(masks);
  for (std::size_t mask = 0; mask < masks; ++mask) {
    std::vector<std::size_t> gens;
    for (std::size_t i = 0; i < r; ++i) {
      if (mask >> i & 1u) gens.push_back(i);
    }
    parabolic.push_back(closure(reg, {0}, gens));
  }
  std::vector<std::size_t> sizes(masks);
  for (std::size_t m = 0; m < masks; ++m) sizes[m] = parabolic[m].count();
  for (std::size_t a = 0; a < masks; ++a) {
    for (std::size_t b = a + 1; b < masks; ++b) {
      if ((a & b) == a || (a & b) == b) continue;
      if (parabolic[a].count_and(parabolic[b]) != sizes[a & b]) return false;
    }
  }
  return true;
}

CosetGeometry coset_geometry(const PermGroup& g, const GroupLimits& limits) {
  PermGroup reg = regular_representation(g, limits);
  const std::size_t n = reg.degree();
  const std::size_t r = reg.generator_count();
  std::vector<Permutation> left = left_multiplications(reg);

  // label[i][p]: type-i element containing group element p.
  std::vector<std::vector<ElementId>> label(r, std::vector<ElementId>(n, kNoElement()));
  std::vector<ElementId> first_of_type(r + 1, 0);
  std::vector<std::vector<Point>> representative(r);
  ElementId next = 0;
  for (std::size_t i = 0; i < r; ++i) {
    first_of_type[i] = next;
    auto& lab = label[i];
    std::vector<Point> stack;
    for (Point p = 0; p < n; ++p) {
      if (lab[p] != kNoElement()) continue;
      representative[i].push_back(p);
      lab[p] = next;
      stack.push_back(p);
      while (!stack.empty()) {
        Point q = stack.back();
        stack.pop_back();
        for (std::size_t j = 0; j < r; ++j) {
          if (j == i) continue;
          Point s = left[j][q];
          if (lab[s] == kNoElement()) {
            lab[s] = next;
            stack.push_back(s);
          }
        }
      }
      ++next;
    }
  }
  first_of_type[r] = next;

  std::vector<TypeId> types(next);
  for (std::size_t i = 0; i < r; ++i) {
    for (ElementId e = first_of_type[i]; e < first_of_type[i + 1]; ++e) types[e] = static_cast<TypeId>(i);
  }
  std::vector<Incidence> pairs;
  for (std::size_t i = 0; i < r; ++i) {
    for (std::size_t j = i + 1; j < r; ++j) {
      std::vector<Incidence> local(n);
      for (Point p = 0; p < n; ++p) local[p] = {label[i][p], label[j][p]};
      std::sort(local.begin(), local.end());
      local.erase(std::unique(local.begin(), local.end()), local.end());
      pairs.insert(pairs.end(), local.begin(), local.end());
    }
  }

  CosetGeometry out;
  out.geometry = IncidenceGeometry::assemble(r, std::move(types), std::move(pairs), false);
  std::vector<Permutation> action;
  for (std::size_t s = 0; s < r; ++s) {
    std::vector<Point> img(next);
    for (std::size_t i = 0; i < r; ++i) {
      for (std::size_t k = 0; k < representative[i].size(); ++k) {
        img[first_of_type[i] + k] = label[i][reg.generator(s)[representative[i][k]]];
      }
    }
    action.emplace_back(std::move(img));
  }
  out.action = PermGroup(next, std::move(action));
  out.order = n;
  for (std::size_t i = 0; i < r; ++i) out.base_chamber.push_back(label[i][0]);
  return out;
}

PermGroup halving_group(const PermGroup& g, Leaf leaf) {
  if (leaf.first >= g.generator_count() || leaf.second >= g.generator_count() || leaf.first == leaf.second) {
    throw Error(ErrorCode::kInvalidInput, "leaf outside the generator range");
  }
  std::vector<Permutation> gens = g.generators();
  const Permutation& a = g.generator(leaf.first);
  gens[leaf.first] = a.then(g.generator(leaf.second)).then(a);
  return PermGroup(g.degree(), std::move(gens), g.semiregular());
}

bool relator_parity_bipartite(const GroupPresentation& p, Generator gen) {
  for (const Word& w : p.relators) {
    if (std::count(w.begin(), w.end(), gen) % 2 != 0) return false;
  }
  return true;
}

bool check_b1_algebraic(const PermGroup& g, Leaf leaf, const GroupLimits& limits) {
  PermGroup reg = regular_representation(g, limits);
  const std::size_t r = reg.generator_count();
  const std::size_t i = leaf.first, j = leaf.second;
  auto gi = all_but(r, {i});
  Bitset parabolic = closure(reg, {0}, gi);
  // g_i h for h in G_i, then times g_i on the right.
  Bitset conj_left = closure(reg, {reg.generator(i)[0]}, gi);
  std::vector<Point> conj;
  for (Point p = 0; p < reg.degree(); ++p) {
    if (conj_left.test(p)) conj.push_back(reg.generator(i)[p]);
  }
  Bitset conjugate = closure(reg, conj, {});
  const std::size_t meet = parabolic.count_and(conjugate);
  return meet == closure(reg, {0}, all_but(r, {i, j})).count();
}

bool check_b2_algebraic_sufficient(const PermGroup& g, Leaf leaf, const GroupLimits& limits) {
  if (!check_b1_algebraic(g, leaf, limits)) return false;
  PermGroup reg = regular_representation(g, limits);
  const std::size_t r = reg.generator_count();
  const std::size_t i = leaf.first, j = leaf.second;
  auto gi = all_but(r, {i});
  Bitset parabolic = closure(reg, {0}, gi);
  std::vector<Point> shifted;  // G_i g_i
  for (Point p = 0; p < reg.degree(); ++p) {
    if (parabolic.test(p)) shifted.push_back(reg.generator(i)[p]);
  }
  Bitset double_coset = closure(reg, shifted, gi);
  for (std::size_t k = 0; k < r; ++k) {
    if (k == i || k == j) continue;
    Bitset gk = closure(reg, {0}, all_but(r, {k}));
    Bitset narrow = closure(reg, shifted, all_but(r, {i, k}));
    for (Point p = 0; p < reg.degree(); ++p) {
      if (gk.test(p) && double_coset.test(p) && !narrow.test(p)) return false;
    }
  }
  return true;
}

bool generator_isomorphic(const PermGroup& a, const PermGroup& b, const GroupLimits& limits) {
  if (a.generator_count() != b.generator_count()) return false;
  PermGroup ra = regular_representation(a, limits);
  PermGroup rb = regular_representation(b, limits);
  if (ra.degree() != rb.degree()) return false;
  const std::size_t n = ra.degree();
  std::vector<Point> map(n, static_cast<Point>(-1));
  std::vector<bool> hit(n, false);
  std::vector<Point> queue{0};
  map[0] = 0;
  hit[0] = true;
  for (std::size_t h = 0; h < queue.size(); ++h) {
    Point p = queue[h];
    for (std::size_t i = 0; i < ra.generator_count(); ++i) {
      Point q = ra.generator(i)[p];
      Point image = rb.generator(i)[map[p]];
      if (map[q] == static_cast<Point>(-1)) {
        if (hit[image]) return false;
        map[q] = image;
        hit[image] = true;
        queue.push_back(q);
      } else if (map[q] != image) {
        return false;
      }
    }
  }
  return queue.size() == n;
}

}  // namespace hyperforge
