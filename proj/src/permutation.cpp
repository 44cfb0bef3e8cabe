#include "hyperforge/permutation.hpp"

#include <algorithm>
#include <numeric>
#include <string>
#include <unordered_map>

#include "hyperforge/error.hpp"

namespace hyperforge {

Permutation::Permutation(std::vector<Point> images) : images_(std::move(images)) {
  std::vector<bool> seen(images_.size(), false);
  for (Point p : images_) {
    if (p >= images_.size() || seen[p]) {
      throw Error(ErrorCode::kInvalidInput, "image list is not a permutation");
    }
    seen[p] = true;
  }
}

Permutation Permutation::identity(std::size_t degree) {
  std::vector<Point> v(degree);
  std::iota(v.begin(), v.end(), Point{0});
  Permutation p;
  p.images_ = std::move(v);
  return p;
}

Permutation Permutation::then(const Permutation& other) const {
  Permutation r;
  r.images_.resize(images_.size());
  for (std::size_t x = 0; x < images_.size(); ++x) r.images_[x] = other.images_[images_[x]];
  return r;
}

Permutation Permutation::inverse() const {
  Permutation r;
  r.images_.resize(images_.size());
  for (std::size_t x = 0; x < images_.size(); ++x) r.images_[images_[x]] = static_cast<Point>(x);
  return r;
}

bool Permutation::is_identity() const {
  for (std::size_t x = 0; x < images_.size(); ++x) {
    if (images_[x] != x) return false;
  }
  return true;
}

std::uint64_t Permutation::order() const {
  std::vector<bool> seen(images_.size(), false);
  std::uint64_t result = 1;
  for (std::size_t x = 0; x < images_.size(); ++x) {
    if (seen[x]) continue;
    std::uint64_t len = 0;
    for (std::size_t y = x; !seen[y]; y = images_[y]) {
      seen[y] = true;
      ++len;
    }
    result = std::lcm(result, len);
  }
  return result;
}

PermGroup::PermGroup(std::size_t degree, std::vector<Permutation> gens, bool semiregular,
                     std::optional<std::uint64_t> known_order)
    : degree_(degree), gens_(std::move(gens)), semiregular_(semiregular), known_order_(known_order) {
  for (const auto& g : gens_) {
    if (g.degree() != degree_) throw Error(ErrorCode::kInvalidInput, "generator degree mismatch");
  }
}

std::vector<Point> orbit(const PermGroup& g, Point start, std::span<const std::size_t> gens) {
  std::vector<bool> seen(g.degree(), false);
  std::vector<Point> out{start};
  seen[start] = true;
  for (std::size_t head = 0; head < out.size(); ++head) {
    for (std::size_t i : gens) {
      Point y = g.generator(i)[out[head]];
      if (!seen[y]) {
        seen[y] = true;
        out.push_back(y);
      }
    }
  }
  return out;
}

std::vector<Point> orbit(const PermGroup& g, Point start) {
  std::vector<std::size_t> all(g.generator_count());
  std::iota(all.begin(), all.end(), std::size_t{0});
  return orbit(g, start, all);
}

PermGroup subgroup(const PermGroup& g, std::span<const std::size_t> gens) {
  std::vector<Permutation> sub;
  for (std::size_t i : gens) sub.push_back(g.generator(i));
  return PermGroup(g.degree(), std::move(sub), g.semiregular());
}

std::uint64_t group_order(const PermGroup& g, const GroupLimits& limits) {
  if (g.known_order()) return *g.known_order();
  if (g.degree() == 0) return 1;
  if (g.semiregular()) return orbit(g, 0).size();
  return schreier_sims_order(g, limits);
}

std::uint64_t subgroup_order(const PermGroup& g, std::span<const std::size_t> gens,
                             const GroupLimits& limits) {
  return group_order(subgroup(g, gens), limits);
}

namespace {

struct VectorHash {
  std::size_t operator()(const std::vector<Point>& v) const noexcept {
    std::size_t h = 1469598103934665603ull;
    for (Point p : v) h = (h ^ p) * 1099511628211ull;
    return h;
  }
};

PermGroup restrict_to_orbit(const PermGroup& g) {
  std::vector<Point> pts = orbit(g, 0);
  std::vector<Point> local(g.degree(), 0);
  for (std::size_t i = 0; i < pts.size(); ++i) local[pts[i]] = static_cast<Point>(i);
  std::vector<Permutation> gens;
  for (const auto& gen : g.generators()) {
    std::vector<Point> img(pts.size());
    for (std::size_t i = 0; i < pts.size(); ++i) img[i] = local[gen[pts[i]]];
    gens.emplace_back(std::move(img));
  }
  return PermGroup(pts.size(), std::move(gens), true, pts.size());
}

}  // namespace

PermGroup regular_representation(const PermGroup& g, const GroupLimits& limits) {
  if (g.semiregular()) {
    if (g.degree() == 0) return PermGroup(1, std::vector<Permutation>(g.generator_count(), Permutation::identity(1)), true, 1);
    return restrict_to_orbit(g);
  }
  // Enumerate group elements as permutations; element k times generator i.
  std::vector<std::vector<Point>> elements;
  std::unordered_map<std::vector<Point>, Point, VectorHash> index;
  auto id = Permutation::identity(g.degree());
  elements.emplace_back(id.images().begin(), id.images().end());
  index.emplace(elements.back(), 0);
  std::vector<std::vector<Point>> table(g.generator_count());
  for (std::size_t head = 0; head < elements.size(); ++head) {
    for (std::size_t i = 0; i < g.generator_count(); ++i) {
      std::vector<Point> prod(g.degree());
      const auto& gen = g.generator(i);
      for (std::size_t x = 0; x < g.degree(); ++x) prod[x] = gen[elements[head][x]];
      auto [it, inserted] = index.emplace(prod, static_cast<Point>(elements.size()));
      if (inserted) {
        if (elements.size() >= limits.max_order ||
            elements.size() * g.degree() > limits.max_work) {
          throw Error(ErrorCode::kSizeLimitExceeded, "group too large to enumerate");
        }
        elements.push_back(std::move(prod));
      }
      table[i].push_back(it->second);
    }
  }
  std::vector<Permutation> gens;
  for (auto& t : table) gens.emplace_back(std::move(t));
  const std::size_t n = elements.size();
  return PermGroup(n, std::move(gens), true, n);
}

std::uint64_t schreier_sims_order(const PermGroup& g, const GroupLimits& limits) {
  const std::size_t n = g.degree();
  struct Level {
    Point base;
    std::vector<std::size_t> gens;                // indices into strong
    std::vector<std::optional<Permutation>> trans;  // u_p with base^u_p = p
    std::vector<Point> orbit;
  };
  std::vector<Permutation> strong;
  for (const auto& gen : g.generators()) {
    if (!gen.is_identity()) strong.push_back(gen);
  }
  if (strong.empty()) return 1;

  std::vector<Level> levels;
  auto fixes_prefix = [&](const Permutation& p, std::size_t level) {
    for (std::size_t l = 0; l < level; ++l) {
      if (p[levels[l].base] != levels[l].base) return false;
    }
    return true;
  };
  std::size_t work = 0;
  auto rebuild = [&](std::size_t l) {
    Level& lv = levels[l];
    lv.gens.clear();
    for (std::size_t s = 0; s < strong.size(); ++s) {
      if (fixes_prefix(strong[s], l)) lv.gens.push_back(s);
    }
    lv.trans.assign(n, std::nullopt);
    lv.orbit = {lv.base};
    lv.trans[lv.base] = Permutation::identity(n);
    for (std::size_t head = 0; head < lv.orbit.size(); ++head) {
      Point p = lv.orbit[head];
      for (std::size_t s : lv.gens) {
        Point q = strong[s][p];
        if (!lv.trans[q]) {
          lv.trans[q] = lv.trans[p]->then(strong[s]);
          lv.orbit.push_back(q);
          work += n;
          if (work > limits.max_work) {
            throw Error(ErrorCode::kSizeLimitExceeded, "stabiliser chain too large");
          }
        }
      }
    }
  };
  auto first_moved = [&](const Permutation& p) {
    for (Point x = 0; x < n; ++x) {
      if (p[x] != x) return x;
    }
    return static_cast<Point>(n);
  };
  auto add_base_for = [&](const Permutation& p) {
    levels.push_back(Level{first_moved(p), {}, {}, {}});
  };
  for (const auto& s : strong) {
    bool moved = false;
    for (const auto& lv : levels) moved = moved || s[lv.base] != lv.base;
    if (!moved) add_base_for(s);
  }
  for (std::size_t l = 0; l < levels.size(); ++l) rebuild(l);

  // Strip h from level `from`; returns residue and the level where it stopped.
  auto strip = [&](Permutation h, std::size_t from) {
    std::size_t l = from;
    for (; l < levels.size(); ++l) {
      Point p = h[levels[l].base];
      if (!levels[l].trans[p]) break;
      h = h.then(levels[l].trans[p]->inverse());
    }
    return std::make_pair(std::move(h), l);
  };

  std::ptrdiff_t i = static_cast<std::ptrdiff_t>(levels.size()) - 1;
  while (i >= 0) {
    bool restarted = false;
    Level& lv = levels[static_cast<std::size_t>(i)];
    for (std::size_t oi = 0; !restarted && oi < lv.orbit.size(); ++oi) {
      Point p = lv.orbit[oi];
      for (std::size_t s : lv.gens) {
        Point q = strong[s][p];
        Permutation h = lv.trans[p]->then(strong[s]).then(lv.trans[q]->inverse());
        auto [y, j] = strip(std::move(h), static_cast<std::size_t>(i) + 1);
        if (y.is_identity()) continue;
        if (j == levels.size()) add_base_for(y);
        strong.push_back(std::move(y));
        for (std::size_t l = static_cast<std::size_t>(i) + 1; l <= j; ++l) rebuild(l);
        i = static_cast<std::ptrdiff_t>(j);
        restarted = true;
        break;
      }
    }
    if (!restarted) --i;
  }
  std::uint64_t order = 1;
  for (const auto& lv : levels) order *= lv.orbit.size();
  return order;
}

}  // namespace hyperforge
