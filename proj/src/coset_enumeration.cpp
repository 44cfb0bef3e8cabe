#include "hyperforge/coset_enumeration.hpp"

#include <algorithm>
#include <cstdlib>
#include <deque>
#include <string>

#include "hyperforge/error.hpp"

namespace hyperforge {

std::size_t default_max_cosets() {
  if (const char* env = std::getenv("HYPERFORGE_MAX_COSETS")) {
    char* end = nullptr;
    unsigned long long v = std::strtoull(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return static_cast<std::size_t>(v);
  }
  return 5'000'000;
}

namespace {

struct TableFull {};

class Enumerator {
 public:
  Enumerator(const GroupPresentation& p, std::size_t max_cosets)
      : n_(p.ngens), relators_(p.relators), cap_(max_cosets) {
    if (cap_ == 0) throw Error(ErrorCode::kOverflow, "coset limit is zero");
    grow(std::min<std::size_t>(cap_, 1024));
    parent_.push_back(0);
    next_ = 1;
    live_ = 1;
  }

  CosetTable run(const std::vector<Word>& subgroup) {
    std::size_t c = 0;
    bool subgroup_done = false;
    while (true) {
      try {
        if (!subgroup_done) {
          for (const Word& w : subgroup) scan(0, w, true);
          subgroup_done = true;
        }
        for (; c < next_; ++c) {
          if (!alive(c)) continue;
          for (const Word& r : relators_) {
            scan(static_cast<std::uint32_t>(c), r, true);
            if (!alive(c)) break;
          }
          if (!alive(c)) continue;
          for (Generator g = 0; g < n_; ++g) {
            if (entry(c, g) == kUndefined) define(static_cast<std::uint32_t>(c), g);
          }
        }
        break;
      } catch (const TableFull&) {
        lookahead(subgroup);
        c = compact(c);
        if (live_ >= cap_) {
          throw Error(ErrorCode::kOverflow,
                      "coset enumeration needs more than " + std::to_string(cap_) + " cosets");
        }
      }
    }
    compact(0);
    CosetTable t;
    t.ngens = n_;
    t.subgroup = subgroup;
    t.entries.assign(table_.begin(), table_.begin() + static_cast<std::ptrdiff_t>(next_ * n_));
    t.defined_total = defined_total_;
    for (std::uint32_t e : t.entries) {
      if (e == kUndefined) throw Error(ErrorCode::kIncompleteTable, "enumeration ended with gaps");
    }
    return t;
  }

 private:
  std::uint32_t& entry(std::size_t c, Generator g) { return table_[c * n_ + g]; }
  bool alive(std::size_t c) const { return parent_[c] == c; }

  void grow(std::size_t rows) {
    table_.resize(rows * n_, kUndefined);
    rows_ = rows;
  }

  std::uint32_t rep(std::uint32_t c) {
    std::uint32_t r = c;
    while (parent_[r] != r) r = parent_[r];
    while (parent_[c] != r) {
      std::uint32_t nx = parent_[c];
      parent_[c] = r;
      c = nx;
    }
    return r;
  }

  void define(std::uint32_t c, Generator g) {
    if (next_ >= cap_) throw TableFull{};
    if (next_ >= rows_) grow(std::min(cap_, rows_ * 2));
    std::uint32_t d = static_cast<std::uint32_t>(next_++);
    parent_.push_back(d);
    entry(c, g) = d;
    entry(d, g) = c;
    ++live_;
    ++defined_total_;
  }

  void merge(std::uint32_t a, std::uint32_t b) {
    a = rep(a);
    b = rep(b);
    if (a == b) return;
    if (a > b) std::swap(a, b);
    parent_[b] = a;
    queue_.push_back(b);
    --live_;
  }

  void coincidence(std::uint32_t a, std::uint32_t b) {
    merge(a, b);
    while (!queue_.empty()) {
      std::uint32_t gamma = queue_.front();
      queue_.pop_front();
      for (Generator g = 0; g < n_; ++g) {
        std::uint32_t delta = entry(gamma, g);
        if (delta == kUndefined) continue;
        entry(gamma, g) = kUndefined;
        if (entry(delta, g) == gamma) entry(delta, g) = kUndefined;
        std::uint32_t mu = rep(gamma), nu = rep(delta);
        if (entry(mu, g) != kUndefined) {
          merge(nu, entry(mu, g));
        } else if (entry(nu, g) != kUndefined) {
          merge(mu, entry(nu, g));
        } else {
          entry(mu, g) = nu;
          entry(nu, g) = mu;
        }
      }
    }
  }

  // Scans word w from coset c; with `fill`, gaps are closed by new definitions.
  void scan(std::uint32_t c, const Word& w, bool fill) {
    const std::size_t len = w.size();
    while (true) {
      std::uint32_t f = c;
      std::size_t i = 0;
      while (i < len && entry(f, w[i]) != kUndefined) f = entry(f, w[i++]);
      if (i == len) {
        if (f != c) coincidence(f, c);
        return;
      }
      std::uint32_t b = c;
      std::size_t j = len;  // letters j..len-1 traced backwards
      while (j > i && entry(b, w[j - 1]) != kUndefined) b = entry(b, w[--j]);
      if (j == i) {
        coincidence(f, b);
        return;
      }
      if (j == i + 1) {
        entry(f, w[i]) = b;
        entry(b, w[i]) = f;
        return;
      }
      if (!fill) return;
      define(f, w[i]);
    }
  }

  void lookahead(const std::vector<Word>& subgroup) {
    for (const Word& w : subgroup) scan(0, w, false);
    for (std::size_t c = 0; c < next_; ++c) {
      for (const Word& r : relators_) {
        if (!alive(c)) break;
        scan(static_cast<std::uint32_t>(c), r, false);
      }
    }
  }

  // Renumbers live cosets in order; returns the new index of `keep`'s first live successor.
  std::size_t compact(std::size_t keep) {
    std::vector<std::uint32_t> id(next_, kUndefined);
    std::uint32_t k = 0;
    std::size_t new_keep = 0;
    bool keep_set = false;
    for (std::size_t c = 0; c < next_; ++c) {
      if (!keep_set && c >= keep) {
        new_keep = k;
        keep_set = true;
      }
      if (alive(c)) id[c] = k++;
    }
    if (!keep_set) new_keep = k;
    for (std::size_t c = 0; c < next_; ++c) {
      if (!alive(c)) continue;
      for (Generator g = 0; g < n_; ++g) {
        std::uint32_t e = entry(c, g);
        table_[id[c] * n_ + g] = e == kUndefined ? kUndefined : id[e];
      }
    }
    std::fill(table_.begin() + static_cast<std::ptrdiff_t>(k * n_), table_.end(), kUndefined);
    next_ = k;
    parent_.resize(k);
    for (std::uint32_t c = 0; c < k; ++c) parent_[c] = c;
    live_ = k;
    return new_keep;
  }

  std::size_t n_;
  std::vector<Word> relators_;
  std::size_t cap_;
  std::vector<std::uint32_t> table_;
  std::size_t rows_ = 0;
  std::vector<std::uint32_t> parent_;
  std::deque<std::uint32_t> queue_;
  std::size_t next_ = 0;
  std::size_t live_ = 0;
  std::size_t defined_total_ = 1;
};

}  // namespace

CosetTable todd_coxeter(const GroupPresentation& p, const std::vector<Word>& subgroup,
                        std::size_t max_cosets) {
  validate(p);
  for (const Word& w : subgroup) {
    for (Generator g : w) {
      if (g >= p.ngens) throw Error(ErrorCode::kInvalidInput, "subgroup word letter out of range");
    }
  }
  if (p.ngens == 0) {
    CosetTable t;
    t.subgroup = subgroup;
    t.defined_total = 1;
    return t;
  }
  return Enumerator(p, max_cosets).run(subgroup);
}

bool table_consistent(const GroupPresentation& p, const CosetTable& t) {
  auto trace = [&](std::size_t c, const Word& w) {
    for (Generator g : w) c = t.at(c, g);
    return c;
  };
  for (std::size_t c = 0; c < t.size(); ++c) {
    for (Generator g = 0; g < t.ngens; ++g) {
      if (t.at(t.at(c, g), g) != c) return false;
    }
    for (const Word& r : p.relators) {
      if (trace(c, r) != c) return false;
    }
  }
  for (const Word& w : t.subgroup) {
    if (trace(0, w) != 0) return false;
  }
  return true;
}

PermGroup perm_image(const CosetTable& t) {
  std::vector<Permutation> gens;
  for (Generator g = 0; g < t.ngens; ++g) {
    std::vector<Point> img(t.size());
    for (std::size_t c = 0; c < t.size(); ++c) img[c] = t.at(c, g);
    gens.emplace_back(std::move(img));
  }
  return PermGroup(t.size(), std::move(gens), t.subgroup.empty());
}

}  // namespace hyperforge
