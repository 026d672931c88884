#include "cfloer/f2.hpp"

#include <algorithm>
#include <map>

namespace cfloer {

F2Vec f2_add(const F2Vec& a, const F2Vec& b) {
  F2Vec out;
  out.reserve(a.size() + b.size());
  std::set_symmetric_difference(a.begin(), a.end(), b.begin(), b.end(),
                                std::back_inserter(out));
  return out;
}

void F2ChainComplex::set_boundary(int gen, F2Vec image) {
  std::sort(image.begin(), image.end());
  cols_[gen] = std::move(image);
}

void F2ChainComplex::set_gradings(std::vector<Bigrading> g) {
  require(static_cast<int>(g.size()) == size(), "GradingMismatch",
          "grading count does not match generator count");
  gradings_ = std::move(g);
}

F2Vec F2ChainComplex::apply(const F2Vec& v) const {
  F2Vec out;
  for (int g : v) out = f2_add(out, cols_[g]);
  return out;
}

bool F2ChainComplex::boundary_squares_to_zero() const {
  for (int g = 0; g < size(); ++g) {
    if (!apply(cols_[g]).empty()) return false;
  }
  return true;
}

namespace {

// Row-echelon elimination over F2 on packed columns.
struct Eliminator {
  std::vector<std::vector<uint64_t>> basis;
  std::map<int, int> col_with_pivot;  // pivot row -> basis index
  int words;

  explicit Eliminator(int nrows) : words(std::max(1, (nrows + 63) / 64)) {}

  std::vector<uint64_t> pack(const F2Vec& col) const {
    std::vector<uint64_t> v(words, 0);
    for (int r : col) v[r >> 6] ^= (1ull << (r & 63));
    return v;
  }

  static int top_bit(const std::vector<uint64_t>& v) {
    for (int w = static_cast<int>(v.size()) - 1; w >= 0; --w) {
      if (v[w]) return (w << 6) + 63 - __builtin_clzll(v[w]);
    }
    return -1;
  }

  std::vector<uint64_t> reduce(std::vector<uint64_t> v) const {
    int p = top_bit(v);
    while (p >= 0) {
      auto it = col_with_pivot.find(p);
      if (it == col_with_pivot.end()) break;
      const auto& other = basis[it->second];
      for (int w = 0; w < words; ++w) v[w] ^= other[w];
      p = top_bit(v);
    }
    return v;
  }

  bool add(const F2Vec& col) {
    auto v = reduce(pack(col));
    int p = top_bit(v);
    if (p < 0) return false;
    basis.push_back(std::move(v));
    col_with_pivot[p] = static_cast<int>(basis.size()) - 1;
    return true;
  }

  bool in_span(const F2Vec& col) const { return top_bit(reduce(pack(col))) < 0; }
};

int max_row(const std::vector<F2Vec>& columns) {
  int m = 0;
  for (const auto& c : columns) {
    if (!c.empty()) m = std::max(m, c.back() + 1);
  }
  return m;
}

}  // namespace

int f2_rank(std::vector<F2Vec> columns) {
  Eliminator e(max_row(columns));
  int rank = 0;
  for (auto& c : columns) {
    if (e.add(c)) ++rank;
  }
  return rank;
}

bool f2_in_span(const std::vector<F2Vec>& columns, const F2Vec& target) {
  int nrows = std::max(max_row(columns), target.empty() ? 0 : target.back() + 1);
  Eliminator e(nrows);
  for (const auto& c : columns) e.add(c);
  return e.in_span(target);
}

namespace {

struct GradedBlocks {
  std::map<Bigrading, std::vector<int>> gens_at;
  std::map<Bigrading, std::map<int, int>> local_index;  // gen -> dense row

  explicit GradedBlocks(const F2ChainComplex& c) {
    for (int g = 0; g < c.size(); ++g) gens_at[c.gradings()[g]].push_back(g);
    for (auto& [bg, gens] : gens_at) {
      auto& li = local_index[bg];
      for (int i = 0; i < static_cast<int>(gens.size()); ++i) li[gens[i]] = i;
    }
  }

  // Columns of d restricted to source block bg, rows re-indexed in the
  // target block (maslov-1, alexander).
  std::vector<F2Vec> block_columns(const F2ChainComplex& c, Bigrading bg) const {
    std::vector<F2Vec> out;
    auto src = gens_at.find(bg);
    if (src == gens_at.end()) return out;
    Bigrading tgt{bg.maslov - 1, bg.alexander};
    auto li = local_index.find(tgt);
    for (int g : src->second) {
      F2Vec col;
      for (int h : c.boundary(g)) {
        require(li != local_index.end(), "GradingMismatch",
                "boundary image escapes the graded block structure");
        auto it = li->second.find(h);
        require(it != li->second.end(), "GradingMismatch",
                "boundary entry is not graded (M-1, A)");
        col.push_back(it->second);
      }
      std::sort(col.begin(), col.end());
      out.push_back(std::move(col));
    }
    return out;
  }
};

}  // namespace

HomologyReport homology(const F2ChainComplex& c, const std::optional<F2Vec>& query) {
  require(c.boundary_squares_to_zero(), "BoundaryNotSquareZero",
          "boundary operator does not square to zero");
  HomologyReport rep;
  const int n = c.size();

  if (c.graded()) {
    GradedBlocks blocks(c);
    std::map<Bigrading, int> out_rank;
    int total_d_rank = 0;
    for (const auto& [bg, gens] : blocks.gens_at) {
      int r = f2_rank(blocks.block_columns(c, bg));
      out_rank[bg] = r;
      total_d_rank += r;
    }
    rep.total_rank = n - 2 * total_d_rank;
    for (const auto& [bg, gens] : blocks.gens_at) {
      int in_rank = 0;
      auto above = out_rank.find(Bigrading{bg.maslov + 1, bg.alexander});
      if (above != out_rank.end()) in_rank = above->second;
      int h = static_cast<int>(gens.size()) - out_rank[bg] - in_rank;
      if (h != 0) rep.rank_by_bigrading[bg] = h;
    }
    if (query) {
      rep.queried = true;
      rep.is_cycle = c.apply(*query).empty();
      if (rep.is_cycle && !query->empty()) {
        // Homogeneous queries are solved inside their block.
        Bigrading bg = c.gradings()[query->front()];
        bool homogeneous = true;
        for (int g : *query) homogeneous &= c.gradings()[g] == bg;
        if (homogeneous) {
          auto li = blocks.local_index.find(bg);
          F2Vec local;
          for (int g : *query) local.push_back(li->second.at(g));
          std::sort(local.begin(), local.end());
          rep.is_boundary = f2_in_span(
              blocks.block_columns(c, Bigrading{bg.maslov + 1, bg.alexander}), local);
        } else {
          std::vector<F2Vec> cols;
          for (int g = 0; g < n; ++g) cols.push_back(c.boundary(g));
          rep.is_boundary = f2_in_span(cols, *query);
        }
      } else if (rep.is_cycle) {
        rep.is_boundary = true;  // empty chain
      }
    }
    return rep;
  }

  std::vector<F2Vec> cols;
  cols.reserve(n);
  for (int g = 0; g < n; ++g) cols.push_back(c.boundary(g));
  int rank_d = f2_rank(cols);
  rep.total_rank = n - 2 * rank_d;

  if (query) {
    rep.queried = true;
    rep.is_cycle = c.apply(*query).empty();
    rep.is_boundary = rep.is_cycle && f2_in_span(cols, *query);
  }
  return rep;
}

}  // namespace cfloer
