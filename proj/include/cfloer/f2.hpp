#pragma once

// Sparse chain complexes over the two-element field, with optional
// (Maslov, Alexander) bigradings, plus plain Gaussian elimination.

#include <cstdint>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "cfloer/errors.hpp"

namespace cfloer {

using F2Vec = std::vector<int>;  // sorted generator indices with coefficient 1

F2Vec f2_add(const F2Vec& a, const F2Vec& b);

struct Bigrading {
  int maslov = 0;
  int alexander = 0;
  bool operator<(const Bigrading& o) const {
    return maslov != o.maslov ? maslov < o.maslov : alexander < o.alexander;
  }
  bool operator==(const Bigrading& o) const {
    return maslov == o.maslov && alexander == o.alexander;
  }
};

class F2ChainComplex {
public:
  F2ChainComplex() = default;
  explicit F2ChainComplex(int n) : cols_(n) {}

  int size() const { return static_cast<int>(cols_.size()); }
  void set_boundary(int gen, F2Vec image);
  const F2Vec& boundary(int gen) const { return cols_[gen]; }

  void set_gradings(std::vector<Bigrading> g);
  bool graded() const { return !gradings_.empty(); }
  const std::vector<Bigrading>& gradings() const { return gradings_; }

  F2Vec apply(const F2Vec& v) const;  // boundary of a chain
  bool boundary_squares_to_zero() const;

private:
  std::vector<F2Vec> cols_;
  std::vector<Bigrading> gradings_;
};

struct HomologyReport {
  int total_rank = 0;
  // Present only for graded complexes.
  std::map<Bigrading, int> rank_by_bigrading;
  // Filled when a query chain was supplied.
  bool queried = false;
  bool is_cycle = false;
  bool is_boundary = false;
};

// Ranks by elimination over F2; throws BoundaryNotSquareZero if d*d != 0.
HomologyReport homology(const F2ChainComplex& c,
                        const std::optional<F2Vec>& query = std::nullopt);

// Rank of the sparse matrix whose columns are given as sorted index lists.
int f2_rank(std::vector<F2Vec> columns);

// Solves "sum of chosen columns == target" over F2; returns false if
// target is not in the column span.
bool f2_in_span(const std::vector<F2Vec>& columns, const F2Vec& target);

}  // namespace cfloer
