#pragma once

// Languages of words avoiding a finite set of forbidden factors.

#include <vector>

#include "subprod/ncpoly.hpp"

namespace subprod::subshift {

using ncpoly::Word;

class Language {
 public:
  // With prune = false the language is every word avoiding all of
  // `forbidden` as a factor. With prune = true only words that occur in some
  // bi-infinite sequence avoiding `forbidden` are kept; those are read off
  // the higher-block graph after iteratively deleting sources and sinks.
  Language(int d, std::vector<Word> forbidden, bool prune);

  int d() const { return d_; }
  bool pruned() const { return prune_; }
  const std::vector<Word>& forbidden() const { return forbidden_; }
  // Longest forbidden word minus one (0 for the full shift).
  int step() const { return step_; }

  // Allowed words of length n, lexicographic order. Computed lazily and cached.
  const std::vector<Word>& words(int n);
  bool allowed(const Word& w);

  // {alpha in words(k) : i alpha allowed}.
  std::vector<Word> follower_set(int letter, int k);

 private:
  bool avoids_forbidden(const ncpoly::Letters& w) const;
  bool in_pruned_graph(const ncpoly::Letters& w) const;

  int d_;
  std::vector<Word> forbidden_;
  bool prune_;
  int step_ = 0;
  std::vector<std::vector<Word>> levels_;
  // Surviving vertices (length step_) and edges (length step_ + 1), as
  // lexicographic indices.
  std::vector<bool> vertex_alive_;
  std::vector<bool> edge_alive_;
};

}  // namespace subprod::subshift
