#include "subprod/subshift.hpp"

#include <algorithm>
#include <utility>

namespace subprod::subshift {

using ncpoly::Letters;
using ncpoly::word_count;

Language::Language(int d, std::vector<Word> forbidden, bool prune)
    : d_(d), forbidden_(std::move(forbidden)), prune_(prune) {
  if (d < 1) throw InputError("alphabet size must be at least 1");
  for (const auto& w : forbidden_) {
    if (w.d() != d) throw InputError("forbidden word over a different alphabet");
    if (w.length() < 2) {
      throw InputError("forbidden words must have length >= 2 (got \"" + w.str() + "\")");
    }
    step_ = std::max(step_, w.length() - 1);
  }
  levels_.push_back({Word({}, d)});
  if (!prune_ || forbidden_.empty()) return;

  const Index nv = word_count(d, step_);
  const Index ne = nv * d;
  vertex_alive_.assign(static_cast<std::size_t>(nv), false);
  edge_alive_.assign(static_cast<std::size_t>(ne), false);
  for (Index v = 0; v < nv; ++v) {
    vertex_alive_[v] = avoids_forbidden(Word::from_index(v, step_, d).letters());
  }
  for (Index e = 0; e < ne; ++e) {
    edge_alive_[e] = avoids_forbidden(Word::from_index(e, step_ + 1, d).letters());
  }
  // Edge e runs from its first step_ letters (e / d) to its last (e % nv).
  for (bool changed = true; changed;) {
    changed = false;
    std::vector<int> in(static_cast<std::size_t>(nv), 0);
    std::vector<int> out(static_cast<std::size_t>(nv), 0);
    for (Index e = 0; e < ne; ++e) {
      if (!edge_alive_[e]) continue;
      const Index src = e / d;
      const Index dst = e % nv;
      if (!vertex_alive_[src] || !vertex_alive_[dst]) {
        edge_alive_[e] = false;
        continue;
      }
      ++out[src];
      ++in[dst];
    }
    for (Index v = 0; v < nv; ++v) {
      if (vertex_alive_[v] && (in[v] == 0 || out[v] == 0)) {
        vertex_alive_[v] = false;
        changed = true;
      }
    }
  }
}

bool Language::avoids_forbidden(const Letters& w) const {
  for (const auto& f : forbidden_) {
    const auto& fl = f.letters();
    if (std::search(w.begin(), w.end(), fl.begin(), fl.end()) != w.end()) return false;
  }
  return true;
}

bool Language::in_pruned_graph(const Letters& w) const {
  const int n = static_cast<int>(w.size());
  if (n == 0) return true;
  auto index_of = [&](int start, int len) {
    Index idx = 0;
    for (int j = start; j < start + len; ++j) idx = idx * d_ + (w[j] - 1);
    return idx;
  };
  if (n > step_) {
    for (int s = 0; s + step_ + 1 <= n; ++s) {
      if (!edge_alive_[index_of(s, step_ + 1)]) return false;
    }
    return true;
  }
  // Shorter than a vertex: must be a prefix of a surviving vertex.
  const Index span = word_count(d_, step_ - n);
  const Index first = index_of(0, n) * span;
  for (Index v = first; v < first + span; ++v) {
    if (vertex_alive_[v]) return true;
  }
  return false;
}

bool Language::allowed(const Word& w) {
  if (w.d() != d_) throw InputError("word over a different alphabet");
  if (!avoids_forbidden(w.letters())) return false;
  return !prune_ || forbidden_.empty() || in_pruned_graph(w.letters());
}

const std::vector<Word>& Language::words(int n) {
  if (n < 0) throw InputError("negative word length");
  while (static_cast<int>(levels_.size()) <= n) {
    std::vector<Word> next;
    for (const auto& w : levels_.back()) {
      for (int a = 1; a <= d_; ++a) {
        Letters l = w.letters();
        l.push_back(a);
        Word cand(std::move(l), d_);
        if (allowed(cand)) next.push_back(std::move(cand));
      }
    }
    levels_.push_back(std::move(next));
  }
  return levels_[static_cast<std::size_t>(n)];
}

std::vector<Word> Language::follower_set(int letter, int k) {
  if (letter < 1 || letter > d_) throw InputError("follower_set: letter out of range");
  std::vector<Word> out;
  for (const auto& w : words(k)) {
    if (allowed(Word({letter}, d_) + w)) out.push_back(w);
  }
  return out;
}

}  // namespace subprod::subshift
