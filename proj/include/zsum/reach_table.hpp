#pragma once

#include <cstdint>
#include <memory>
#include <vector>

#include "zsum/group.hpp"
#include "zsum/length_set.hpp"

namespace zsum {

using Word = std::uint64_t;

/// How subsequence lengths are folded into a finite set of classes:
/// one class for N, residues mod d for dN, and exact counts 1..b with a
/// saturating class b+1 for the bounded kinds (b = max L).
class LengthClasses {
 public:
  explicit LengthClasses(const LengthSet& lengths);

  int count() const { return count_; }
  int of_length(Int length) const;
  int next(int cls) const { return next_[static_cast<std::size_t>(cls)]; }
  bool accepts(int cls) const { return accepts_[static_cast<std::size_t>(cls)]; }
  const LengthSet& lengths() const { return lengths_; }

 private:
  LengthSet lengths_;
  int count_ = 1;
  std::vector<int> next_;
  std::vector<char> accepts_;
};

/// Shared, immutable arithmetic for reach tables over one (G, L): element
/// addition and per-element translation of a packed bit row. Tables are
/// class-major: class c occupies words [c*W, (c+1)*W).
class ReachContext {
 public:
  ReachContext(GroupSpec group, const LengthSet& lengths);

  /// Cached per (G, L); safe to call from multiple threads.
  static std::shared_ptr<const ReachContext> get(const GroupSpec& group, const LengthSet& lengths);

  const GroupSpec& group() const { return group_; }
  const LengthClasses& classes() const { return classes_; }
  std::uint32_t group_size() const { return size_; }
  std::size_t row_words() const { return row_words_; }
  std::size_t table_words() const { return row_words_ * static_cast<std::size_t>(classes_.count()); }

  std::uint32_t add(std::uint32_t a, std::uint32_t b) const;
  std::uint32_t neg(std::uint32_t a) const;

  /// dst = src + one more copy of g: src | translate(src, g, +1) | {(g, len 1)}.
  /// dst must not alias src.
  void step(const Word* src, Word* dst, std::uint32_t g) const;
  /// True iff (0, c) is set for some class c whose lengths lie in L.
  bool forbidden(const Word* table) const;
  bool test(const Word* table, std::uint32_t sum, int cls) const;

 private:
  void translate_row(const Word* src, Word* dst, std::uint32_t g) const;
  std::uint32_t add_slow(std::uint32_t a, std::uint32_t b) const;

  GroupSpec group_;
  LengthClasses classes_;
  std::uint32_t size_ = 1;
  std::size_t row_words_ = 1;
  std::vector<std::uint32_t> add_table_;  // size*size when small
  std::vector<Word> byte_shift_;          // [g][byte slot][byte value] when size <= 64
  std::size_t byte_slots_ = 0;
};

/// Boolean table over (sum, length class) of everything reachable by
/// nonempty subsequences of the elements incorporated so far.
class ReachTable {
 public:
  ReachTable(const GroupSpec& group, const LengthSet& lengths);

  /// Adds up to `mult` copies of g. Bits only flip false -> true.
  void incorporate(ElementIndex g, Int mult);
  bool test(ElementIndex sum, int cls) const;
  /// A nonempty zero-sum subsequence with length in L has been reached.
  bool has_forbidden() const;

  const ReachContext& context() const { return *ctx_; }
  const std::vector<Word>& bits() const { return bits_; }

  friend bool operator==(const ReachTable& a, const ReachTable& b) { return a.bits_ == b.bits_; }

 private:
  std::shared_ptr<const ReachContext> ctx_;
  std::vector<Word> bits_;
};

class Sequence;

/// Folds reach_incorporate over supp(S) in canonical order.
ReachTable reach_table_of(const Sequence& s, const LengthSet& lengths);

/// True iff some nonempty T | S has sigma(T) = 0 and |T| in L.
bool has_forbidden_subsequence(const Sequence& s, const LengthSet& lengths);

}  // namespace zsum
