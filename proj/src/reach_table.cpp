#include "zsum/reach_table.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <stdexcept>

#include "zsum/sequence.hpp"

namespace zsum {

namespace {

constexpr std::uint32_t kMaxGroupSize = 1u << 22;
constexpr std::uint32_t kAddTableLimit = 2048;
constexpr int kMaxClasses = 1 << 20;

}  // namespace

LengthClasses::LengthClasses(const LengthSet& lengths) : lengths_(lengths) {
  switch (lengths.kind()) {
    case LengthSet::Kind::all:
      count_ = 1;
      next_ = {0};
      accepts_ = {1};
      return;
    case LengthSet::Kind::multiples_of: {
      if (lengths.param() > kMaxClasses) throw std::invalid_argument("reach table: d too large");
      count_ = static_cast<int>(lengths.param());
      next_.resize(static_cast<std::size_t>(count_));
      accepts_.assign(static_cast<std::size_t>(count_), 0);
      for (int c = 0; c < count_; ++c) next_[static_cast<std::size_t>(c)] = (c + 1) % count_;
      accepts_[0] = 1;
      return;
    }
    default: {
      Int b = *lengths.max_bound();
      if (b + 1 > kMaxClasses) throw std::invalid_argument("reach table: max(L) too large");
      // class c holds length c+1; class b holds every length > b.
      count_ = static_cast<int>(b + 1);
      next_.resize(static_cast<std::size_t>(count_));
      accepts_.assign(static_cast<std::size_t>(count_), 0);
      for (int c = 0; c < count_; ++c) {
        next_[static_cast<std::size_t>(c)] = std::min(c + 1, count_ - 1);
        if (c < count_ - 1 && lengths.contains(c + 1)) accepts_[static_cast<std::size_t>(c)] = 1;
      }
      return;
    }
  }
}

int LengthClasses::of_length(Int length) const {
  switch (lengths_.kind()) {
    case LengthSet::Kind::all: return 0;
    case LengthSet::Kind::multiples_of: return static_cast<int>(length % count_);
    default: return static_cast<int>(std::min<Int>(length, count_) - 1);
  }
}

ReachContext::ReachContext(GroupSpec group, const LengthSet& lengths)
    : group_(std::move(group)), classes_(lengths) {
  Int order = group_.order();
  if (order > kMaxGroupSize) throw std::invalid_argument("reach table: group too large");
  size_ = static_cast<std::uint32_t>(order);
  row_words_ = (size_ + 63) / 64;
  if (size_ <= kAddTableLimit) {
    add_table_.resize(static_cast<std::size_t>(size_) * size_);
    for (std::uint32_t a = 0; a < size_; ++a)
      for (std::uint32_t b = 0; b < size_; ++b)
        add_table_[static_cast<std::size_t>(a) * size_ + b] = add_slow(a, b);
  }
  if (size_ <= 64) {
    byte_slots_ = (size_ + 7) / 8;
    byte_shift_.assign(static_cast<std::size_t>(size_) * byte_slots_ * 256, 0);
    for (std::uint32_t g = 0; g < size_; ++g)
      for (std::size_t slot = 0; slot < byte_slots_; ++slot)
        for (unsigned v = 0; v < 256; ++v) {
          Word out = 0;
          for (unsigned bit = 0; bit < 8; ++bit) {
            std::uint32_t e = static_cast<std::uint32_t>(slot * 8 + bit);
            if ((v >> bit & 1u) && e < size_) out |= Word{1} << add(e, g);
          }
          byte_shift_[(static_cast<std::size_t>(g) * byte_slots_ + slot) * 256 + v] = out;
        }
  }
}

std::shared_ptr<const ReachContext> ReachContext::get(const GroupSpec& group, const LengthSet& lengths) {
  static std::mutex mu;
  static std::map<std::pair<GroupSpec, std::string>, std::shared_ptr<const ReachContext>> cache;
  auto key = std::make_pair(group, lengths.to_string());
  {
    std::lock_guard lock(mu);
    if (auto it = cache.find(key); it != cache.end()) return it->second;
  }
  auto ctx = std::make_shared<const ReachContext>(group, lengths);
  std::lock_guard lock(mu);
  if (cache.size() > 256) cache.clear();
  return cache.emplace(key, ctx).first->second;
}

std::uint32_t ReachContext::add_slow(std::uint32_t a, std::uint32_t b) const {
  const auto& n = group_.factors();
  std::uint32_t result = 0, stride = 1;
  for (std::size_t i = n.size(); i-- > 0;) {
    auto m = static_cast<std::uint32_t>(n[i]);
    std::uint32_t ca = a % m, cb = b % m;
    a /= m;
    b /= m;
    result += ((ca + cb) % m) * stride;
    stride *= m;
  }
  return result;
}

std::uint32_t ReachContext::add(std::uint32_t a, std::uint32_t b) const {
  if (!add_table_.empty()) return add_table_[static_cast<std::size_t>(a) * size_ + b];
  return add_slow(a, b);
}

std::uint32_t ReachContext::neg(std::uint32_t a) const {
  const auto& n = group_.factors();
  std::uint32_t result = 0, stride = 1;
  for (std::size_t i = n.size(); i-- > 0;) {
    auto m = static_cast<std::uint32_t>(n[i]);
    std::uint32_t c = a % m;
    a /= m;
    result += ((m - c) % m) * stride;
    stride *= m;
  }
  return result;
}

void ReachContext::translate_row(const Word* src, Word* dst, std::uint32_t g) const {
  if (!byte_shift_.empty()) {
    Word row = src[0];
    Word out = 0;
    const Word* tab = &byte_shift_[static_cast<std::size_t>(g) * byte_slots_ * 256];
    for (std::size_t slot = 0; slot < byte_slots_ && row; ++slot, row >>= 8)
      out |= tab[slot * 256 + (row & 0xffu)];
    dst[0] |= out;
    return;
  }
  for (std::size_t w = 0; w < row_words_; ++w) {
    Word bits = src[w];
    while (bits) {
      auto e = static_cast<std::uint32_t>(w * 64 + static_cast<std::size_t>(__builtin_ctzll(bits)));
      bits &= bits - 1;
      std::uint32_t t = add(e, g);
      dst[t / 64] |= Word{1} << (t % 64);
    }
  }
}

void ReachContext::step(const Word* src, Word* dst, std::uint32_t g) const {
  const std::size_t total = table_words();
  std::copy(src, src + total, dst);
  const int k = classes_.count();
  for (int c = 0; c < k; ++c) {
    const Word* row = src + static_cast<std::size_t>(c) * row_words_;
    Word* out = dst + static_cast<std::size_t>(classes_.next(c)) * row_words_;
    translate_row(row, out, g);
  }
  Word* first = dst + static_cast<std::size_t>(classes_.of_length(1)) * row_words_;
  first[g / 64] |= Word{1} << (g % 64);
}

bool ReachContext::forbidden(const Word* table) const {
  const int k = classes_.count();
  for (int c = 0; c < k; ++c)
    if (classes_.accepts(c) && (table[static_cast<std::size_t>(c) * row_words_] & 1u)) return true;
  return false;
}

bool ReachContext::test(const Word* table, std::uint32_t sum, int cls) const {
  const Word* row = table + static_cast<std::size_t>(cls) * row_words_;
  return (row[sum / 64] >> (sum % 64)) & 1u;
}

ReachTable::ReachTable(const GroupSpec& group, const LengthSet& lengths)
    : ctx_(ReachContext::get(group, lengths)), bits_(ctx_->table_words(), 0) {}

void ReachTable::incorporate(ElementIndex g, Int mult) {
  if (mult < 1) throw std::invalid_argument("reach_incorporate: mult must be >= 1");
  if (g >= ctx_->group_size()) throw std::invalid_argument("reach_incorporate: element out of range");
  std::vector<Word> next(bits_.size());
  for (Int i = 0; i < mult; ++i) {
    ctx_->step(bits_.data(), next.data(), static_cast<std::uint32_t>(g));
    if (next == bits_) break;  // fixed point: further copies add nothing
    bits_.swap(next);
  }
}

bool ReachTable::test(ElementIndex sum, int cls) const {
  return ctx_->test(bits_.data(), static_cast<std::uint32_t>(sum), cls);
}

bool ReachTable::has_forbidden() const { return ctx_->forbidden(bits_.data()); }

ReachTable reach_table_of(const Sequence& s, const LengthSet& lengths) {
  ReachTable table(s.group(), lengths);
  for (const auto& [g, k] : s.multiplicities()) table.incorporate(g, k);
  return table;
}

bool has_forbidden_subsequence(const Sequence& s, const LengthSet& lengths) {
  return reach_table_of(s, lengths).has_forbidden();
}

}  // namespace zsum
