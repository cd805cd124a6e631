#include "zsum/sequence.hpp"

#include <algorithm>
#include <charconv>
#include <stdexcept>

#include "zsum/reach_table.hpp"

namespace zsum {

Sequence Sequence::from_indices(const GroupSpec& group, const std::vector<ElementIndex>& elements) {
  Sequence s(group);
  for (ElementIndex g : elements) s.add(g);
  return s;
}

Sequence Sequence::from_elements(const GroupSpec& group, const std::vector<GroupElement>& elements) {
  Sequence s(group);
  for (const auto& g : elements) s.add(g);
  return s;
}

Sequence Sequence::parse(const GroupSpec& group, std::string_view text) {
  Sequence s(group);
  std::size_t pos = 0;
  while (pos < text.size()) {
    while (pos < text.size() && text[pos] == ' ') ++pos;
    if (pos >= text.size()) break;
    std::size_t end = text.find(' ', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view term = text.substr(pos, end - pos);
    pos = end;
    Int count = 1;
    if (auto caret = term.find('^'); caret != std::string_view::npos) {
      std::string_view m = term.substr(caret + 1);
      auto [ptr, ec] = std::from_chars(m.data(), m.data() + m.size(), count);
      if (m.empty() || ec != std::errc{} || ptr != m.data() + m.size() || count < 1)
        throw std::invalid_argument("sequence: bad multiplicity in '" + std::string(term) + "'");
      term = term.substr(0, caret);
    }
    s.add(parse_element(group, term), count);
  }
  return s;
}

void Sequence::add(ElementIndex g, Int count) {
  if (count < 0) throw std::invalid_argument("Sequence::add: negative count");
  if (count == 0) return;
  if (g >= static_cast<ElementIndex>(group_.order()))
    throw std::invalid_argument("Sequence::add: element outside group");
  mult_[g] += count;
  length_ += count;
}

void Sequence::add(const GroupElement& g, Int count) {
  if (g.group() != group_) throw std::invalid_argument("Sequence::add: element of a different group");
  add(g.index(), count);
}

Int Sequence::multiplicity(ElementIndex g) const {
  auto it = mult_.find(g);
  return it == mult_.end() ? 0 : it->second;
}

std::vector<ElementIndex> Sequence::support() const {
  std::vector<ElementIndex> out;
  out.reserve(mult_.size());
  for (const auto& [g, k] : mult_) out.push_back(g);
  return out;
}

GroupElement Sequence::sum() const {
  GroupElement total = GroupElement::zero(group_);
  for (const auto& [g, k] : mult_) total = zsum::add(total, scale(GroupElement::at(group_, g), k));
  return total;
}

ElementIndex Sequence::max_element() const {
  if (mult_.empty()) throw std::logic_error("max_element of empty sequence");
  return mult_.rbegin()->first;
}

bool Sequence::divides(const Sequence& other) const {
  if (group_ != other.group_) return false;
  return std::all_of(mult_.begin(), mult_.end(),
                     [&](const auto& kv) { return other.multiplicity(kv.first) >= kv.second; });
}

std::vector<ElementIndex> Sequence::sorted_elements() const {
  std::vector<ElementIndex> out;
  out.reserve(static_cast<std::size_t>(length_));
  for (const auto& [g, k] : mult_) out.insert(out.end(), static_cast<std::size_t>(k), g);
  return out;
}

std::string Sequence::to_string() const {
  std::string s;
  for (const auto& [g, k] : mult_) {
    if (!s.empty()) s += ' ';
    s += GroupElement::at(group_, g).to_string() + "^" + std::to_string(k);
  }
  return s;
}

bool canonical_less(const Sequence& a, const Sequence& b) {
  auto x = a.sorted_elements(), y = b.sorted_elements();
  return std::lexicographical_compare(x.begin(), x.end(), y.begin(), y.end());
}

Sequence concat(const Sequence& s, const Sequence& t) {
  if (s.group() != t.group()) throw std::invalid_argument("concat: sequences over different groups");
  Sequence out = s;
  for (const auto& [g, k] : t.multiplicities()) out.add(g, k);
  return out;
}

Sequence remove(const Sequence& s, const Sequence& t) {
  if (!t.divides(s)) throw std::invalid_argument("remove: T is not a subsequence of S");
  Sequence out(s.group());
  for (const auto& [g, k] : s.multiplicities()) out.add(g, k - t.multiplicity(g));
  return out;
}

bool is_zero_sum_free(const Sequence& s) { return !has_forbidden_subsequence(s, LengthSet::all_n()); }

bool is_minimal_zero_sum(const Sequence& s) {
  if (s.empty() || !s.sum().is_zero()) return false;
  // Any proper zero-sum subsequence misses at least one copy of some support element.
  for (ElementIndex g : s.support()) {
    Sequence one(s.group());
    one.add(g);
    if (!is_zero_sum_free(remove(s, one))) return false;
  }
  return true;
}

Sequence apply_hom(const ReductionHom& phi, const Sequence& s) {
  if (s.group() != phi.domain()) throw std::invalid_argument("apply_hom: sequence outside domain");
  Sequence out(phi.codomain());
  for (const auto& [g, k] : s.multiplicities()) out.add(phi(GroupElement::at(s.group(), g)), k);
  return out;
}

std::vector<Sequence> canonical_extensions(const Sequence& s) {
  std::vector<Sequence> out;
  auto order = static_cast<ElementIndex>(s.group().order());
  ElementIndex start = s.empty() ? 0 : s.max_element();
  for (ElementIndex g = start; g < order; ++g) {
    Sequence child = s;
    child.add(g);
    out.push_back(std::move(child));
  }
  return out;
}

}  // namespace zsum
