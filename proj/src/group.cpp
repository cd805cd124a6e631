#include "zsum/group.hpp"

#include <algorithm>
#include <charconv>
#include <map>
#include <stdexcept>
#include <tuple>

namespace zsum {

namespace {

Int mod_inverse(Int a, Int m) {
  if (m == 1) return 0;
  Int old_r = ((a % m) + m) % m, r = m, old_s = 1, s = 0;
  while (r != 0) {
    Int q = old_r / r;
    std::tie(old_r, r) = std::pair{r, old_r - q * r};
    std::tie(old_s, s) = std::pair{s, old_s - q * s};
  }
  if (old_r != 1) throw std::logic_error("mod_inverse: not invertible");
  return ((old_s % m) + m) % m;
}

Int mulmod(Int a, Int b, Int m) {
  return static_cast<Int>(static_cast<__int128>(a) * b % m);
}

std::vector<Int> parse_int_list(std::string_view text, char sep) {
  std::vector<Int> out;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find(sep, pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view tok = text.substr(pos, end - pos);
    while (!tok.empty() && tok.front() == ' ') tok.remove_prefix(1);
    while (!tok.empty() && tok.back() == ' ') tok.remove_suffix(1);
    Int v = 0;
    auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (tok.empty() || ec != std::errc{} || ptr != tok.data() + tok.size())
      throw std::invalid_argument("malformed integer list: '" + std::string(text) + "'");
    out.push_back(v);
    pos = end + 1;
  }
  return out;
}

}  // namespace

GroupSpec::GroupSpec(std::vector<Int> invariant_factors) : factors_(std::move(invariant_factors)) {
  for (std::size_t i = 0; i < factors_.size(); ++i) {
    if (factors_[i] < 2)
      throw std::invalid_argument("GroupSpec: invariant factors must be >= 2");
    if (i > 0 && factors_[i] % factors_[i - 1] != 0)
      throw std::invalid_argument("GroupSpec: factors must form a divisibility chain");
  }
}

GroupSpec GroupSpec::cyclic(Int n) { return canonicalize({n}); }

Int GroupSpec::order() const {
  Int r = 1;
  for (Int n : factors_) r *= n;
  return r;
}

bool GroupSpec::is_p_group() const {
  if (factors_.empty()) return true;
  return factorize(exponent()).size() == 1;
}

ElementIndex GroupSpec::index_of(const std::vector<Int>& coords) const {
  if (coords.size() != factors_.size())
    throw std::invalid_argument("index_of: coordinate count mismatch");
  ElementIndex idx = 0;
  for (std::size_t i = 0; i < factors_.size(); ++i) {
    if (coords[i] < 0 || coords[i] >= factors_[i])
      throw std::invalid_argument("index_of: coordinate out of range");
    idx = idx * static_cast<ElementIndex>(factors_[i]) + static_cast<ElementIndex>(coords[i]);
  }
  return idx;
}

std::vector<Int> GroupSpec::coords_of(ElementIndex index) const {
  std::vector<Int> coords(factors_.size());
  for (std::size_t i = factors_.size(); i-- > 0;) {
    auto n = static_cast<ElementIndex>(factors_[i]);
    coords[i] = static_cast<Int>(index % n);
    index /= n;
  }
  if (index != 0) throw std::invalid_argument("coords_of: index out of range");
  return coords;
}

std::string GroupSpec::to_string() const {
  if (factors_.empty()) return "1";
  std::string s;
  for (std::size_t i = 0; i < factors_.size(); ++i) {
    if (i) s += ',';
    s += std::to_string(factors_[i]);
  }
  return s;
}

GroupSpec canonicalize(const std::vector<Int>& orders) {
  return CyclicPresentation(orders).canonical();
}

GroupSpec direct_sum(const GroupSpec& g, const GroupSpec& h) {
  std::vector<Int> all = g.factors();
  all.insert(all.end(), h.factors().begin(), h.factors().end());
  return canonicalize(all);
}

GroupSpec p_component(const GroupSpec& g, Int p) {
  if (!is_prime(p)) throw std::invalid_argument("p_component: p must be prime");
  std::vector<Int> parts;
  for (Int n : g.factors()) {
    Int pp = ipow(p, valuation(n, p));
    if (pp > 1) parts.push_back(pp);
  }
  return GroupSpec(parts);
}

std::vector<Int> prime_divisors(const GroupSpec& g) {
  std::vector<Int> out;
  for (auto [p, e] : factorize(g.exponent())) out.push_back(p);
  return out;
}

GroupSpec parse_group(std::string_view text) {
  while (!text.empty() && text.front() == ' ') text.remove_prefix(1);
  while (!text.empty() && text.back() == ' ') text.remove_suffix(1);
  if (text.empty()) return GroupSpec{};
  return canonicalize(parse_int_list(text, ','));
}

// --- elements --------------------------------------------------------------

GroupElement::GroupElement(GroupSpec group, std::vector<Int> coords)
    : group_(std::move(group)), coords_(std::move(coords)) {
  if (coords_.size() != group_.factors().size())
    throw std::invalid_argument("GroupElement: coordinate count does not match group rank");
  for (std::size_t i = 0; i < coords_.size(); ++i) {
    Int n = group_.factors()[i];
    coords_[i] = ((coords_[i] % n) + n) % n;
  }
}

GroupElement GroupElement::zero(const GroupSpec& group) {
  return GroupElement(group, std::vector<Int>(group.factors().size(), 0));
}

GroupElement GroupElement::basis(const GroupSpec& group, int i) {
  if (i < 0 || i >= group.rank()) throw std::out_of_range("basis: slot out of range");
  std::vector<Int> c(group.factors().size(), 0);
  c[static_cast<std::size_t>(i)] = 1;
  return GroupElement(group, std::move(c));
}

GroupElement GroupElement::at(const GroupSpec& group, ElementIndex index) {
  return GroupElement(group, group.coords_of(index));
}

bool GroupElement::is_zero() const {
  return std::all_of(coords_.begin(), coords_.end(), [](Int c) { return c == 0; });
}

std::string GroupElement::to_string() const {
  if (coords_.empty()) return "0";
  std::string s;
  for (std::size_t i = 0; i < coords_.size(); ++i) {
    if (i) s += '.';
    s += std::to_string(coords_[i]);
  }
  return s;
}

GroupElement add(const GroupElement& a, const GroupElement& b) {
  if (a.group() != b.group()) throw std::invalid_argument("add: elements of different groups");
  std::vector<Int> c(a.coords().size());
  for (std::size_t i = 0; i < c.size(); ++i) c[i] = a.coords()[i] + b.coords()[i];
  return GroupElement(a.group(), std::move(c));
}

GroupElement neg(const GroupElement& a) {
  std::vector<Int> c(a.coords().size());
  for (std::size_t i = 0; i < c.size(); ++i) c[i] = -a.coords()[i];
  return GroupElement(a.group(), std::move(c));
}

GroupElement scale(const GroupElement& a, Int k) {
  std::vector<Int> c(a.coords().size());
  for (std::size_t i = 0; i < c.size(); ++i) {
    Int n = a.group().factors()[i];
    c[i] = mulmod(a.coords()[i], ((k % n) + n) % n, n);
  }
  return GroupElement(a.group(), std::move(c));
}

Int element_order(const GroupElement& a) {
  Int ord = 1;
  for (std::size_t i = 0; i < a.coords().size(); ++i) {
    Int n = a.group().factors()[i];
    ord = lcm(ord, n / gcd(n, a.coords()[i]));
  }
  return ord;
}

std::vector<GroupElement> enumerate_elements(const GroupSpec& g) {
  std::vector<GroupElement> out;
  auto n = static_cast<ElementIndex>(g.order());
  out.reserve(n);
  for (ElementIndex i = 0; i < n; ++i) out.push_back(GroupElement::at(g, i));
  return out;
}

GroupElement parse_element(const GroupSpec& g, std::string_view text) {
  std::vector<Int> coords = parse_int_list(text, '.');
  if (g.is_trivial() && coords == std::vector<Int>{0}) return GroupElement::zero(g);
  if (coords.size() != g.factors().size())
    throw std::invalid_argument("element '" + std::string(text) + "' has wrong rank for group " +
                                g.to_string());
  for (std::size_t i = 0; i < coords.size(); ++i)
    if (coords[i] < 0 || coords[i] >= g.factors()[i])
      throw std::invalid_argument("element '" + std::string(text) + "' has out-of-range coordinate");
  return GroupElement(g, std::move(coords));
}

// --- presentations and reductions -----------------------------------------

CyclicPresentation::CyclicPresentation(std::vector<Int> orders) : orders_(std::move(orders)) {
  // prime -> (exponent, source) pairs
  std::map<Int, std::vector<std::pair<int, std::size_t>>> by_prime;
  for (std::size_t i = 0; i < orders_.size(); ++i) {
    if (orders_[i] < 1) throw std::invalid_argument("canonicalize: orders must be >= 1");
    for (auto [p, e] : factorize(orders_[i])) by_prime[p].emplace_back(e, i);
  }
  std::size_t r = 0;
  for (auto& [p, list] : by_prime) {
    std::sort(list.begin(), list.end(),
              [](auto& a, auto& b) { return a.first != b.first ? a.first > b.first : a.second < b.second; });
    r = std::max(r, list.size());
  }
  std::vector<Int> factors(r, 1);
  for (auto& [p, list] : by_prime) {
    for (std::size_t k = 0; k < list.size(); ++k) {
      std::size_t target = r - 1 - k;
      Int pp = ipow(p, list[k].first);
      factors[target] *= pp;
      pieces_.push_back({list[k].second, pp, target});
    }
  }
  canonical_ = GroupSpec(factors);
}

std::vector<Int> CyclicPresentation::to_canonical(const std::vector<Int>& coords) const {
  if (coords.size() != orders_.size())
    throw std::invalid_argument("to_canonical: coordinate count mismatch");
  const auto& n = canonical_.factors();
  std::vector<Int> out(n.size(), 0);
  for (const Piece& pc : pieces_) {
    Int modulus = n[pc.target];
    Int rest = modulus / pc.prime_power;
    Int coef = mulmod(rest, mod_inverse(rest % pc.prime_power, pc.prime_power), modulus);
    Int residue = ((coords[pc.source] % pc.prime_power) + pc.prime_power) % pc.prime_power;
    out[pc.target] = (out[pc.target] + mulmod(coef, residue, modulus)) % modulus;
  }
  return out;
}

ReductionHom::ReductionHom(GroupSpec domain, std::vector<Int> moduli)
    : domain_(std::move(domain)), moduli_(std::move(moduli)), image_(moduli_) {
  if (moduli_.size() != domain_.factors().size())
    throw std::invalid_argument("reduction_hom: one modulus per invariant factor required");
  for (std::size_t i = 0; i < moduli_.size(); ++i)
    if (moduli_[i] < 1 || domain_.factors()[i] % moduli_[i] != 0)
      throw std::invalid_argument("reduction_hom: modulus must divide its invariant factor");
}

Int ReductionHom::kernel_order() const {
  Int k = 1;
  for (std::size_t i = 0; i < moduli_.size(); ++i) k *= domain_.factors()[i] / moduli_[i];
  return k;
}

GroupElement ReductionHom::operator()(const GroupElement& a) const {
  if (a.group() != domain_) throw std::invalid_argument("reduction_hom: element outside domain");
  std::vector<Int> reduced(a.coords().size());
  for (std::size_t i = 0; i < reduced.size(); ++i) reduced[i] = a.coords()[i] % moduli_[i];
  return GroupElement(image_.canonical(), image_.to_canonical(reduced));
}

}  // namespace zsum
