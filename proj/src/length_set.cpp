#include "zsum/length_set.hpp"

#include <algorithm>
#include <charconv>
#include <stdexcept>

namespace zsum {

namespace {

Int parse_int(std::string_view s) {
  while (!s.empty() && s.front() == ' ') s.remove_prefix(1);
  while (!s.empty() && s.back() == ' ') s.remove_suffix(1);
  Int v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || ec != std::errc{} || ptr != s.data() + s.size())
    throw std::invalid_argument("length set: bad integer '" + std::string(s) + "'");
  return v;
}

std::vector<Int> parse_list(std::string_view s) {
  std::vector<Int> out;
  std::size_t pos = 0;
  while (pos <= s.size()) {
    std::size_t end = s.find(',', pos);
    if (end == std::string_view::npos) end = s.size();
    out.push_back(parse_int(s.substr(pos, end - pos)));
    pos = end + 1;
  }
  return out;
}

}  // namespace

LengthSet LengthSet::all_n() { return LengthSet(Kind::all, 0, 0, {}); }

LengthSet LengthSet::multiples_of(Int d) {
  if (d < 1) throw std::invalid_argument("LengthSet: multiples_of requires d >= 1");
  return LengthSet(Kind::multiples_of, d, 0, {});
}

LengthSet LengthSet::exactly(Int k) {
  if (k < 1) throw std::invalid_argument("LengthSet: exactly requires k >= 1");
  return LengthSet(Kind::exactly, k, k, {});
}

LengthSet LengthSet::interval(Int a, Int b) {
  if (a < 1 || a > b) throw std::invalid_argument("LengthSet: interval requires 1 <= a <= b");
  return LengthSet(Kind::interval, a, b, {});
}

LengthSet LengthSet::finite(std::vector<Int> values) {
  std::sort(values.begin(), values.end());
  values.erase(std::unique(values.begin(), values.end()), values.end());
  if (values.empty() || values.front() < 1)
    throw std::invalid_argument("LengthSet: finite set must be nonempty with members >= 1");
  Int lo = values.front(), hi = values.back();
  return LengthSet(Kind::finite, lo, hi, std::move(values));
}

LengthSet LengthSet::parse(std::string_view text) {
  while (!text.empty() && text.front() == ' ') text.remove_prefix(1);
  while (!text.empty() && text.back() == ' ') text.remove_suffix(1);
  if (text.empty()) throw std::invalid_argument("length set: empty");
  if (text == "N") return all_n();
  if (text.back() == 'N') return multiples_of(parse_int(text.substr(0, text.size() - 1)));
  if (text.front() == '[' && text.back() == ']') {
    auto v = parse_list(text.substr(1, text.size() - 2));
    if (v.size() != 2) throw std::invalid_argument("length set: interval needs two bounds");
    return interval(v[0], v[1]);
  }
  if (text.front() == '{' && text.back() == '}') return finite(parse_list(text.substr(1, text.size() - 2)));
  return exactly(parse_int(text));
}

bool LengthSet::contains(Int length) const {
  if (length < 1) return false;
  switch (kind_) {
    case Kind::all: return true;
    case Kind::multiples_of: return length % a_ == 0;
    case Kind::exactly: return length == a_;
    case Kind::interval: return a_ <= length && length <= b_;
    case Kind::finite: return std::binary_search(values_.begin(), values_.end(), length);
  }
  return false;
}

std::optional<Int> LengthSet::max_bound() const {
  if (kind_ == Kind::all || kind_ == Kind::multiples_of) return std::nullopt;
  return b_;
}

bool LengthSet::meets_multiples_of(Int n) const {
  switch (kind_) {
    case Kind::all:
    case Kind::multiples_of: return true;
    case Kind::exactly: return a_ % n == 0;
    case Kind::interval: return (b_ / n) * n >= a_;
    case Kind::finite:
      return std::any_of(values_.begin(), values_.end(), [n](Int v) { return v % n == 0; });
  }
  return false;
}

std::string LengthSet::to_string() const {
  switch (kind_) {
    case Kind::all: return "N";
    case Kind::multiples_of: return std::to_string(a_) + "N";
    case Kind::exactly: return std::to_string(a_);
    case Kind::interval: return "[" + std::to_string(a_) + "," + std::to_string(b_) + "]";
    case Kind::finite: {
      std::string s = "{";
      for (std::size_t i = 0; i < values_.size(); ++i) {
        if (i) s += ',';
        s += std::to_string(values_[i]);
      }
      return s + "}";
    }
  }
  return "?";
}

}  // namespace zsum
