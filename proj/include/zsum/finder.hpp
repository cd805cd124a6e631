#pragma once

#include <optional>
#include <stdexcept>
#include <vector>

#include "zsum/length_set.hpp"
#include "zsum/sequence.hpp"

namespace zsum {

class HypothesisUnmet : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// An extraction that cannot fail under its hypotheses did fail.
class ExtractionFailed : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

struct Certificate {
  Sequence subsequence{GroupSpec{}};
  Int length = 0;
  LengthSet lengths = LengthSet::all_n();
  GroupElement sum = GroupElement::zero(GroupSpec{});
};

/// subsequence | original, sigma = 0, nonempty, and |subsequence| in L.
bool verify_certificate(const Certificate& c, const Sequence& original);

/// A nonempty zero-sum T | S with |T| in L, or nullopt when none exists.
/// Among all such T the one using the fewest copies of the largest support
/// element is chosen, then of the next largest, and so on.
std::optional<Certificate> find_zero_sum(const Sequence& s, const LengthSet& lengths);

struct BlockDecomposition {
  std::vector<Sequence> blocks;  // S_1, ..., S_t
  Sequence remainder{GroupSpec{}};
};

/// S = S_1 ... S_t S' over a group of rank <= 2 with exponent n, each S_i
/// zero-sum, |S_i| = n for i < t and |S_t| in {n, 2n}. Requires
/// |S| >= (t-1) n + s_{nN}(G); s_nN defaults to the rank-2 closed form.
BlockDecomposition decompose_blocks(const Sequence& s, Int t, std::optional<Int> s_nN = std::nullopt);

enum class ShortZeroSumMode { proof, direct };

struct ShortZeroSumParams {
  Int davenport = 0;  // D(G)
  Int s_dN = 0;       // s_{dN}(G)
};

/// For S with |S| >= s_{dN}(G): a zero-sum T | S with |T| in [1, d].
/// Requires D(G) <= 2d - 1 and s_{dN}(G) <= 3d - 1.
Certificate find_short_zero_sum_in(const Sequence& s, Int d, const ShortZeroSumParams& params,
                                   ShortZeroSumMode mode = ShortZeroSumMode::proof);

/// For a zero-sum A with |A| >= D(G) + 1: a zero-sum T | A with |T| in [1, d].
/// Requires D(G) <= 2d - 1 and s_{dN}(G) <= 3d - 1. The proof mode pads A
/// with zeros up to s_{dN}(G), extracts a block of length d or 2d and either
/// keeps it or takes its complement in A.
Certificate find_short_zero_sum(const Sequence& a, Int d, const ShortZeroSumParams& params,
                                ShortZeroSumMode mode = ShortZeroSumMode::proof);

}  // namespace zsum
