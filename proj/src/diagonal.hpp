#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "filters.hpp"
#include "report.hpp"
#include "sequences.hpp"

namespace seqhyper {

// A countable family of sequences converging to the filter point of xi(F),
// finite (size set) or given lazily by index.
struct SeqFamily {
  std::function<ConvSeq(std::int64_t)> at;
  std::optional<std::int64_t> size;

  static SeqFamily of(std::vector<ConvSeq> seqs);
};

// The legs P_n (or generators A_g) of F as sequences in xi(F).
SeqFamily leg_family(const SpacePtr& xi, std::optional<std::int64_t> count = std::nullopt);

struct Alpha2Result {
  bool pass = false;
  std::optional<ConvSeq> candidate;
  int failed_stage = -1;
  std::string failed_base;
  std::string message;
  // Terms of the candidate among its first `depth` stages lying in each of
  // the first legs.
  std::vector<std::int64_t> hits;
  Json to_json() const;
};

// Greedy diagonalization. Stage i serves sequence i mod m for a finite
// family of size m, otherwise the first coordinate of the Cantor unpairing
// of i, and appends the least unused term of that sequence lying in base(i).
// The candidate must then certify as a convergent sequence; for filters
// without a countable base it is also scanned against the filter set that
// drops the least candidate term from every generator.
Alpha2Result alpha2_diagonalize(const SpacePtr& xi, const SeqFamily& seqs, int depth);


}  // namespace seqhyper
