#pragma once

#include <span>
#include <vector>

#include "kgex/vec.hpp"

namespace kgex {

constexpr double kDefaultMmrGamma = 0.6;
constexpr size_t kDefaultSelectionCount = 5;

/// One reranking candidate: its selection score and semantic encoding.
struct MmrCandidate {
    double score = 0.0;
    Vec encoding;
};

/// Greedy maximal-marginal-relevance selection. At each step picks the
/// remaining candidate maximizing
///   gamma * score - (1 - gamma) * max over selected of cos(enc, enc_sel)
/// with a zero diversity penalty while nothing is selected, so the first
/// pick is the gamma-scaled top score. Ties resolve to the earliest
/// candidate position. Returns positions into `candidates` in selection
/// order, of length min(n, candidates.size()).
std::vector<size_t> mmr_select(std::span<const MmrCandidate> candidates, double gamma,
                               size_t n);

} // namespace kgex
