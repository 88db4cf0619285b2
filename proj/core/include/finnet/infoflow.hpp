#pragma once

#include <cstdint>
#include <span>

#include "finnet/discretize.hpp"
#include "finnet/interaction_matrix.hpp"

namespace finnet {

/// Shannon entropy in bits of the histogram's cell distribution.
double entropy(const JointHistogram& hist);

/// Plug-in mutual information in bits.
double mutual_information(const SymbolSequence& x, const SymbolSequence& y);

/// Plug-in transfer entropy source → target in bits with one own-lag and
/// one source-lag:
///   Σ p(i', i, j) log2[p(i' | i, j) / p(i' | i)],  i' = target[t + dt],
///   i = target[t], j = source[t].
double transfer_entropy(const SymbolSequence& source, const SymbolSequence& target,
                        std::size_t dt = 1);

/// H(target[t + dt] | target[t]) in bits.
double conditional_self_entropy(const SymbolSequence& target, std::size_t dt = 1);

/// Mean transfer entropy over `shuffles` random permutations of the source.
/// Each permutation is a Fisher–Yates shuffle driven by a generator seeded
/// from `seed`, so the result is reproducible.
double surrogate_floor(const SymbolSequence& source, const SymbolSequence& target,
                       std::size_t dt, std::size_t shuffles, std::uint64_t seed);

struct TeMatrixOptions {
  std::size_t dt = 1;
  /// Shuffled-source surrogates per ordered pair; 0 disables the floor.
  std::size_t surrogates = 0;
  std::uint64_t seed = 0;
  /// Worker threads for the N(N−1) ordered pairs. Results do not depend on it.
  unsigned threads = 1;
};

/// values(i, j) = TE(j → i); the diagonal holds H(i[t+dt] | i[t]).
/// When surrogates > 0, params["surrogate_floor"] holds the N×N floor.
InteractionMatrix te_matrix(std::span<const SymbolSequence> series,
                            std::span<const std::string> asset_ids,
                            const TeMatrixOptions& options = {});

/// values(i, j) = I(i; j); the diagonal holds H(i).
InteractionMatrix mi_matrix(std::span<const SymbolSequence> series,
                            std::span<const std::string> asset_ids,
                            unsigned threads = 1);

}  // namespace finnet
