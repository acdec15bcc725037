#pragma once

// Random-but-reproducible scenario generation for the validate command and
// the oracle-comparison test suites.

#include "hetnet/rng.hpp"
#include "hetnet/types.hpp"

namespace hetnet {

enum class InstanceKind { sparse, dense };

/// A valid random K-tier network whose UE density lands firmly in the
/// requested scenario (mu between 0.25x and 0.8x of the sparse/dense boundary
/// for sparse, 1.5x to 6x for dense). Deterministic given the RNG state.
NetworkConfig random_instance(PhiloxRng& rng, int tiers, InstanceKind kind);

}  // namespace hetnet
