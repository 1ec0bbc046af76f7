#pragma once

#include <cstdint>
#include <vector>

#include "lexiplan/io.hpp"

namespace lexiplan {

// Seeded instance generators. All randomness comes from raw mt19937_64
// output, so a given seed produces identical documents on every platform.
// Probabilities are multiples of 1/64 (64 grains spread by largest
// remainder), which makes exact CDF-boundary quantile cases reachable.

struct RandomInstanceParams {
    int num_states = 4;
    int num_actions = 2;
    int horizon = 2;
    int num_end_states = 2;   // must stay below num_states
    double density = 1.0;     // fraction of states in each row's support, (0, 1]
    int reward_levels = 0;    // 0 = no rewards block
    std::vector<double> taus; // empty = no objective block
};

InstanceDocument generate_random(const RandomInstanceParams& params, std::uint64_t seed);

// Grid walk with slippery moves, hazardous cells that may crash the agent,
// and an explicit "land" action that finishes the episode at a quality tier
// determined by the distance to the goal corner. Outcome preference, lowest
// first: crash, landed far, landed near (within 2 steps), landed on the goal.
// Never landing times out. Degenerate one-dimensional grids use 3 actions
// (forward, back, land) instead of 5, which keeps exhaustive policy
// enumeration affordable on tiny grids.
struct HazardGridParams {
    int width = 3;
    int height = 3;
    int horizon = 8;
    double slip = 0.125;          // quantized to a multiple of 1/32
    double hazard_density = 0.25; // fraction of cells that are hazardous
    double crash_prob = 0.25;     // quantized to a multiple of 1/64
    std::vector<double> taus;
};

InstanceDocument generate_hazard_grid(const HazardGridParams& params, std::uint64_t seed);

}  // namespace lexiplan
