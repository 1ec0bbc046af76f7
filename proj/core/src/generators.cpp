#include "lexiplan/generators.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

namespace lexiplan {

namespace {

constexpr int kGrains = 64;
constexpr int kGridStateBudget = 4096;

double rand_unit(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

std::uint64_t rand_index(std::mt19937_64& rng, std::uint64_t n) {
    return rng() % n;
}

// Normalized random weights quantized to multiples of 1/64 by largest
// remainder, so the result sums to exactly 1.
std::vector<double> quantized_distribution(std::mt19937_64& rng, int support_size) {
    std::vector<double> weights(support_size);
    double total = 0;
    for (double& w : weights) {
        w = rand_unit(rng) + 1.0 / kGrains;  // keep weights bounded away from zero
        total += w;
    }

    std::vector<int> grains(support_size);
    std::vector<double> remainder(support_size);
    int assigned = 0;
    for (int i = 0; i < support_size; ++i) {
        const double target = weights[i] / total * kGrains;
        grains[i] = static_cast<int>(target);
        remainder[i] = target - grains[i];
        assigned += grains[i];
    }
    std::vector<int> order(support_size);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](int a, int b) { return remainder[a] > remainder[b]; });
    for (int i = 0; assigned < kGrains; ++assigned, ++i) {
        ++grains[order[i % support_size]];
    }

    std::vector<double> out(support_size);
    for (int i = 0; i < support_size; ++i) {
        out[i] = static_cast<double>(grains[i]) / kGrains;
    }
    return out;
}

// First k entries of a seeded shuffle of 0..n-1.
std::vector<int> sample_without_replacement(std::mt19937_64& rng, int n, int k) {
    std::vector<int> pool(n);
    std::iota(pool.begin(), pool.end(), 0);
    for (int i = 0; i < k; ++i) {
        const int j = i + static_cast<int>(rand_index(rng, n - i));
        std::swap(pool[i], pool[j]);
    }
    pool.resize(k);
    return pool;
}

}  // namespace

InstanceDocument generate_random(const RandomInstanceParams& p, std::uint64_t seed) {
    if (p.num_states < 2 || p.num_actions < 1 || p.horizon < 1 || p.num_end_states < 0 ||
        p.num_end_states >= p.num_states || !(p.density > 0.0 && p.density <= 1.0)) {
        throw ArgumentError("InfeasibleParams: generate_random");
    }
    std::mt19937_64 rng(seed);

    MdpInstance m;
    m.num_states = p.num_states;
    m.num_actions = p.num_actions;
    m.horizon = p.horizon;
    m.name = "random-s" + std::to_string(p.num_states) + "a" + std::to_string(p.num_actions) +
             "t" + std::to_string(p.horizon) + "e" + std::to_string(p.num_end_states) + "-seed" +
             std::to_string(seed);
    m.transitions.assign(
        static_cast<std::size_t>(p.num_states) * p.num_actions * p.num_states, 0.0);

    const int first_end = p.num_states - p.num_end_states;
    for (int e = first_end; e < p.num_states; ++e) {
        m.end_states.push_back(e);  // index order doubles as preference order
    }

    const int support_size =
        std::clamp(static_cast<int>(std::ceil(p.density * p.num_states)), 1, p.num_states);
    for (int s = 0; s < first_end; ++s) {
        for (int a = 0; a < p.num_actions; ++a) {
            const std::vector<int> support = sample_without_replacement(rng, p.num_states, support_size);
            const std::vector<double> probs = quantized_distribution(rng, support_size);
            for (int i = 0; i < support_size; ++i) {
                m.transition(s, a, support[i]) = probs[i];
            }
        }
    }
    for (int e = first_end; e < p.num_states; ++e) {
        for (int a = 0; a < p.num_actions; ++a) {
            m.transition(e, a, e) = 1.0;
        }
    }

    m.initial_distribution.assign(p.num_states, 0.0);
    if (first_end == 1) {
        m.initial_distribution[0] = 1.0;
    } else {
        const std::vector<double> probs = quantized_distribution(rng, first_end);
        for (int s = 0; s < first_end; ++s) {
            m.initial_distribution[s] = probs[s];
        }
    }

    InstanceDocument doc;
    doc.instance = std::move(m);

    if (p.reward_levels > 0) {
        const MdpInstance& inst = doc.instance;
        RewardSpec rewards;
        for (int level = 0; level < p.reward_levels; ++level) {
            std::vector<double> dense(inst.transitions.size(), 0.0);
            for (int s = 0; s < first_end; ++s) {
                for (int a = 0; a < inst.num_actions; ++a) {
                    for (int to = 0; to < inst.num_states; ++to) {
                        if (inst.transition(s, a, to) > 0 && (rng() & 1)) {
                            dense[inst.transition_index(s, a, to)] = 1.0;
                        }
                    }
                }
            }
            rewards.levels.push_back(std::move(dense));
        }
        doc.rewards = std::move(rewards);
    }

    if (!p.taus.empty()) {
        QuantileObjective objective{p.taus};
        validate_objective(objective);
        doc.objective = std::move(objective);
    }
    return doc;
}

InstanceDocument generate_hazard_grid(const HazardGridParams& p, std::uint64_t seed) {
    if (p.width < 1 || p.height < 1 || p.horizon < 1 ||
        p.width * p.height + 4 > kGridStateBudget || !(p.slip >= 0.0 && p.slip < 1.0) ||
        !(p.hazard_density >= 0.0 && p.hazard_density <= 1.0) ||
        !(p.crash_prob >= 0.0 && p.crash_prob <= 1.0)) {
        throw ArgumentError("InfeasibleParams: generate_hazard_grid");
    }
    const double slip = std::min(std::round(p.slip * 32.0), 31.0) / 32.0;
    const double crash_prob = std::round(p.crash_prob * 64.0) / 64.0;

    const int cells = p.width * p.height;
    const int crash = cells;
    const int goal_far = cells + 1;
    const int goal_near = cells + 2;
    const int goal_exact = cells + 3;
    const int goal_x = p.width - 1;
    const int goal_y = p.height - 1;
    const bool one_dim = (p.width == 1 || p.height == 1);
    const int num_actions = one_dim ? 3 : 5;
    const int land_action = num_actions - 1;

    std::mt19937_64 rng(seed);
    std::vector<char> hazardous(cells, 0);
    for (int c = 0; c < cells; ++c) {
        const bool protected_cell = (c == 0) || (c == goal_y * p.width + goal_x);
        if (!protected_cell && rand_unit(rng) < p.hazard_density) {
            hazardous[c] = 1;
        }
    }

    MdpInstance m;
    m.num_states = cells + 4;
    m.num_actions = num_actions;
    m.horizon = p.horizon;
    m.name = "grid-w" + std::to_string(p.width) + "h" + std::to_string(p.height) + "t" +
             std::to_string(p.horizon) + "-seed" + std::to_string(seed);
    m.end_states = {crash, goal_far, goal_near, goal_exact};
    m.transitions.assign(
        static_cast<std::size_t>(m.num_states) * m.num_actions * m.num_states, 0.0);
    m.initial_distribution.assign(m.num_states, 0.0);
    m.initial_distribution[0] = 1.0;  // start at the top-left cell

    // dx/dy per direction: right, down, left, up; 1-D grids use forward/back
    // along their single axis.
    const int dir_dx[4] = {1, 0, -1, 0};
    const int dir_dy[4] = {0, 1, 0, -1};
    auto step = [&](int x, int y, int dir) {
        const int nx = x + dir_dx[dir];
        const int ny = y + dir_dy[dir];
        if (nx < 0 || nx >= p.width || ny < 0 || ny >= p.height) {
            return y * p.width + x;  // bounce off the wall
        }
        return ny * p.width + nx;
    };

    for (int y = 0; y < p.height; ++y) {
        for (int x = 0; x < p.width; ++x) {
            const int c = y * p.width + x;
            for (int a = 0; a < num_actions; ++a) {
                if (a == land_action) {
                    const int distance = std::abs(x - goal_x) + std::abs(y - goal_y);
                    const int tier =
                        distance == 0 ? goal_exact : (distance <= 2 ? goal_near : goal_far);
                    m.transition(c, a, tier) = 1.0;
                    continue;
                }
                int dir;
                if (one_dim) {
                    const bool vertical = (p.width == 1);
                    dir = vertical ? (a == 0 ? 1 : 3) : (a == 0 ? 0 : 2);
                } else {
                    dir = a;
                }
                // intended direction plus symmetric perpendicular slips
                double arrival[3] = {1.0 - slip, slip / 2.0, slip / 2.0};
                int target[3] = {step(x, y, dir), step(x, y, (dir + 1) % 4),
                                 step(x, y, (dir + 3) % 4)};
                for (int i = 0; i < 3; ++i) {
                    if (arrival[i] == 0.0) continue;
                    if (hazardous[target[i]]) {
                        m.transition(c, a, crash) += arrival[i] * crash_prob;
                        m.transition(c, a, target[i]) += arrival[i] * (1.0 - crash_prob);
                    } else {
                        m.transition(c, a, target[i]) += arrival[i];
                    }
                }
            }
        }
    }
    for (int e : m.end_states) {
        for (int a = 0; a < num_actions; ++a) {
            m.transition(e, a, e) = 1.0;
        }
    }

    InstanceDocument doc;
    doc.instance = std::move(m);
    if (!p.taus.empty()) {
        QuantileObjective objective{p.taus};
        validate_objective(objective);
        doc.objective = std::move(objective);
    }
    return doc;
}

}  // namespace lexiplan
