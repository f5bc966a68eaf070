#pragma once

#include <algorithm>
#include <map>
#include <vector>

#include "subshift/errors.hpp"
#include "subshift/words.hpp"

namespace subshift {

/// Cycle structure of a functional graph (out-degree one) on a letter set.
/// Every node eventually reaches exactly one cycle.
struct FunctionalCycles {
  std::vector<std::vector<Letter>> cycles;
  std::map<Letter, int> entry_steps;  // steps to first on-cycle node; 0 iff on a cycle
  std::map<Letter, int> cycle_of;     // index into cycles of the cycle reached
};

/// Nodes are processed in the given order, so cycle discovery order and the
/// starting node of each recorded cycle are deterministic.
template <typename NextFn>
FunctionalCycles functional_cycles(const std::vector<Letter>& nodes, NextFn next) {
  FunctionalCycles out;
  std::map<Letter, int> state;  // 0 unknown, 1 on current walk, 2 settled
  for (Letter start : nodes) {
    if (state.count(start)) continue;
    std::vector<Letter> path;
    Letter x = start;
    while (!state.count(x)) {
      state[x] = 1;
      path.push_back(x);
      x = next(x);
    }
    if (state[x] == 1) {
      // Closed a new cycle inside the current walk.
      auto it = std::find(path.begin(), path.end(), x);
      const int cycle_index = static_cast<int>(out.cycles.size());
      out.cycles.emplace_back(it, path.end());
      for (Letter c : out.cycles.back()) {
        out.entry_steps[c] = 0;
        out.cycle_of[c] = cycle_index;
        state[c] = 2;
      }
      path.erase(it, path.end());
    }
    // x is settled now; fill the remaining tail back to front.
    int steps = out.entry_steps.at(x);
    const int cycle_index = out.cycle_of.at(x);
    for (auto rit = path.rbegin(); rit != path.rend(); ++rit) {
      out.entry_steps[*rit] = ++steps;
      out.cycle_of[*rit] = cycle_index;
      state[*rit] = 2;
    }
  }
  return out;
}

}  // namespace subshift
