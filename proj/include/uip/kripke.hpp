#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "uip/derivation.hpp"
#include "uip/formula.hpp"
#include "uip/sequent.hpp"

namespace uip {

/// Finite multi-agent Kripke model. Worlds are 0 .. world_count-1.
struct KripkeModel {
  using World = std::size_t;

  std::size_t world_count = 0;
  World root = 0;
  std::map<AgentId, std::set<std::pair<World, World>>> relations;
  std::vector<std::set<std::string>> valuation;

  [[nodiscard]] std::vector<World> successors(AgentId agent, World w) const;
};

/// Standard forcing. Throws NotFirstOrder on quantifiers and
/// std::out_of_range for a world outside the model.
bool eval(const KripkeModel& m, KripkeModel::World w, const Formula& f);

/// All antecedent formulas true and all succedent formulas false at w.
bool refutes(const KripkeModel& m, KripkeModel::World w, const Sequent& s);

/// Every world has a successor for every agent in `relations`.
bool is_serial(const KripkeModel& m);
bool is_reflexive(const KripkeModel& m);

/// Bounded search for a model of the logic's frame class that refutes `s`
/// at its root. Tree-shaped apart from a shared serial sink world (KD only)
/// and reflexive loops (KT). `depth` bounds the tree height; the default is
/// the modal depth of the sequent. Exhaustive up to the bound, so a miss at
/// the modal depth means the sequent is valid in the frame class.
std::optional<KripkeModel> countermodel(Logic logic, const Sequent& s,
                                        std::optional<std::size_t> depth = std::nullopt);

std::size_t modal_depth(const Sequent& s);

}  // namespace uip
