#pragma once

#include "ivg/finite_game.hpp"

#include <nlohmann/json_fwd.hpp>

#include <string>

namespace ivg {

/// Parses a finite intervention game from its JSON document form:
///   {
///     "num_users": N,
///     "user_actions": [[labels per user]],
///     "intervention_actions": [labels],
///     "signals": [labels],
///     "no_intervention_action": label,            // optional
///     "signal_dist": { "<a1>,...,<aN>": [probs over signals] },
///     "payoffs": { "<a0>,<a1>,...,<aN>,<y>": [N+1 reals, manager first] }
///   }
/// Every profile must appear in signal_dist and every (a0, profile, y) triple
/// in payoffs; missing or malformed entries raise ValidationError naming the
/// offending key.
FiniteInterventionGame game_from_json(const nlohmann::json& doc);

FiniteInterventionGame load_game(const std::string& path);

}  // namespace ivg
