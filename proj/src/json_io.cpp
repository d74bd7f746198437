#include "ivg/json_io.hpp"

#include <nlohmann/json.hpp>

#include <fstream>
#include <sstream>

namespace ivg {

namespace {

using nlohmann::json;

const json& require(const json& doc, const std::string& key) {
  auto it = doc.find(key);
  if (it == doc.end()) {
    throw ValidationError("game JSON: missing key '" + key + "'");
  }
  return *it;
}

std::vector<std::string> string_list(const json& node, const std::string& key) {
  if (!node.is_array()) {
    throw ValidationError("game JSON: '" + key + "' must be an array");
  }
  std::vector<std::string> out;
  for (const auto& item : node) {
    if (!item.is_string()) {
      throw ValidationError("game JSON: '" + key + "' must contain strings");
    }
    out.push_back(item.get<std::string>());
  }
  return out;
}

Vec real_list(const json& node, const std::string& key) {
  if (!node.is_array()) {
    throw ValidationError("game JSON: '" + key + "' must be an array of reals");
  }
  Vec out(node.size());
  Eigen::Index k = 0;
  for (const auto& item : node) {
    if (!item.is_number()) {
      throw ValidationError("game JSON: '" + key + "' must contain numbers");
    }
    out[k++] = item.get<double>();
  }
  return out;
}

std::string profile_key(const std::vector<std::vector<std::string>>& actions,
                        const std::vector<int>& idx) {
  std::string key;
  for (std::size_t i = 0; i < idx.size(); ++i) {
    if (i) key += ',';
    key += actions[i][idx[i]];
  }
  return key;
}

}  // namespace

FiniteInterventionGame game_from_json(const json& doc) {
  if (!doc.is_object()) {
    throw ValidationError("game JSON: top-level value must be an object");
  }
  const int num_users = [&] {
    const json& n = require(doc, "num_users");
    if (!n.is_number_integer() || n.get<int>() < 1) {
      throw ValidationError("game JSON: 'num_users' must be a positive integer");
    }
    return n.get<int>();
  }();

  const json& ua = require(doc, "user_actions");
  if (!ua.is_array() || static_cast<int>(ua.size()) != num_users) {
    throw ValidationError(
        "game JSON: 'user_actions' must list one action set per user");
  }
  std::vector<std::vector<std::string>> user_actions;
  for (int i = 0; i < num_users; ++i) {
    user_actions.push_back(string_list(ua[i], "user_actions"));
  }
  std::vector<std::string> intervention_actions =
      string_list(require(doc, "intervention_actions"), "intervention_actions");
  std::vector<std::string> signals =
      string_list(require(doc, "signals"), "signals");

  std::optional<std::string> no_intervention;
  if (doc.contains("no_intervention_action")) {
    const json& n = doc["no_intervention_action"];
    if (!n.is_string()) {
      throw ValidationError(
          "game JSON: 'no_intervention_action' must be a label string");
    }
    no_intervention = n.get<std::string>();
  }

  // Enumerate profiles in the same row-major order the game uses.
  std::vector<int> counts;
  int num_profiles = 1;
  for (const auto& acts : user_actions) {
    counts.push_back(static_cast<int>(acts.size()));
    num_profiles *= counts.back();
  }
  const int num_signals = static_cast<int>(signals.size());
  const int num_a0 = static_cast<int>(intervention_actions.size());
  if (num_signals < 1 || num_a0 < 1) {
    throw ValidationError("game JSON: empty 'signals' or 'intervention_actions'");
  }

  const json& dist = require(doc, "signal_dist");
  Mat signal_dist(num_profiles, num_signals);
  {
    std::vector<int> idx(num_users, 0);
    int row = 0;
    do {
      const std::string key = profile_key(user_actions, idx);
      auto it = dist.find(key);
      if (it == dist.end()) {
        throw ValidationError("game JSON: signal_dist missing profile '" + key +
                              "'");
      }
      Vec probs = real_list(*it, "signal_dist[" + key + "]");
      if (probs.size() != num_signals) {
        throw ValidationError("game JSON: signal_dist['" + key +
                              "'] has wrong length");
      }
      signal_dist.row(row++) = probs.transpose();
    } while (next_multi_index(idx, counts));
  }

  const json& pay = require(doc, "payoffs");
  std::vector<Vec> payoffs(
      num_users + 1,
      Vec::Zero(static_cast<Eigen::Index>(num_a0) * num_profiles * num_signals));
  {
    std::vector<int> idx(num_users, 0);
    int row = 0;
    do {
      const std::string base = profile_key(user_actions, idx);
      for (int a0 = 0; a0 < num_a0; ++a0) {
        for (int y = 0; y < num_signals; ++y) {
          const std::string key =
              intervention_actions[a0] + "," + base + "," + signals[y];
          auto it = pay.find(key);
          if (it == pay.end()) {
            throw ValidationError("game JSON: payoffs missing entry '" + key +
                                  "'");
          }
          Vec values = real_list(*it, "payoffs[" + key + "]");
          if (values.size() != num_users + 1) {
            throw ValidationError("game JSON: payoffs['" + key +
                                  "'] must list N+1 reals (manager first)");
          }
          const Eigen::Index flat =
              (static_cast<Eigen::Index>(a0) * num_profiles + row) *
                  num_signals +
              y;
          for (int who = 0; who <= num_users; ++who) {
            payoffs[who][flat] = values[who];
          }
        }
      }
      ++row;
    } while (next_multi_index(idx, counts));
  }

  return FiniteInterventionGame(std::move(user_actions),
                                std::move(intervention_actions),
                                std::move(signals), std::move(signal_dist),
                                std::move(payoffs), std::move(no_intervention));
}

FiniteInterventionGame load_game(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open game file: " + path);
  json doc;
  try {
    in >> doc;
  } catch (const json::parse_error& e) {
    throw ValidationError("game JSON: parse error in " + path + ": " + e.what());
  }
  return game_from_json(doc);
}

}  // namespace ivg
