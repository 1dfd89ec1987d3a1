// Copyright 2026 The fosgkit Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Independent reference computations for tests. Nothing here reuses the
// library's tree building, reach or value code.

#ifndef FOSG_TESTS_SUPPORT_ORACLES_H_
#define FOSG_TESTS_SUPPORT_ORACLES_H_

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "fosg/cfr.h"
#include "fosg/efg.h"
#include "fosg/game_spec.h"
#include "fosg/unroller.h"

namespace oracle {

// An infostate seen by the oracle: tokens "A:<action>" and "O:<priv>|<pub>".
using Tokens = std::vector<std::string>;

struct KeyRules {
  // Replace a leading subgame sampling observation O:<key>|<range> by the
  // tokens of the embedded infostate key.
  bool expand_sampling = false;
};

// Canonical form used to compare infostates across transformed games: tick
// observations vanish and packed (priv, pub) pairs under an empty public
// observation are unpacked.
std::string Reduce(const Tokens& tokens, const KeyRules& rules = {});

// Tokens of a library infostate key.
Tokens TokensOfKey(const std::string& key);

// Deterministic pseudo-random distribution over `actions` for an infostate.
using PolicyFn = std::function<std::vector<double>(
    int player, const std::string& reduced_key, int actions)>;
PolicyFn HashPolicy(uint64_t seed);

// Expected total reward per non-chance player computed directly on the
// (possibly simultaneous-move) spec by recursion over joint actions.
std::vector<double> DirectExpectedUtility(const fosg::GameSpec& spec,
                                          const PolicyFn& policy,
                                          const KeyRules& rules = {});

// Tabular policy for a representation built from `policy` over reduced keys.
fosg::TabularPolicy TabulateOverKeys(const fosg::ExtensiveFormRep& rep,
                                     const PolicyFn& policy,
                                     const KeyRules& rules = {});

// Expected utility of a classical EFG under a (player, infoset) policy.
std::vector<double> EfgUtility(
    const fosg::ClassicalEFG& efg,
    const std::function<std::vector<double>(int, int, int)>& policy);

// Best-response value of `player` by enumerating every pure policy.
double EnumeratedBestResponse(const fosg::ExtensiveFormRep& rep,
                              const fosg::TabularPolicy& policy, int player);

// Histories of rep, brute force: all nodes whose public key extends `key`.
std::vector<int> HistoriesBelowPublicKey(const fosg::ExtensiveFormRep& rep,
                                         const std::string& key);

// Expected utility on the rep by plain recursion over the tree.
std::vector<double> TreeUtility(const fosg::ExtensiveFormRep& rep,
                                const fosg::TabularPolicy& policy);

// Pearson chi-square statistic of observed counts against probabilities.
double ChiSquare(const std::vector<int>& counts, const std::vector<double>& probs);

}  // namespace oracle

#endif  // FOSG_TESTS_SUPPORT_ORACLES_H_
