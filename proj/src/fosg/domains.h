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

#ifndef FOSG_DOMAINS_H_
#define FOSG_DOMAINS_H_

#include <cstdint>
#include <string>
#include <vector>

#include "fosg/efg.h"
#include "fosg/game_spec.h"
#include "fosg/timeability.h"
#include "fosg/unroller.h"

namespace fosg {

// Kuhn poker with ante 1 and bet 1. Showdowns reveal both cards publicly.
GameSpec KuhnPoker();
// The same game with the deal made by an explicit chance actor (player 3).
GameSpec KuhnExplicitChance();
GameSpec MatchingPennies();

// The cyclic-dependency game: infosets I = {g, g'} of player 1 and
// J = {h, h'} of player 2 with g a parent of h and h' a parent of g'.
// Clearing `merge_i` / `merge_j` splits the corresponding infoset.
ClassicalEFG NontimeableFixture(bool merge_i = true, bool merge_j = true);

struct PaddingChain {
  ClassicalEFG efg;
  Timing timing;
};
// Player 1 walks h_0 .. h_{N-1} and may stop at h_n, reaching g_n, where
// player 2 moves without knowing n. Under the supplied timing h_n -> g_n
// spans N - n steps.
PaddingChain MakePaddingChain(int n);

// One classical EFG with two different augmentations of it.
struct AugmentationPair {
  ClassicalEFG efg;
  ExtensiveFormRep first;
  ExtensiveFormRep second;
};
AugmentationPair MakeAugmentationPair();

struct RandomFosgParams {
  int depth = 4;
  int branching = 2;
  int players = 2;
  int obs_alphabet = 2;
  int width = 3;
  bool serial = true;
  bool zero_sum = true;
  bool chance_actor = false;
};
GameSpec RandomFosg(uint64_t seed, const RandomFosgParams& params = {});

struct RandomEfgParams {
  int max_depth = 4;
  int min_actions = 2;
  int max_actions = 3;
  int players = 2;
  double terminal_prob = 0.25;
  double chance_prob = 0.2;
};
// Infosets group same-depth nodes with identical own histories, so the
// result is 1-timeable with perfect recall.
ClassicalEFG RandomOneTimeableEfg(uint64_t seed,
                                  const RandomEfgParams& params = {});
// Infosets group nodes sharing a random label, which makes the labels an
// exact timing; recall is not enforced.
ClassicalEFG RandomTimeableEfg(uint64_t seed,
                               const RandomEfgParams& params = {});

std::vector<std::string> BuiltinGameNames();
// Throws ErrorCode::kInvalidArgument for unknown names. Accepts the game
// names above plus "random:<seed>".
GameSpec BuiltinGame(const std::string& name);
// "nontimeable", "padding_chain:<N>", "two_augmentations", "random_efg:<seed>",
// "random_timeable:<seed>".
ClassicalEFG BuiltinEfg(const std::string& name);
bool IsBuiltinEfgName(const std::string& name);

}  // namespace fosg

#endif  // FOSG_DOMAINS_H_
