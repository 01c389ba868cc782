#pragma once

#include "uct_lambda/env/connect4.hpp"
#include "uct_lambda/env/constrictor.hpp"
#include "uct_lambda/env/navigation.hpp"
#include "uct_lambda/env/numbers_race.hpp"
#include "uct_lambda/env/push_your_luck.hpp"
#include "uct_lambda/env/scaled.hpp"
#include "uct_lambda/env/tictactoe.hpp"
#include "uct_lambda/episode.hpp"
#include "uct_lambda/eval.hpp"
#include "uct_lambda/experiment.hpp"
#include "uct_lambda/game.hpp"
#include "uct_lambda/lambda.hpp"
#include "uct_lambda/mcts.hpp"
#include "uct_lambda/rng.hpp"
#include "uct_lambda/stats.hpp"
#include "uct_lambda/student_t.hpp"
