#pragma once

#include "dirca/binom.hpp"
#include "dirca/cone.hpp"
#include "dirca/cylinder.hpp"
#include "dirca/entropy.hpp"
#include "dirca/ergodic.hpp"
#include "dirca/errors.hpp"
#include "dirca/mixing.hpp"
#include "dirca/packed_row.hpp"
#include "dirca/random.hpp"
#include "dirca/rational.hpp"
#include "dirca/rule.hpp"
#include "dirca/window.hpp"
