#pragma once

#include "kuwall/character.hpp"
#include "kuwall/errors.hpp"
#include "kuwall/euler.hpp"
#include "kuwall/lattice.hpp"
#include "kuwall/mukai.hpp"
#include "kuwall/rational.hpp"
#include "kuwall/stability.hpp"
#include "kuwall/svg.hpp"
#include "kuwall/vanishing.hpp"
#include "kuwall/walls.hpp"
