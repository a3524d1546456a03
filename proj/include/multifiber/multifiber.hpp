#pragma once

#include "multifiber/checked.hpp"
#include "multifiber/degen.hpp"
#include "multifiber/dims.hpp"
#include "multifiber/interp.hpp"
#include "multifiber/lattice.hpp"
#include "multifiber/notation.hpp"
#include "multifiber/weyl.hpp"
