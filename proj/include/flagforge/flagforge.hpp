#pragma once

#include "flagforge/bott.hpp"
#include "flagforge/extalg.hpp"
#include "flagforge/families.hpp"
#include "flagforge/flags.hpp"
#include "flagforge/json_io.hpp"
#include "flagforge/linsolve.hpp"
#include "flagforge/polyring.hpp"
#include "flagforge/projective.hpp"
#include "flagforge/rational.hpp"
#include "flagforge/zeros.hpp"
