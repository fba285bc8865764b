#pragma once

#include "nabla_kit/core_numerics.hpp"
#include "nabla_kit/differences.hpp"
#include "nabla_kit/errors.hpp"
#include "nabla_kit/families.hpp"
#include "nabla_kit/function.hpp"
#include "nabla_kit/grid.hpp"
#include "nabla_kit/identities.hpp"
#include "nabla_kit/means.hpp"
#include "nabla_kit/positivity.hpp"
#include "nabla_kit/serialization.hpp"
