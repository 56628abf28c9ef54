/// Umbrella header.
#pragma once

#include "rderange/asymptotics.hpp"
#include "rderange/bigint.hpp"
#include "rderange/cache.hpp"
#include "rderange/derangements.hpp"
#include "rderange/diophantine.hpp"
#include "rderange/modular.hpp"
#include "rderange/oracle.hpp"
#include "rderange/padic.hpp"
#include "rderange/polynomial.hpp"
