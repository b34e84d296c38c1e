#pragma once

#include "xmap/arithmetic.hpp"
#include "xmap/chain.hpp"
#include "xmap/forward_search.hpp"
#include "xmap/lemmas.hpp"
#include "xmap/orbit.hpp"
#include "xmap/preimage.hpp"
#include "xmap/prime_oracle.hpp"
#include "xmap/scaling.hpp"
#include "xmap/status_cache.hpp"
#include "xmap/survivor_list.hpp"
