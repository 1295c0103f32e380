// graphends.hpp — umbrella header.
#pragma once

#include "graphends/family.hpp"
#include "graphends/freegroup.hpp"
#include "graphends/graph.hpp"
#include "graphends/homology.hpp"
#include "graphends/ids.hpp"
#include "graphends/invlimit.hpp"
#include "graphends/serialize.hpp"
#include "graphends/truncation.hpp"
