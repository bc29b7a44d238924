#pragma once

#include "bookex/canonical.hpp"
#include "bookex/checkers.hpp"
#include "bookex/constructions.hpp"
#include "bookex/formulas.hpp"
#include "bookex/graph.hpp"
#include "bookex/graph6.hpp"
#include "bookex/search.hpp"
