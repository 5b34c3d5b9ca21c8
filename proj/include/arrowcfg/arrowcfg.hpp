#pragma once

#include "arrowcfg/error.hpp"
#include "arrowcfg/freecat.hpp"
#include "arrowcfg/species.hpp"
#include "arrowcfg/spliced.hpp"
#include "arrowcfg/grammar.hpp"
#include "arrowcfg/parser.hpp"
#include "arrowcfg/automaton.hpp"
#include "arrowcfg/product.hpp"
#include "arrowcfg/contour.hpp"
#include "arrowcfg/oracle.hpp"
#include "arrowcfg/equivalence.hpp"
#include "arrowcfg/json_io.hpp"
