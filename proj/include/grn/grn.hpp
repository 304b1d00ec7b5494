#ifndef GRN_GRN_HPP
#define GRN_GRN_HPP

#include "grn/checker.hpp"
#include "grn/diagnostic.hpp"
#include "grn/dsl/lower.hpp"
#include "grn/dsl/parser.hpp"
#include "grn/dsl/printer.hpp"
#include "grn/explicit.hpp"
#include "grn/formula.hpp"
#include "grn/mdd.hpp"
#include "grn/network.hpp"
#include "grn/petri.hpp"
#include "grn/symbolic.hpp"

#endif
