#pragma once

#include "dynmis/branch_and_reduce.hpp"
#include "dynmis/dynamic_graph.hpp"
#include "dynmis/dynamic_one.hpp"
#include "dynmis/edit_sequence.hpp"
#include "dynmis/greedy.hpp"
#include "dynmis/io.hpp"
#include "dynmis/neighborhood.hpp"
#include "dynmis/oracle.hpp"
#include "dynmis/reductions.hpp"
#include "dynmis/solution.hpp"
#include "dynmis/static_graph.hpp"
#include "dynmis/types.hpp"
