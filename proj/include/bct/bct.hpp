#pragma once

#include "bct/bicayley.hpp"
#include "bct/census.hpp"
#include "bct/errors.hpp"
#include "bct/families.hpp"
#include "bct/graph.hpp"
#include "bct/graph_auto.hpp"
#include "bct/group_core.hpp"
#include "bct/io.hpp"
#include "bct/permgroup.hpp"
#include "bct/permutation.hpp"
#include "bct/subgroup_search.hpp"
#include "bct/symmetry_classify.hpp"
