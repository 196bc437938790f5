#pragma once

#include "ccwl/coherent.hpp"
#include "ccwl/exponentiation.hpp"
#include "ccwl/extension.hpp"
#include "ccwl/factorization.hpp"
#include "ccwl/graph.hpp"
#include "ccwl/graph6.hpp"
#include "ccwl/isomorphism.hpp"
#include "ccwl/json_io.hpp"
#include "ccwl/kwl.hpp"
#include "ccwl/named_graphs.hpp"
#include "ccwl/product.hpp"
#include "ccwl/refine.hpp"
#include "ccwl/relation.hpp"
#include "ccwl/suites.hpp"
#include "ccwl/tensor_checks.hpp"
#include "ccwl/util.hpp"
#include "ccwl/version.hpp"
