#ifndef SMX_SMX_HPP
#define SMX_SMX_HPP

#include "smx/bench.hpp"
#include "smx/error.hpp"
#include "smx/graph.hpp"
#include "smx/groupwise.hpp"
#include "smx/ids.hpp"
#include "smx/ingest.hpp"
#include "smx/measure_value.hpp"
#include "smx/pairwise.hpp"
#include "smx/parallel.hpp"
#include "smx/preprocess.hpp"
#include "smx/relatedness.hpp"
#include "smx/selector.hpp"
#include "smx/specificity.hpp"
#include "smx/taxonomy.hpp"
#include "smx/unify.hpp"

#endif  // SMX_SMX_HPP
