#pragma once

#include "probnet/analysis.hpp"
#include "probnet/edge_model.hpp"
#include "probnet/graph.hpp"
#include "probnet/graph_metrics.hpp"
#include "probnet/parallel.hpp"
#include "probnet/prob_clustering.hpp"
#include "probnet/probable_paths.hpp"
#include "probnet/random.hpp"
#include "probnet/sampling.hpp"
#include "probnet/temporal_log.hpp"
