#pragma once

// Everything in one include.

#include "egonet/version.hpp"
#include "egonet/error.hpp"
#include "egonet/types.hpp"
#include "egonet/network.hpp"
#include "egonet/paths.hpp"
#include "egonet/random.hpp"
#include "egonet/louvain.hpp"
#include "egonet/core_periphery.hpp"
#include "egonet/whole_metrics.hpp"
#include "egonet/ego_metrics.hpp"
#include "egonet/elda.hpp"
#include "egonet/csv.hpp"
#include "egonet/ingest.hpp"
#include "egonet/export.hpp"
#include "egonet/report.hpp"
#include "egonet/synth.hpp"
