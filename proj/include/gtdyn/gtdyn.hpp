#pragma once

#include "gtdyn/analyses.hpp"
#include "gtdyn/coloc.hpp"
#include "gtdyn/comanence.hpp"
#include "gtdyn/development.hpp"
#include "gtdyn/errors.hpp"
#include "gtdyn/flow_analysis.hpp"
#include "gtdyn/generate.hpp"
#include "gtdyn/hierarchy.hpp"
#include "gtdyn/intermittency.hpp"
#include "gtdyn/intrinsic.hpp"
#include "gtdyn/io.hpp"
#include "gtdyn/metric.hpp"
#include "gtdyn/metric_sensitivity.hpp"
#include "gtdyn/oracle.hpp"
#include "gtdyn/parallel.hpp"
#include "gtdyn/periodic_set.hpp"
#include "gtdyn/report.hpp"
#include "gtdyn/set_system.hpp"
#include "gtdyn/structured.hpp"
#include "gtdyn/subset.hpp"
#include "gtdyn/suites.hpp"
