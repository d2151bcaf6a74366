#pragma once

#include "searchathome/core/genome.hpp"
#include "searchathome/core/operators.hpp"
#include "searchathome/core/rng.hpp"
#include "searchathome/dist/coordinator.hpp"
#include "searchathome/dist/frame.hpp"
#include "searchathome/dist/message.hpp"
#include "searchathome/dist/tcp.hpp"
#include "searchathome/dist/transport.hpp"
#include "searchathome/dist/worker.hpp"
#include "searchathome/engine/evaluator.hpp"
#include "searchathome/engine/ga.hpp"
#include "searchathome/engine/online_ea.hpp"
#include "searchathome/engine/random_search.hpp"
#include "searchathome/engine/result.hpp"
#include "searchathome/harness/boxplot_svg.hpp"
#include "searchathome/harness/compare.hpp"
#include "searchathome/harness/config.hpp"
#include "searchathome/harness/experiment.hpp"
#include "searchathome/harness/results.hpp"
#include "searchathome/problems/factory.hpp"
#include "searchathome/problems/lb_sim.hpp"
#include "searchathome/problems/problem.hpp"
#include "searchathome/problems/string_search.hpp"
#include "searchathome/stats/descriptive.hpp"
#include "searchathome/stats/mann_whitney.hpp"
#include "searchathome/telemetry/telemetry.hpp"
