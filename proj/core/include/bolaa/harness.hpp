#pragma once

// Benchmark construction, batch execution, traces and reports.
#include "bolaa/benchmark_spec.hpp"
#include "bolaa/report.hpp"
#include "bolaa/runner.hpp"
#include "bolaa/sampling.hpp"
#include "bolaa/trace.hpp"
