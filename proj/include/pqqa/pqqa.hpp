#pragma once

#include "pqqa/annealer.hpp"
#include "pqqa/baseline.hpp"
#include "pqqa/error.hpp"
#include "pqqa/generators.hpp"
#include "pqqa/graph.hpp"
#include "pqqa/problems.hpp"
#include "pqqa/relax.hpp"
