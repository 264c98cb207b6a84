#pragma once

#include "ftks/budget.hpp"
#include "ftks/errors.hpp"
#include "ftks/fks.hpp"
#include "ftks/generators.hpp"
#include "ftks/instance.hpp"
#include "ftks/io.hpp"
#include "ftks/lp.hpp"
#include "ftks/metric.hpp"
#include "ftks/oracle.hpp"
#include "ftks/partition.hpp"
#include "ftks/round_or_cut.hpp"
#include "ftks/simplex.hpp"
#include "ftks/ufkso.hpp"
