#pragma once

#include "squarerun/adversary.hpp"
#include "squarerun/approx_lz.hpp"
#include "squarerun/corpus.hpp"
#include "squarerun/detector.hpp"
#include "squarerun/diffcover.hpp"
#include "squarerun/oracle.hpp"
#include "squarerun/primitives.hpp"
#include "squarerun/runs.hpp"
#include "squarerun/schedule.hpp"
#include "squarerun/sparse_suffix_tree.hpp"
