#pragma once

// Reference example data.

#include "sylflow/graph.hpp"
#include "sylflow/partition.hpp"

namespace sylflow::fixtures {

/// 5x5 problem with a unique solution.
SylvesterProblem example1();

/// The two 5x5 data sets compared under column and row partitions (index 1 or 2).
SylvesterProblem example2(int data_set);

/// The 6x6 block matrix built from the 2x2 blocks D_ij.
Matrix example4_A();

/// A X + X A^T = -I_6.
SylvesterProblem example4();

/// The positive definite limit, rounded to four decimals.
Matrix example4_P_star();

/// Row blocks {1,2}, {3,4}, {5,6} held by the three path-graph nodes.
std::vector<std::vector<int>> example4_row_blocks();

/// Path graph 1-2-3.
Graph example4_graph();

}  // namespace sylflow::fixtures
