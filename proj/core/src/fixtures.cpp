#include "sylflow/fixtures.hpp"

#include <string>

#include "sylflow/errors.hpp"

namespace sylflow::fixtures {

namespace {

Matrix rows(std::initializer_list<std::initializer_list<double>> r) {
  Matrix m(static_cast<Index>(r.size()), static_cast<Index>(r.begin()->size()));
  Index i = 0;
  for (const auto& row : r) {
    Index j = 0;
    for (double v : row) m(i, j++) = v;
    ++i;
  }
  return m;
}

}  // namespace

SylvesterProblem example1() {
  Matrix a = rows({{7, 1, 1, 1, 5}, {7, 2, 8, 3, 0}, {1, 4, 8, 7, 7}, {7, 8, 4, 6, 7}, {5, 8, 6, 8, 5}});
  Matrix b = rows({{6, 6, 7, 4, 4}, {6, 0, 6, 3, 4}, {3, 2, 3, 6, 5}, {5, 0, 8, 6, 6}, {1, 1, 0, 1, 6}});
  Matrix c = rows({{2, 4, 6, 8, 7}, {5, 8, 2, 4, 2}, {5, 3, 4, 1, 7}, {1, 5, 6, 1, 2}, {1, 2, 7, 2, 7}});
  return {a, b, c};
}

SylvesterProblem example2(int data_set) {
  if (data_set == 1) {
    Matrix a = rows({{0, 0, 0, 5, 0}, {0, 2, 0, 0, 2}, {1, 3, 0, 0, 0}, {0, 0, 4, 0, 0}, {0, 0, 0, 0, 0}});
    Matrix b = rows({{7, 4, 4, 7, 10}, {3, 8, 6, 7, 3}, {10, 8, 7, 2, 6}, {0, 2, 8, 1, 2}, {4, 5, 3, 5, 8}});
    Matrix c = rows({{8, 1, 6, 8, 3}, {8, 5, 5, 3, 7}, {4, 8, 0, 5, 7}, {6, 9, 3, 2, 7}, {1, 1, 2, 6, 5}});
    return {a, b, c};
  }
  if (data_set == 2) {
    Matrix a = rows({{1, 5, 10, 1, 9}, {2, 10, 0, 4, 2}, {9, 1, 8, 3, 3}, {2, 4, 8, 8, 1}, {8, 1, 9, 4, 1}});
    Matrix b = rows({{0, 0, 8, 6, 0}, {2, 0, 0, 0, 0}, {0, 1, 0, 0, 0}, {0, 0, 0, 0, 0}, {0, 0, 0, 0, 3}});
    Matrix c = rows({{9, 6, 2, 0, 3}, {6, 4, 1, 9, 9}, {5, 5, 2, 9, 4}, {1, 4, 2, 5, 1}, {9, 1, 4, 5, 8}});
    return {a, b, c};
  }
  throw DimensionError("example2 has data sets 1 and 2, not " + std::to_string(data_set));
}

Matrix example4_A() {
  const Matrix i2 = Matrix::Identity(2, 2);
  const Matrix z2 = Matrix::Zero(2, 2);
  const Matrix blocks[3][3] = {
      {-5.0 * i2, rows({{4, 1}, {0, 4}}), z2},
      {i2, rows({{-6, 1}, {1, -3}}), rows({{2, 0}, {2, 4}})},
      {z2, rows({{2, 0}, {1, -1}}), -4.0 * i2},
  };
  Matrix a(6, 6);
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) a.block(2 * i, 2 * j, 2, 2) = blocks[i][j];
  }
  return a;
}

SylvesterProblem example4() {
  const Matrix a = example4_A();
  return {a, a.transpose(), -Matrix::Identity(6, 6)};
}

Matrix example4_P_star() {
  return rows({
      {0.2278, 0.1343, 0.1176, 0.1690, 0.0744, -0.0009},
      {0.1343, 0.3170, 0.0990, 0.2713, 0.0694, -0.0068},
      {0.1176, 0.0990, 0.1529, 0.1360, 0.0819, 0.0040},
      {0.1690, 0.2713, 0.1360, 0.4106, 0.1067, 0.0278},
      {0.0744, 0.0694, 0.0819, 0.1069, 0.1660, -0.0021},
      {-0.0009, -0.0068, 0.0040, 0.0278, -0.0021, 0.1190},
  });
}

std::vector<std::vector<int>> example4_row_blocks() { return {{1, 2}, {3, 4}, {5, 6}}; }

Graph example4_graph() { return make_path(3); }

}  // namespace sylflow::fixtures
