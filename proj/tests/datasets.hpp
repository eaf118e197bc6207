#pragma once

#include "lpstat/discrete_dist.hpp"
#include "lpstat/matrix.hpp"

namespace lpstat::test {

/// Fisher (1940) Caithness hair and eye colour counts, n = 5387.
inline ContingencyTable fisher_table() {
    const double counts[4][5] = {{326, 38, 241, 110, 3},
                                 {688, 116, 584, 188, 4},
                                 {343, 84, 909, 412, 26},
                                 {98, 48, 403, 681, 85}};
    Matrix m(4, 5);
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 5; ++j) m(i, j) = counts[i][j];
    return ContingencyTable(m, {"blue", "light", "medium", "dark"},
                            {"fair", "red", "medium", "dark", "black"});
}

/// Wechsler Adult Intelligence Scale scores by age group (Mack & Wolfe 1981),
/// n = 15; a sparse 5 x 15 one-hot table.
inline ContingencyTable wais_table() {
    Matrix m(5, 15);
    const int ones[5][3] = {{1, 7, 9}, {5, 10, 13}, {8, 12, 14}, {2, 6, 11}, {0, 3, 4}};
    for (int r = 0; r < 5; ++r)
        for (int c : ones[r]) m(r, c) = 1;
    std::vector<std::string> cols;
    for (int c = 1; c <= 15; ++c) cols.push_back("iq" + std::to_string(c));
    return ContingencyTable(m, {"16-19", "20-34", "35-54", "55-69", "69+"}, cols);
}

}  // namespace lpstat::test
