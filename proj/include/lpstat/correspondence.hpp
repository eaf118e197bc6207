#pragma once

#include <string>
#include <vector>

#include "lpstat/copula.hpp"
#include "lpstat/discrete_dist.hpp"
#include "lpstat/matrix.hpp"

namespace lpstat {

enum class CorrespondenceVariant { CA, Goodman };

/// Joint row/column scaling of a two-way table from the canonical copula:
/// row coordinates mu_ik = lambda_k phi_k(u_i) at the category
/// mid-positions, column coordinates nu_jk = lambda_k psi_k(v_j).
/// The Goodman variant takes (gamma_k, phi_k, psi_k) from the SVD of the
/// exponential-model interaction parameters instead.
struct CorrespondenceResult {
    CorrespondenceVariant variant = CorrespondenceVariant::CA;
    Matrix row_coords;  // I x r
    Matrix col_coords;  // J x r
    std::vector<double> singular_values;  // all, descending
    std::vector<double> inertia_share;    // lambda_k^2 / sum lambda^2
    std::vector<std::string> row_labels, col_labels;
    std::vector<double> row_mass, col_mass;
    std::size_t rank = 0;
};

CorrespondenceResult correspondence_analysis(const ContingencyTable& t, std::size_t r,
                                             CorrespondenceVariant variant = CorrespondenceVariant::CA);

/// Per-category conditional comparison-density coefficient vectors,
/// LP[k; Y | X = x_i] for every row category and LP[k; X | Y = y_j] for
/// every column category (the correspondence coordinates, re-exposed as
/// shape descriptors of the copula slices).
struct ShapeMatchReport {
    Matrix row_vectors;  // I x r
    Matrix col_vectors;  // J x r
};
ShapeMatchReport shape_match_report(const ContingencyTable& t, std::size_t r);

}  // namespace lpstat
