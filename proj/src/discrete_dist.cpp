#include "lpstat/discrete_dist.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "lpstat/errors.hpp"

namespace lpstat {

namespace {
constexpr double kProbTol = 1e-12;
}

DiscreteDist DiscreteDist::from_masses(std::vector<double> atoms, std::vector<double> masses) {
    if (atoms.size() != masses.size())
        throw DataError("atoms and masses must have equal length");
    if (atoms.empty()) throw DataError("empty input");

    DiscreteDist d;
    double total = 0.0;
    for (double w : masses) {
        if (!std::isfinite(w) || w < 0.0) throw DataError("masses must be finite and nonnegative");
        total += w;
    }
    if (total <= 0.0) throw DataError("masses must have positive total");

    for (std::size_t i = 0; i < atoms.size(); ++i) {
        if (!std::isfinite(atoms[i])) throw DataError("atoms must be finite");
        if (masses[i] == 0.0) continue;  // unobservable, breaks orthonormalization
        d.atoms_.push_back(atoms[i]);
        d.masses_.push_back(masses[i] / total);
    }
    if (d.atoms_.empty()) throw DataError("all masses are zero");
    for (std::size_t i = 1; i < d.atoms_.size(); ++i)
        if (!(d.atoms_[i] > d.atoms_[i - 1]))
            throw DataError("atoms must be strictly increasing");

    d.cumulative_.resize(d.masses_.size());
    d.mid_.resize(d.masses_.size());
    // compensated running sum keeps the cumulative error near machine
    // precision even for samples with millions of distinct atoms
    double run = 0.0, comp = 0.0;
    for (std::size_t i = 0; i < d.masses_.size(); ++i) {
        const double y = d.masses_[i] - comp;
        const double t = run + y;
        comp = (t - run) - y;
        run = t;
        d.cumulative_[i] = run;
        d.mid_[i] = run - d.masses_[i] / 2.0;
    }
    // 1e-12 for table-sized inputs; the normalized masses themselves carry
    // up to ~n*eps rounding for very large empirical supports
    const double tol =
        kProbTol + 8.0 * std::numeric_limits<double>::epsilon() * static_cast<double>(d.size());
    if (std::abs(d.cumulative_.back() - 1.0) > tol)
        throw NumericError("probabilities do not sum to 1");
    d.cumulative_.back() = 1.0;
    return d;
}

double DiscreteDist::mean() const {
    double s = 0.0;
    for (std::size_t i = 0; i < size(); ++i) s += masses_[i] * atoms_[i];
    return s;
}

double DiscreteDist::variance() const {
    const double mu = mean();
    double s = 0.0;
    for (std::size_t i = 0; i < size(); ++i) {
        const double c = atoms_[i] - mu;
        s += masses_[i] * c * c;
    }
    return s;
}

std::optional<std::size_t> DiscreteDist::atom_index(double x) const {
    auto it = std::lower_bound(atoms_.begin(), atoms_.end(), x);
    if (it != atoms_.end() && *it == x)
        return static_cast<std::size_t>(it - atoms_.begin());
    return std::nullopt;
}

std::size_t DiscreteDist::quantile_cell(double u) const {
    auto it = std::lower_bound(cumulative_.begin(), cumulative_.end(), u);
    if (it == cumulative_.end()) return size() - 1;
    return static_cast<std::size_t>(it - cumulative_.begin());
}

std::size_t DiscreteDist::right_cell(double u) const {
    auto it = std::upper_bound(cumulative_.begin(), cumulative_.end(), u);
    if (it == cumulative_.end()) return size() - 1;
    return static_cast<std::size_t>(it - cumulative_.begin());
}

DiscreteDist empirical_dist(const Sample& s) {
    if (s.values.empty()) throw DataError("empty input");
    std::vector<double> sorted = s.values;
    for (double v : sorted)
        if (!std::isfinite(v)) throw DataError("sample values must be finite");
    std::sort(sorted.begin(), sorted.end());

    std::vector<double> atoms, counts;
    for (double v : sorted) {
        if (atoms.empty() || v != atoms.back()) {
            atoms.push_back(v);
            counts.push_back(1.0);
        } else {
            counts.back() += 1.0;
        }
    }
    return DiscreteDist::from_masses(std::move(atoms), std::move(counts));
}

double midcdf(const DiscreteDist& d, double x) {
    if (auto idx = d.atom_index(x)) return d.mid()[*idx];
    // off the atoms: F(x) = F(largest atom below x)
    auto it = std::upper_bound(d.atoms().begin(), d.atoms().end(), x);
    if (it == d.atoms().begin()) return 0.0;
    return d.cumulative()[static_cast<std::size_t>(it - d.atoms().begin()) - 1];
}

double quantile(const DiscreteDist& d, double u) {
    if (!(u > 0.0 && u < 1.0)) throw DataError("quantile level must lie in (0,1)");
    return d.atoms()[d.quantile_cell(u)];
}

double midvar(const DiscreteDist& d) {
    double cubes = 0.0;
    for (double p : d.masses()) cubes += p * p * p;
    return (1.0 - cubes) / 12.0;
}

ContingencyTable::ContingencyTable(Matrix entries,
                                   std::vector<std::string> row_labels,
                                   std::vector<std::string> col_labels,
                                   std::optional<double> n)
    : row_labels_(std::move(row_labels)), col_labels_(std::move(col_labels)) {
    if (entries.rows() == 0 || entries.cols() == 0) throw DataError("empty table");
    double total = 0.0;
    for (double v : entries.data()) {
        if (!std::isfinite(v) || v < 0.0) throw DataError("table entries must be finite and nonnegative");
        total += v;
    }
    if (total <= 0.0) throw DataError("table has no positive entries");

    if (total <= 1.0 + 1e-9) {
        n_ = n;  // probabilities as given
    } else {
        n_ = n ? n : std::optional<double>(total);  // counts
    }
    for (double& v : entries.data()) v /= total;
    probs_ = std::move(entries);

    if (row_labels_.empty())
        for (std::size_t i = 0; i < probs_.rows(); ++i) row_labels_.push_back("r" + std::to_string(i));
    if (col_labels_.empty())
        for (std::size_t j = 0; j < probs_.cols(); ++j) col_labels_.push_back("c" + std::to_string(j));
    if (row_labels_.size() != probs_.rows() || col_labels_.size() != probs_.cols())
        throw DataError("label count does not match table shape");
}

std::pair<DiscreteDist, DiscreteDist> table_margins(const ContingencyTable& t) {
    const Matrix& P = t.probs();
    std::vector<double> row(P.rows(), 0.0), col(P.cols(), 0.0);
    for (std::size_t i = 0; i < P.rows(); ++i)
        for (std::size_t j = 0; j < P.cols(); ++j) {
            row[i] += P(i, j);
            col[j] += P(i, j);
        }
    for (std::size_t i = 0; i < row.size(); ++i)
        if (row[i] <= 0.0)
            throw DataError("empty row category: " + t.row_labels()[i]);
    for (std::size_t j = 0; j < col.size(); ++j)
        if (col[j] <= 0.0)
            throw DataError("empty column category: " + t.col_labels()[j]);

    std::vector<double> ratoms(row.size()), catoms(col.size());
    for (std::size_t i = 0; i < row.size(); ++i) ratoms[i] = static_cast<double>(i);
    for (std::size_t j = 0; j < col.size(); ++j) catoms[j] = static_cast<double>(j);
    return {DiscreteDist::from_masses(std::move(ratoms), std::move(row)),
            DiscreteDist::from_masses(std::move(catoms), std::move(col))};
}

}  // namespace lpstat
