#pragma once

// Wide-CSV ingestion and emission of sampled curves.  The header row carries
// the sampling grid t_1..t_G as decimal literals; each following row is one
// curve.  An optional final column named "label" (-1/+1) or "y" (decimal)
// carries the response.  All numeric output uses 17 significant digits so a
// write/read round trip is exact, and files are replaced atomically.

#include "funcboost/dataset.hpp"

#include <Eigen/Dense>

#include <stdexcept>
#include <string>
#include <vector>

namespace funcboost {

/// Malformed input data (as opposed to programming errors); the CLI maps
/// this to its data-error exit code.
class DataError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

struct CurveTable {
    Eigen::VectorXd grid;    // strictly increasing, length G
    Eigen::MatrixXd values;  // n x G samples
    ResponseKind response = ResponseKind::None;
    Eigen::VectorXd y;       // length n when a response column is present

    Eigen::Index n() const { return values.rows(); }
};

/// Parse a curve table, rejecting malformed input with line/column
/// diagnostics: ragged rows, non-numeric cells, a non-increasing grid,
/// labels outside {-1,+1} or an unrecognized response column name.
CurveTable load_curves(const std::string& path);

void save_curves(const CurveTable& table, const std::string& path);

/// Shortest exact decimal form (17 significant digits).
std::string format_double(double x);

/// Write via a temporary file in the same directory plus rename, so readers
/// never observe a partially written file.
void atomic_write_text(const std::string& path, const std::string& contents);

/// Generic header + numeric rows writer used for every CSV the tools emit.
void write_csv(const std::string& path, const std::vector<std::string>& header,
               const Eigen::MatrixXd& rows);

}  // namespace funcboost
