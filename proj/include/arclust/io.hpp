#ifndef ARCLUST_IO_HPP
#define ARCLUST_IO_HPP

#include <Eigen/Core>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "arclust/dissim.hpp"
#include "arclust/embed.hpp"
#include "arclust/hier.hpp"
#include "arclust/metrics.hpp"
#include "arclust/tune.hpp"
#include "arclust/types.hpp"

namespace arclust {
namespace io {

/// 17 significant digits, enough for exact double round-trips.
std::string format_double(double v);

/// Write via temp file + rename in the target directory.
void write_text_atomic(const std::string& path, const std::string& content);

// ---------------------------------------------------------------------- CSV

struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;
    std::optional<std::size_t> column(const std::string& name) const;
};

CsvTable read_csv(const std::string& path);

/// Which columns play which role when loading a dataset.
struct ColumnRoles {
    std::string id_col;               // optional
    std::vector<std::string> x_cols;  // unprotected attributes
    std::vector<std::string> s_cols;  // numeric protected columns
    std::string class_col;            // single categorical protected column
    Codification codification;        // applies to class_col or validates s_cols
    std::string lat_col, lon_col;     // optional geography
};

struct LoadedDataset {
    Dataset data;
    Eigen::MatrixXd class_counts;  // n x q, for fairness metrics
    std::vector<std::string> class_names;
    Codification codification;
    std::vector<double> lat, lon;  // empty unless lat/lon columns declared
};

/// Loads and validates per the roles; any missing declared cell is an error
/// naming the row, as are unknown columns, unparsable cells, duplicate ids.
LoadedDataset load_csv(const std::string& path, const ColumnRoles& roles);

void save_dataset_csv(const std::string& path, const Dataset& data);

// ------------------------------------------------------------ dissimilarity

/// Dense CSV with a header row of ids (values only; metadata lives in the
/// binary format).
void save_dissim_csv(const std::string& path, const DissimMatrix& m,
                     const std::vector<std::string>& ids);
DissimMatrix load_dissim_csv(const std::string& path);

/// Binary format: magic "ARDM", u64 n, row-major f64 lower triangle
/// (diagonal included), f64 shift, u8 sqrt flag. Little-endian.
void save_dissim_ardm(const std::string& path, const DissimMatrix& m);
DissimMatrix load_dissim_ardm(const std::string& path);

// -------------------------------------------------------------- embeddings

void save_embedding_csv(const std::string& path, const Embedding& e,
                        const std::vector<std::string>& ids);
/// JSON sidecar: eigenvalues, negative_mass, dimensions.
void save_embedding_json(const std::string& path, const Embedding& e);
Eigen::MatrixXd load_coords_csv(const std::string& path, std::vector<std::string>* ids);

// ------------------------------------------------------- partitions & co.

std::string partition_to_json(const Partition& p, const std::string& method,
                              std::uint64_t seed, double objective,
                              const std::optional<DissimParams>& params);
Partition load_partition_json(const std::string& path);
void save_partition_json(const std::string& path, const Partition& p,
                         const std::string& method, std::uint64_t seed,
                         double objective, const std::optional<DissimParams>& params);

std::string metrics_to_json(const MetricsReport& r);
void save_metrics_json(const std::string& path, const MetricsReport& r);
/// One spreadsheet row per evaluation: method, params, k and the metric set.
std::string metrics_csv_row(const std::string& method, const std::string& params_desc,
                            int k, const MetricsReport& r);

// ----------------------------------------------------------- dendrograms

std::string dendrogram_to_json(const Dendrogram& d);
void save_dendrogram_json(const std::string& path, const Dendrogram& d);
/// Flat merge-list CSV; leaves are the negated 1-based record index, merged
/// clusters the 1-based merge step, as dendrogram plotters expect.
void save_dendrogram_csv(const std::string& path, const Dendrogram& d);

// ----------------------------------------------------------------- tuning

/// One row per (k, method, parameter) cell across all runs.
void save_gridcells_csv(const std::string& path, const std::vector<TuneResult>& runs,
                        const std::vector<std::string>& param_desc);
std::string tune_results_to_json(const std::vector<TuneResult>& runs,
                                 const std::vector<std::string>& param_desc);
void save_tune_results_json(const std::string& path, const std::vector<TuneResult>& runs,
                            const std::vector<std::string>& param_desc);

// -------------------------------------------------------------- geography

/// Haversine great-circle distances in kilometres (Earth mean radius
/// 6371.0088 km). Coordinates in degrees; throws on out-of-range values.
DissimMatrix geodesic_matrix(const std::vector<double>& lat,
                             const std::vector<double>& lon);

// ------------------------------------------------------------ config files

/// Flat "key = value" file; '#' starts a comment. Later keys override.
std::map<std::string, std::string> read_config(const std::string& path);

/// A tuning grid specification: family, parameter lists (expanded to the
/// full Cartesian grid in file order), methods, cluster counts, tau, seed.
struct GridFile {
    Family family = Family::delta2;
    std::vector<DissimParams> params;
    std::vector<std::string> param_desc;
    std::vector<Method> methods;
    std::vector<int> ks = {2};  // "k = 2" or a range "k = 2 3 4"
    double tau = 0.0;
    std::uint64_t seed = 0;
};

GridFile load_grid_file(const std::string& path, Eigen::Index p);

}  // namespace io
}  // namespace arclust

#endif
