#include "arclust/io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

#include "arclust/tune.hpp"

namespace arclust {
namespace io {

using nlohmann::json;

std::string format_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

void write_text_atomic(const std::string& path, const std::string& content) {
    namespace fs = std::filesystem;
    fs::path target(path);
    if (target.has_parent_path()) fs::create_directories(target.parent_path());
    fs::path tmp = target;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary);
        if (!out) throw std::runtime_error("cannot write " + tmp.string());
        out << content;
        if (!out) throw std::runtime_error("write failed for " + tmp.string());
    }
    fs::rename(tmp, target);
}

// ---------------------------------------------------------------------- CSV

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> fields;
    std::string cur;
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        char c = line[i];
        if (quoted) {
            if (c == '"') {
                if (i + 1 < line.size() && line[i + 1] == '"') {
                    cur += '"';
                    ++i;
                } else {
                    quoted = false;
                }
            } else {
                cur += c;
            }
        } else if (c == '"') {
            quoted = true;
        } else if (c == ',') {
            fields.push_back(cur);
            cur.clear();
        } else if (c != '\r') {
            cur += c;
        }
    }
    fields.push_back(cur);
    return fields;
}

std::string csv_escape(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += "\"\"";
        else out += c;
    }
    out += "\"";
    return out;
}

double parse_double(const std::string& field, std::size_t line_no,
                    const std::string& col) {
    if (field.empty())
        throw std::runtime_error("line " + std::to_string(line_no) +
                                 ": missing value in column '" + col + "'");
    char* end = nullptr;
    double v = std::strtod(field.c_str(), &end);
    if (end == field.c_str() || *end != '\0')
        throw std::runtime_error("line " + std::to_string(line_no) +
                                 ": cannot parse '" + field + "' in column '" + col +
                                 "' as a number");
    return v;
}

}  // namespace

std::optional<std::size_t> CsvTable::column(const std::string& name) const {
    for (std::size_t i = 0; i < header.size(); ++i)
        if (header[i] == name) return i;
    return std::nullopt;
}

CsvTable read_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    CsvTable t;
    std::string line;
    if (!std::getline(in, line)) throw std::runtime_error(path + ": empty file");
    t.header = split_csv_line(line);
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        t.rows.push_back(split_csv_line(line));
    }
    return t;
}

LoadedDataset load_csv(const std::string& path, const ColumnRoles& roles) {
    const bool latlon_as_x = roles.x_cols.empty();
    if (latlon_as_x && (roles.lat_col.empty() || roles.lon_col.empty()))
        throw std::runtime_error(
            "load_csv: declare x columns (or lat/lon columns to use as coordinates)");
    if (roles.s_cols.empty() && roles.class_col.empty())
        throw std::runtime_error("load_csv: declare protected columns or a class column");
    if (!roles.s_cols.empty() && !roles.class_col.empty())
        throw std::runtime_error("load_csv: s columns and class column are exclusive");

    CsvTable t = read_csv(path);
    auto need = [&](const std::string& name) {
        auto c = t.column(name);
        if (!c) throw std::runtime_error(path + ": missing column '" + name + "'");
        return *c;
    };

    std::vector<std::size_t> xi;
    for (const auto& c : roles.x_cols) xi.push_back(need(c));
    std::vector<std::size_t> si;
    for (const auto& c : roles.s_cols) si.push_back(need(c));
    std::optional<std::size_t> idi, clsi, lati, loni;
    if (!roles.id_col.empty()) idi = need(roles.id_col);
    if (!roles.class_col.empty()) clsi = need(roles.class_col);
    if (!roles.lat_col.empty()) lati = need(roles.lat_col);
    if (!roles.lon_col.empty()) loni = need(roles.lon_col);

    {
        std::set<std::string> declared;
        auto add = [&](const std::string& c) {
            if (!c.empty() && !declared.insert(c).second)
                throw std::runtime_error("load_csv: column '" + c +
                                         "' declared in more than one role");
        };
        for (const auto& c : roles.x_cols) add(c);
        for (const auto& c : roles.s_cols) add(c);
        add(roles.id_col);
        add(roles.class_col);
        add(roles.lat_col);
        add(roles.lon_col);
    }

    const std::size_t n = t.rows.size();
    if (n == 0) throw std::runtime_error(path + ": no data rows");

    Eigen::MatrixXd x(n, xi.size());
    std::vector<std::string> ids;
    std::vector<std::string> class_labels;
    Eigen::MatrixXd s_numeric(n, si.size());
    std::vector<double> lat, lon;
    std::set<std::string> seen_ids;

    for (std::size_t r = 0; r < n; ++r) {
        const auto& row = t.rows[r];
        const std::size_t line_no = r + 2;  // header is line 1
        auto cell = [&](std::size_t col, const std::string& name) -> const std::string& {
            if (col >= row.size())
                throw std::runtime_error("line " + std::to_string(line_no) +
                                         ": missing value in column '" + name + "'");
            return row[col];
        };
        for (std::size_t j = 0; j < xi.size(); ++j)
            x(r, j) = parse_double(cell(xi[j], roles.x_cols[j]), line_no, roles.x_cols[j]);
        for (std::size_t j = 0; j < si.size(); ++j)
            s_numeric(r, j) =
                parse_double(cell(si[j], roles.s_cols[j]), line_no, roles.s_cols[j]);
        if (idi) {
            const std::string& id = cell(*idi, roles.id_col);
            if (id.empty())
                throw std::runtime_error("line " + std::to_string(line_no) + ": empty id");
            if (!seen_ids.insert(id).second)
                throw std::runtime_error("line " + std::to_string(line_no) +
                                         ": duplicate id '" + id + "'");
            ids.push_back(id);
        }
        if (clsi) {
            const std::string& c = cell(*clsi, roles.class_col);
            if (c.empty())
                throw std::runtime_error("line " + std::to_string(line_no) +
                                         ": missing class value");
            class_labels.push_back(c);
        }
        if (lati)
            lat.push_back(parse_double(cell(*lati, roles.lat_col), line_no, roles.lat_col));
        if (loni)
            lon.push_back(parse_double(cell(*loni, roles.lon_col), line_no, roles.lon_col));
    }

    if (latlon_as_x) {
        x.resize(n, 2);
        for (std::size_t r = 0; r < n; ++r) {
            x(r, 0) = lat[r];
            x(r, 1) = lon[r];
        }
    }

    Eigen::MatrixXd s;
    Eigen::MatrixXd class_counts;
    std::vector<std::string> class_names;
    if (clsi) {
        s = encode_classes(class_labels, roles.codification);
        class_names = distinct_categories(class_labels);
        if (roles.codification.scheme == CodScheme::signed_pm1) {
            class_counts = Eigen::MatrixXd::Zero(n, 2);
            for (std::size_t r = 0; r < n; ++r)
                class_counts(r, s(r, 0) > 0.0 ? 0 : 1) = 1.0;
        } else {
            class_counts = s;
        }
    } else {
        s = s_numeric;
        class_names = roles.s_cols;
        if (roles.codification.scheme == CodScheme::counts) {
            for (std::size_t r = 0; r < n; ++r)
                for (Eigen::Index j = 0; j < s.cols(); ++j) {
                    double v = s(r, j);
                    if (v < 0.0 || v != std::floor(v))
                        throw std::runtime_error(
                            "line " + std::to_string(r + 2) + ": column '" +
                            roles.s_cols[j] +
                            "' must hold non-negative integer counts");
                }
            class_counts = s;
        } else {
            // non-negative columns count as-is; a single +/-1 column splits
            // into two indicators; anything else has no derivable counts
            try {
                class_counts = derive_class_counts(s);
                if (class_counts.cols() == 2 && s.cols() == 1)
                    class_names = {"+1", "-1"};
            } catch (const std::invalid_argument&) {
            }
        }
    }
    return LoadedDataset{Dataset(std::move(x), std::move(s), std::move(ids)),
                         std::move(class_counts), std::move(class_names),
                         roles.codification, std::move(lat), std::move(lon)};
}

void save_dataset_csv(const std::string& path, const Dataset& data) {
    std::ostringstream os;
    os << "id";
    for (Eigen::Index j = 0; j < data.d(); ++j) os << ",x" << (j + 1);
    for (Eigen::Index j = 0; j < data.p(); ++j) os << ",s" << (j + 1);
    os << "\n";
    for (Eigen::Index i = 0; i < data.n(); ++i) {
        os << (data.ids().empty() ? std::to_string(i) : csv_escape(data.ids()[i]));
        for (Eigen::Index j = 0; j < data.d(); ++j) os << "," << format_double(data.x()(i, j));
        for (Eigen::Index j = 0; j < data.p(); ++j) os << "," << format_double(data.s()(i, j));
        os << "\n";
    }
    write_text_atomic(path, os.str());
}

// ------------------------------------------------------------ dissimilarity

void save_dissim_csv(const std::string& path, const DissimMatrix& m,
                     const std::vector<std::string>& ids) {
    const Eigen::Index n = m.n();
    std::ostringstream os;
    for (Eigen::Index j = 0; j < n; ++j) {
        if (j) os << ",";
        os << (ids.empty() ? "p" + std::to_string(j) : csv_escape(ids[j]));
    }
    os << "\n";
    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index j = 0; j < n; ++j) {
            if (j) os << ",";
            os << format_double(m.values(i, j));
        }
        os << "\n";
    }
    write_text_atomic(path, os.str());
}

DissimMatrix load_dissim_csv(const std::string& path) {
    CsvTable t = read_csv(path);
    const std::size_t n = t.header.size();
    if (t.rows.size() != n)
        throw std::runtime_error(path + ": matrix is not square (" +
                                 std::to_string(t.rows.size()) + " rows, " +
                                 std::to_string(n) + " columns)");
    DissimMatrix m;
    m.values.resize(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            m.values(i, j) = parse_double(t.rows[i][j], i + 2, t.header[j]);
    return m;
}

namespace {

template <typename T>
void put_le(std::string& out, T v) {
    for (std::size_t b = 0; b < sizeof(T); ++b)
        out += static_cast<char>((static_cast<std::uint64_t>(v) >> (8 * b)) & 0xff);
}

void put_f64(std::string& out, double v) {
    std::uint64_t bits;
    std::memcpy(&bits, &v, 8);
    put_le(out, bits);
}

std::uint64_t get_u64(const std::string& in, std::size_t& pos) {
    std::uint64_t v = 0;
    for (std::size_t b = 0; b < 8; ++b)
        v |= static_cast<std::uint64_t>(static_cast<unsigned char>(in[pos + b])) << (8 * b);
    pos += 8;
    return v;
}

double get_f64(const std::string& in, std::size_t& pos) {
    std::uint64_t bits = get_u64(in, pos);
    double v;
    std::memcpy(&v, &bits, 8);
    return v;
}

}  // namespace

void save_dissim_ardm(const std::string& path, const DissimMatrix& m) {
    const Eigen::Index n = m.n();
    std::string out;
    out.reserve(13 + 8 * static_cast<std::size_t>(n) * (n + 1) / 2);
    out += "ARDM";
    put_le(out, static_cast<std::uint64_t>(n));
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j <= i; ++j) put_f64(out, m.values(i, j));
    put_f64(out, m.shift_applied);
    out += static_cast<char>(m.sqrt_applied ? 1 : 0);
    write_text_atomic(path, out);
}

DissimMatrix load_dissim_ardm(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::string buf((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    if (buf.size() < 12 || buf.compare(0, 4, "ARDM") != 0)
        throw std::runtime_error(path + ": not an ARDM file");
    std::size_t pos = 4;
    std::uint64_t n = get_u64(buf, pos);
    std::size_t expect = 4 + 8 + 8 * (n * (n + 1) / 2) + 8 + 1;
    if (buf.size() != expect)
        throw std::runtime_error(path + ": truncated or oversized ARDM payload");
    DissimMatrix m;
    m.values.resize(n, n);
    for (std::uint64_t i = 0; i < n; ++i)
        for (std::uint64_t j = 0; j <= i; ++j) {
            double v = get_f64(buf, pos);
            m.values(i, j) = v;
            m.values(j, i) = v;
        }
    m.shift_applied = get_f64(buf, pos);
    m.sqrt_applied = buf[pos] != 0;
    return m;
}

// -------------------------------------------------------------- embeddings

void save_embedding_csv(const std::string& path, const Embedding& e,
                        const std::vector<std::string>& ids) {
    std::ostringstream os;
    os << "id";
    for (int j = 0; j < e.effective_dim; ++j) os << ",coord_" << (j + 1);
    os << "\n";
    for (Eigen::Index i = 0; i < e.coords.rows(); ++i) {
        os << (ids.empty() ? std::to_string(i) : csv_escape(ids[i]));
        for (int j = 0; j < e.effective_dim; ++j) os << "," << format_double(e.coords(i, j));
        os << "\n";
    }
    write_text_atomic(path, os.str());
}

void save_embedding_json(const std::string& path, const Embedding& e) {
    json j;
    j["eigenvalues"] = std::vector<double>(e.eigenvalues.data(),
                                           e.eigenvalues.data() + e.eigenvalues.size());
    j["negative_mass"] = e.negative_mass;
    j["requested_dim"] = e.requested_dim;
    j["effective_dim"] = e.effective_dim;
    write_text_atomic(path, j.dump(2) + "\n");
}

Eigen::MatrixXd load_coords_csv(const std::string& path, std::vector<std::string>* ids) {
    CsvTable t = read_csv(path);
    if (t.header.empty() || t.header[0] != "id")
        throw std::runtime_error(path + ": expected an 'id' first column");
    const std::size_t n = t.rows.size(), d = t.header.size() - 1;
    Eigen::MatrixXd coords(n, d);
    for (std::size_t i = 0; i < n; ++i) {
        if (ids) ids->push_back(t.rows[i][0]);
        for (std::size_t j = 0; j < d; ++j)
            coords(i, j) = parse_double(t.rows[i][j + 1], i + 2, t.header[j + 1]);
    }
    return coords;
}

// ------------------------------------------------------- partitions & co.

namespace {

json matrix_to_json(const Eigen::MatrixXd& m) {
    json rows = json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
        rows.push_back(std::move(row));
    }
    return rows;
}

Eigen::MatrixXd matrix_from_json(const json& j) {
    if (!j.is_array() || j.empty()) return {};
    Eigen::MatrixXd m(j.size(), j[0].size());
    for (std::size_t i = 0; i < j.size(); ++i)
        for (std::size_t c = 0; c < j[i].size(); ++c) m(i, c) = j[i][c].get<double>();
    return m;
}

json params_to_json(const DissimParams& p) {
    json j;
    j["family"] = family_name(p.family);
    switch (p.family) {
        case Family::delta1:
            j["u_matrix"] = matrix_to_json(p.u_matrix);
            j["v_matrix"] = matrix_to_json(p.v_matrix);
            break;
        case Family::delta2:
            j["u"] = p.u;
            j["v"] = p.v;
            break;
        case Family::delta3: j["u"] = p.u; break;
        case Family::delta4:
            j["v_matrix"] = matrix_to_json(p.v_matrix);
            j["u"] = p.u;
            j["v"] = p.v;
            j["w"] = p.w;
            break;
    }
    return j;
}

}  // namespace

std::string partition_to_json(const Partition& p, const std::string& method,
                              std::uint64_t seed, double objective,
                              const std::optional<DissimParams>& params) {
    json j;
    j["labels"] = p.labels;
    j["k"] = p.k;
    if (p.proportions.size() > 0) j["proportions"] = matrix_to_json(p.proportions);
    j["method"] = method;
    j["seed"] = seed;
    j["objective"] = objective;
    if (params) j["params"] = params_to_json(*params);
    return j.dump(2) + "\n";
}

void save_partition_json(const std::string& path, const Partition& p,
                         const std::string& method, std::uint64_t seed,
                         double objective, const std::optional<DissimParams>& params) {
    write_text_atomic(path, partition_to_json(p, method, seed, objective, params));
}

Partition load_partition_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    json j = json::parse(in);
    Partition p = Partition::from_labels(j.at("labels").get<std::vector<int>>(),
                                         j.at("k").get<int>());
    if (j.contains("proportions")) p.proportions = matrix_from_json(j["proportions"]);
    return p;
}

std::string metrics_to_json(const MetricsReport& r) {
    json j;
    j["avg_silhouette"] = r.avg_silhouette;
    j["per_class_silhouette"] = std::vector<double>(
        r.per_class_silhouette.data(),
        r.per_class_silhouette.data() + r.per_class_silhouette.size());
    if (r.balance >= 0.0)
        j["balance"] = r.balance;
    else
        j["balance"] = nullptr;
    j["unfairness"] = r.unfairness;
    j["per_cluster_proportions"] = matrix_to_json(r.per_cluster_proportions);
    j["kmeans_ss"] = r.kmeans_ss;
    j["kmedian_sum"] = r.kmedian_sum;
    return j.dump(2) + "\n";
}

void save_metrics_json(const std::string& path, const MetricsReport& r) {
    write_text_atomic(path, metrics_to_json(r));
}

std::string metrics_csv_row(const std::string& method, const std::string& params_desc,
                            int k, const MetricsReport& r) {
    std::ostringstream os;
    os << csv_escape(method) << "," << csv_escape(params_desc) << "," << k << ","
       << format_double(r.avg_silhouette) << ","
       << (r.balance >= 0.0 ? format_double(r.balance) : "") << ","
       << format_double(r.unfairness) << "," << format_double(r.kmeans_ss) << ","
       << format_double(r.kmedian_sum);
    return os.str();
}

// ----------------------------------------------------------- dendrograms

std::string dendrogram_to_json(const Dendrogram& d) {
    json merges = json::array();
    for (const Merge& m : d.merges) merges.push_back({m.a, m.b, m.height, m.new_size});
    json j;
    j["n_leaves"] = d.n_leaves;
    j["shift_applied"] = d.shift_applied;
    j["merges"] = std::move(merges);
    return j.dump(2) + "\n";
}

void save_dendrogram_json(const std::string& path, const Dendrogram& d) {
    write_text_atomic(path, dendrogram_to_json(d));
}

void save_dendrogram_csv(const std::string& path, const Dendrogram& d) {
    std::ostringstream os;
    os << "step,a,b,height,size\n";
    auto conv = [&d](int id) {
        return id < d.n_leaves ? -(id + 1) : id - d.n_leaves + 1;
    };
    for (std::size_t t = 0; t < d.merges.size(); ++t) {
        const Merge& m = d.merges[t];
        os << (t + 1) << "," << conv(m.a) << "," << conv(m.b) << ","
           << format_double(m.height) << "," << m.new_size << "\n";
    }
    write_text_atomic(path, os.str());
}

// ----------------------------------------------------------------- tuning

void save_gridcells_csv(const std::string& path, const std::vector<TuneResult>& runs,
                        const std::vector<std::string>& param_desc) {
    std::ostringstream os;
    os << "method,param_index,params,k,unfairness,avg_silhouette,seed,ok,best,error\n";
    for (const TuneResult& r : runs) {
        for (const MethodResult& mr : r.methods) {
            for (const GridCell& c : mr.cells) {
                bool is_best = mr.best_index && *mr.best_index == c.param_index;
                os << method_name(c.method) << "," << c.param_index << ","
                   << csv_escape(c.param_index < param_desc.size()
                                     ? param_desc[c.param_index]
                                     : "")
                   << "," << c.k << "," << (c.ok ? format_double(c.unfairness) : "")
                   << "," << (c.ok ? format_double(c.avg_silhouette) : "") << ","
                   << c.seed << "," << (c.ok ? 1 : 0) << "," << (is_best ? 1 : 0) << ","
                   << csv_escape(c.error) << "\n";
            }
        }
    }
    write_text_atomic(path, os.str());
}

std::string tune_results_to_json(const std::vector<TuneResult>& runs,
                                 const std::vector<std::string>& param_desc) {
    json jruns = json::array();
    for (const TuneResult& r : runs) {
        json methods = json::array();
        for (const MethodResult& mr : r.methods) {
            json cells = json::array();
            for (const GridCell& c : mr.cells) {
                json jc;
                jc["param_index"] = c.param_index;
                if (c.param_index < param_desc.size())
                    jc["params"] = param_desc[c.param_index];
                jc["ok"] = c.ok;
                if (c.ok) {
                    jc["unfairness"] = c.unfairness;
                    jc["avg_silhouette"] = c.avg_silhouette;
                } else {
                    jc["error"] = c.error;
                }
                cells.push_back(std::move(jc));
            }
            json jm;
            jm["method"] = method_name(mr.method);
            jm["infeasible"] = mr.infeasible;
            if (mr.best_index) jm["best_index"] = *mr.best_index;
            jm["cells"] = std::move(cells);
            methods.push_back(std::move(jm));
        }
        json jr;
        jr["k"] = r.k;
        jr["tau"] = r.tau;
        jr["seed"] = r.seed;
        jr["methods"] = std::move(methods);
        jruns.push_back(std::move(jr));
    }
    json j;
    j["runs"] = std::move(jruns);
    return j.dump(2) + "\n";
}

void save_tune_results_json(const std::string& path, const std::vector<TuneResult>& runs,
                            const std::vector<std::string>& param_desc) {
    write_text_atomic(path, tune_results_to_json(runs, param_desc));
}

// -------------------------------------------------------------- geography

DissimMatrix geodesic_matrix(const std::vector<double>& lat,
                             const std::vector<double>& lon) {
    if (lat.size() != lon.size())
        throw std::invalid_argument("geodesic_matrix: lat/lon size mismatch");
    const std::size_t n = lat.size();
    constexpr double kEarthRadiusKm = 6371.0088;
    constexpr double kDegToRad = 0.017453292519943295;
    for (std::size_t i = 0; i < n; ++i) {
        if (!(lat[i] >= -90.0 && lat[i] <= 90.0))
            throw std::invalid_argument("geodesic_matrix: latitude out of [-90, 90]");
        if (!(lon[i] >= -180.0 && lon[i] <= 180.0))
            throw std::invalid_argument("geodesic_matrix: longitude out of [-180, 180]");
    }
    DissimMatrix m;
    m.values = Eigen::MatrixXd::Zero(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        double phi1 = lat[i] * kDegToRad, lam1 = lon[i] * kDegToRad;
        for (std::size_t j = i + 1; j < n; ++j) {
            double phi2 = lat[j] * kDegToRad, lam2 = lon[j] * kDegToRad;
            double sdphi = std::sin((phi2 - phi1) / 2.0);
            double sdlam = std::sin((lam2 - lam1) / 2.0);
            double a = sdphi * sdphi + std::cos(phi1) * std::cos(phi2) * sdlam * sdlam;
            double d = 2.0 * kEarthRadiusKm * std::asin(std::min(1.0, std::sqrt(a)));
            m.values(i, j) = d;
            m.values(j, i) = d;
        }
    }
    return m;
}

// ------------------------------------------------------------ config files

namespace {

std::string trim(const std::string& s) {
    std::size_t a = s.find_first_not_of(" \t\r\n");
    if (a == std::string::npos) return "";
    std::size_t b = s.find_last_not_of(" \t\r\n");
    return s.substr(a, b - a + 1);
}

std::vector<std::string> split_ws(const std::string& s) {
    std::vector<std::string> out;
    std::istringstream is(s);
    std::string tok;
    while (is >> tok) out.push_back(tok);
    return out;
}

std::vector<double> parse_double_list(const std::string& s, const std::string& key) {
    std::vector<double> out;
    for (const auto& tok : split_ws(s)) {
        char* end = nullptr;
        double v = std::strtod(tok.c_str(), &end);
        if (end == tok.c_str() || *end != '\0')
            throw std::runtime_error("grid file: bad number '" + tok + "' for key '" +
                                     key + "'");
        out.push_back(v);
    }
    if (out.empty()) throw std::runtime_error("grid file: empty list for key '" + key + "'");
    return out;
}

Eigen::MatrixXd parse_matrix(const std::string& s, const std::string& key) {
    std::vector<std::vector<double>> rows;
    std::string row;
    std::istringstream is(s);
    while (std::getline(is, row, ';')) {
        auto vals = parse_double_list(row, key);
        rows.push_back(vals);
    }
    if (rows.empty()) throw std::runtime_error("grid file: empty matrix for '" + key + "'");
    Eigen::MatrixXd m(rows.size(), rows[0].size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].size() != rows[0].size())
            throw std::runtime_error("grid file: ragged matrix for '" + key + "'");
        for (std::size_t j = 0; j < rows[i].size(); ++j) m(i, j) = rows[i][j];
    }
    return m;
}

}  // namespace

std::map<std::string, std::string> read_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::map<std::string, std::string> out;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        auto eq = line.find('=');
        if (eq == std::string::npos)
            throw std::runtime_error(path + ":" + std::to_string(line_no) +
                                     ": expected 'key = value'");
        std::string key = trim(line.substr(0, eq));
        std::string value = trim(line.substr(eq + 1));
        if (key.empty())
            throw std::runtime_error(path + ":" + std::to_string(line_no) + ": empty key");
        out[key] = value;
    }
    return out;
}

GridFile load_grid_file(const std::string& path, Eigen::Index p) {
    auto cfg = read_config(path);
    auto get = [&](const std::string& key) -> std::string {
        auto it = cfg.find(key);
        if (it == cfg.end())
            throw std::runtime_error(path + ": missing key '" + key + "'");
        return it->second;
    };
    auto get_or = [&](const std::string& key, const std::string& fallback) {
        auto it = cfg.find(key);
        return it == cfg.end() ? fallback : it->second;
    };

    GridFile g;
    g.family = family_from_name(get("family"));
    for (const auto& m : split_ws(get("methods"))) g.methods.push_back(method_from_name(m));
    g.ks.clear();
    for (double kv : parse_double_list(get_or("k", "2"), "k")) {
        if (kv < 1 || kv != std::floor(kv))
            throw std::runtime_error(path + ": k values must be positive integers");
        g.ks.push_back(static_cast<int>(kv));
    }
    g.tau = std::stod(get_or("tau", "0"));
    g.seed = static_cast<std::uint64_t>(std::stoull(get_or("seed", "0")));

    auto desc = [](const std::string& s) { return s; };

    switch (g.family) {
        case Family::delta2: {
            auto us = parse_double_list(get("u"), "u");
            auto vs = parse_double_list(get("v"), "v");
            for (double u : us)
                for (double v : vs) {
                    g.params.push_back(DissimParams::multiplicative(u, v));
                    g.param_desc.push_back(desc("u=" + format_double(u) +
                                                " v=" + format_double(v)));
                }
            break;
        }
        case Family::delta3: {
            auto us = parse_double_list(get("u"), "u");
            for (double u : us) {
                g.params.push_back(DissimParams::subtractive(u));
                g.param_desc.push_back(desc("u=" + format_double(u)));
            }
            break;
        }
        case Family::delta1:
        case Family::delta4: {
            auto names = split_ws(get("vtilde"));
            std::vector<std::pair<std::string, Eigen::MatrixXd>> vts;
            for (const auto& name : names) {
                Eigen::MatrixXd vt = parse_matrix(get("vtilde." + name), "vtilde." + name);
                if (vt.rows() != p || vt.cols() != p)
                    throw std::runtime_error(path + ": matrix 'vtilde." + name +
                                             "' must be " + std::to_string(p) + "x" +
                                             std::to_string(p));
                // interaction patterns are applied as quadratic forms; use the
                // symmetric part so the dissimilarity stays symmetric
                Eigen::MatrixXd sym = 0.5 * (vt + vt.transpose());
                vts.emplace_back(name, std::move(sym));
            }
            auto v0s = parse_double_list(get_or("v0", "1"), "v0");
            if (g.family == Family::delta1) {
                Eigen::MatrixXd zero = Eigen::MatrixXd::Zero(p, p);
                for (const auto& [name, vt] : vts)
                    for (double v0 : v0s) {
                        g.params.push_back(DissimParams::additive(zero, v0 * vt));
                        g.param_desc.push_back(
                            desc("vtilde=" + name + " v0=" + format_double(v0)));
                    }
            } else {
                auto us = parse_double_list(get("u"), "u");
                auto vs = parse_double_list(get("v"), "v");
                auto ws = parse_double_list(get("w"), "w");
                for (const auto& [name, vt] : vts)
                    for (double v0 : v0s)
                        for (double u : us)
                            for (double v : vs)
                                for (double w : ws) {
                                    g.params.push_back(
                                        DissimParams::local(v0 * vt, u, v, w));
                                    g.param_desc.push_back(desc(
                                        "vtilde=" + name + " v0=" + format_double(v0) +
                                        " u=" + format_double(u) + " v=" +
                                        format_double(v) + " w=" + format_double(w)));
                                }
            }
            break;
        }
    }
    return g;
}

}  // namespace io
}  // namespace arclust
