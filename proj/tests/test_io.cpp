#include "doctest.h"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>

#include "arclust/io.hpp"
#include "arclust/plot.hpp"
#include "arclust/rng.hpp"
#include "arclust/synth.hpp"
#include "oracles.hpp"

using namespace arclust;

namespace {

struct TempDir {
    std::filesystem::path path;
    TempDir() {
        path = std::filesystem::temp_directory_path() /
               ("arclust_test_" + std::to_string(::getpid()) + "_" +
                std::to_string(counter()));
        std::filesystem::create_directories(path);
    }
    ~TempDir() { std::filesystem::remove_all(path); }
    static int counter() {
        static int c = 0;
        return c++;
    }
    std::string file(const std::string& name) const { return (path / name).string(); }
};

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path);
    out << content;
}

}  // namespace

TEST_CASE("load_csv with x columns and a signed class column") {
    TempDir tmp;
    write_file(tmp.file("d.csv"),
               "id,a,b,grp\n"
               "r1,0.5,1.5,yes\n"
               "r2,-1,2,no\n"
               "r3,0,0,yes\n");
    io::ColumnRoles roles;
    roles.id_col = "id";
    roles.x_cols = {"a", "b"};
    roles.class_col = "grp";
    roles.codification = {CodScheme::signed_pm1, 0};
    io::LoadedDataset ld = io::load_csv(tmp.file("d.csv"), roles);
    CHECK(ld.data.n() == 3);
    CHECK(ld.data.d() == 2);
    CHECK(ld.data.p() == 1);
    // lexicographic: "no" -> +1, "yes" -> -1
    CHECK(ld.data.s()(0, 0) == -1.0);
    CHECK(ld.data.s()(1, 0) == 1.0);
    CHECK(ld.class_counts.cols() == 2);
}

TEST_CASE("load_csv errors name the offending column or row") {
    TempDir tmp;
    write_file(tmp.file("d.csv"), "a,b\n1,2\n");
    io::ColumnRoles roles;
    roles.x_cols = {"a", "missing"};
    roles.s_cols = {"b"};
    try {
        io::load_csv(tmp.file("d.csv"), roles);
        FAIL("expected error");
    } catch (const std::exception& e) {
        CHECK(std::string(e.what()).find("missing") != std::string::npos);
    }

    write_file(tmp.file("bad.csv"), "a,b\n1,2\nx,3\n");
    roles.x_cols = {"a"};
    try {
        io::load_csv(tmp.file("bad.csv"), roles);
        FAIL("expected error");
    } catch (const std::exception& e) {
        CHECK(std::string(e.what()).find("line 3") != std::string::npos);
    }

    write_file(tmp.file("dup.csv"), "id,a,b\nu,1,2\nu,3,4\n");
    roles.id_col = "id";
    CHECK_THROWS(io::load_csv(tmp.file("dup.csv"), roles));
}

TEST_CASE("CRDC-shaped counts file loads with p = 6") {
    TempDir tmp;
    write_file(tmp.file("crdc.csv"),
               "school,lat,lon,hispanic,native_american,asian,pacific_islander,black,"
               "white\n"
               "A,40.7,-74.2,46,0,106,2,19,1021\n"
               "B,40.8,-74.1,52,0,91,0,7,877\n"
               "C,40.9,-74.0,28,0,70,0,4,526\n");
    io::ColumnRoles roles;
    roles.id_col = "school";
    roles.s_cols = {"hispanic", "native_american", "asian",
                    "pacific_islander", "black", "white"};
    roles.codification = {CodScheme::counts, 0};
    roles.lat_col = "lat";
    roles.lon_col = "lon";
    io::LoadedDataset ld = io::load_csv(tmp.file("crdc.csv"), roles);
    CHECK(ld.data.p() == 6);
    CHECK(ld.class_counts == ld.data.s());
    CHECK(ld.lat.size() == 3);
    // with no x columns declared, lat/lon double as the coordinates
    CHECK(ld.data.d() == 2);
    CHECK(ld.data.x()(0, 0) == doctest::Approx(40.7));

    // counts must be non-negative integers
    write_file(tmp.file("frac.csv"), "a,h\n1,0.5\n");
    io::ColumnRoles bad;
    bad.x_cols = {"a"};
    bad.s_cols = {"h"};
    bad.codification = {CodScheme::counts, 0};
    CHECK_THROWS(io::load_csv(tmp.file("frac.csv"), bad));
}

TEST_CASE("a single raw +/-1 protected column yields two indicator count columns") {
    TempDir tmp;
    write_file(tmp.file("pm.csv"), "a,s\n0,1\n1,-1\n2,1\n");
    io::ColumnRoles roles;
    roles.x_cols = {"a"};
    roles.s_cols = {"s"};
    io::LoadedDataset ld = io::load_csv(tmp.file("pm.csv"), roles);
    REQUIRE(ld.class_counts.cols() == 2);
    CHECK(ld.class_counts(0, 0) == 1.0);
    CHECK(ld.class_counts(1, 1) == 1.0);
    CHECK(ld.class_names == std::vector<std::string>{"+1", "-1"});

    // general real-valued protected attributes have no derivable counts
    write_file(tmp.file("real.csv"), "a,s\n0,0.3\n1,-0.7\n");
    io::LoadedDataset real = io::load_csv(tmp.file("real.csv"), roles);
    CHECK(real.class_counts.size() == 0);
}

TEST_CASE("dataset save/load round-trips exactly") {
    TempDir tmp;
    Rng rng(1);
    Eigen::MatrixXd x = oracles::random_matrix(rng, 9, 2, -5, 5);
    Eigen::MatrixXd s = oracles::random_matrix(rng, 9, 1, -1, 1);
    Dataset data(x, s);
    io::save_dataset_csv(tmp.file("d.csv"), data);
    io::ColumnRoles roles;
    roles.id_col = "id";
    roles.x_cols = {"x1", "x2"};
    roles.s_cols = {"s1"};
    io::LoadedDataset back = io::load_csv(tmp.file("d.csv"), roles);
    CHECK((back.data.x() - x).cwiseAbs().maxCoeff() == 0.0);
    CHECK((back.data.s() - s).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("dissimilarity matrix CSV and ARDM round-trips") {
    TempDir tmp;
    Rng rng(2);
    Eigen::MatrixXd pts = oracles::random_matrix(rng, 7, 2, -3, 3);
    Eigen::MatrixXd s = oracles::random_matrix(rng, 7, 1, -1, 1);
    DissimMatrix m = dissim_matrix(Dataset(pts, s), DissimParams::subtractive(0.7));
    m = prepare_for_mds(m);

    io::save_dissim_csv(tmp.file("m.csv"), m, {});
    DissimMatrix csv_back = io::load_dissim_csv(tmp.file("m.csv"));
    CHECK((csv_back.values - m.values).cwiseAbs().maxCoeff() == 0.0);

    io::save_dissim_ardm(tmp.file("m.ardm"), m);
    DissimMatrix bin_back = io::load_dissim_ardm(tmp.file("m.ardm"));
    CHECK(bin_back.values == m.values);  // bitwise
    CHECK(bin_back.shift_applied == m.shift_applied);
    CHECK(bin_back.sqrt_applied == m.sqrt_applied);

    write_file(tmp.file("junk.ardm"), "NOPE");
    CHECK_THROWS(io::load_dissim_ardm(tmp.file("junk.ardm")));
}

TEST_CASE("embedding and partition persistence") {
    TempDir tmp;
    Rng rng(3);
    Eigen::MatrixXd pts = oracles::random_matrix(rng, 8, 2, -2, 2);
    Embedding e = classical_mds(euclidean_matrix(pts), 2);
    io::save_embedding_csv(tmp.file("coords.csv"), e, {});
    io::save_embedding_json(tmp.file("coords.json"), e);
    Eigen::MatrixXd back = io::load_coords_csv(tmp.file("coords.csv"), nullptr);
    CHECK((back - e.coords).cwiseAbs().maxCoeff() == 0.0);

    Eigen::MatrixXd counts(4, 2);
    counts << 1, 0, 0, 1, 1, 0, 0, 1;
    Partition p = Partition::from_labels({0, 0, 1, 1}, 2, counts);
    io::save_partition_json(tmp.file("p.json"), p, "complete", 42, 1.5,
                            DissimParams::multiplicative(1, 2));
    Partition q = io::load_partition_json(tmp.file("p.json"));
    CHECK(q.labels == p.labels);
    CHECK(q.k == p.k);
    CHECK((q.proportions - p.proportions).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("dendrogram serialization uses negative leaf indices in CSV") {
    DissimMatrix m;
    m.values.resize(3, 3);
    m.values << 0, 1, 5, 1, 0, 5, 5, 5, 0;
    Dendrogram d = linkage(m, LinkageMethod::complete);
    TempDir tmp;
    io::save_dendrogram_csv(tmp.file("dend.csv"), d);
    io::CsvTable t = io::read_csv(tmp.file("dend.csv"));
    REQUIRE(t.rows.size() == 2);
    CHECK(t.rows[0][1] == "-1");
    CHECK(t.rows[0][2] == "-2");
    CHECK(t.rows[1][1] == "-3");
    CHECK(t.rows[1][2] == "1");  // cluster formed at step 1

    std::string js = io::dendrogram_to_json(d);
    CHECK(js.find("\"n_leaves\": 3") != std::string::npos);
}

TEST_CASE("geodesic distances") {
    DissimMatrix same = io::geodesic_matrix({10.0, 10.0}, {20.0, 20.0});
    CHECK(same.values(0, 1) == doctest::Approx(0.0));

    // antipodal points: half the circumference
    DissimMatrix anti = io::geodesic_matrix({0.0, 0.0}, {0.0, 180.0});
    CHECK(anti.values(0, 1) == doctest::Approx(M_PI * 6371.0088).epsilon(1e-9));

    // quarter circumference
    DissimMatrix quarter = io::geodesic_matrix({0.0, 0.0}, {0.0, 90.0});
    CHECK(quarter.values(0, 1) == doctest::Approx(M_PI * 6371.0088 / 2.0).epsilon(1e-9));

    CHECK_THROWS(io::geodesic_matrix({91.0}, {0.0}));
    CHECK_THROWS(io::geodesic_matrix({0.0}, {181.0}));
}

TEST_CASE("haversine symmetry and triangle inequality on random triples") {
    Rng rng(55);
    for (int trial = 0; trial < 40; ++trial) {
        std::vector<double> lat, lon;
        for (int i = 0; i < 3; ++i) {
            lat.push_back(rng.uniform(-90, 90));
            lon.push_back(rng.uniform(-180, 180));
        }
        DissimMatrix m = io::geodesic_matrix(lat, lon);
        CHECK(m.values(0, 1) == m.values(1, 0));
        CHECK(m.values(0, 2) <= m.values(0, 1) + m.values(1, 2) + 1e-9);
    }
}

TEST_CASE("config and grid files") {
    TempDir tmp;
    write_file(tmp.file("c.cfg"),
               "# a comment\n"
               "family = delta2   # trailing comment\n"
               "\n"
               "tau = 0.25\n");
    auto cfg = io::read_config(tmp.file("c.cfg"));
    CHECK(cfg.at("family") == "delta2");
    CHECK(cfg.at("tau") == "0.25");

    write_file(tmp.file("g.grid"),
               "family = delta2\n"
               "u = 0.5 1 2\n"
               "v = 10 20\n"
               "methods = complete kmeans_mds\n"
               "k = 2\n"
               "tau = 0\n"
               "seed = 9\n");
    io::GridFile g = io::load_grid_file(tmp.file("g.grid"), 1);
    CHECK(g.family == Family::delta2);
    CHECK(g.params.size() == 6);
    CHECK(g.param_desc[0] == "u=0.5 v=10");
    CHECK(g.methods.size() == 2);
    CHECK(g.seed == 9);
    CHECK(g.ks == std::vector<int>{2});

    write_file(tmp.file("grange.grid"),
               "family = delta3\nu = 1\nmethods = single\nk = 2 3 4\n");
    CHECK(io::load_grid_file(tmp.file("grange.grid"), 1).ks == std::vector<int>{2, 3, 4});

    write_file(tmp.file("g1.grid"),
               "family = delta1\n"
               "v0 = 0.5 1\n"
               "vtilde = mix\n"
               "vtilde.mix = 1 -1 ; -1 1\n"
               "methods = complete\n");
    io::GridFile g1 = io::load_grid_file(tmp.file("g1.grid"), 2);
    CHECK(g1.params.size() == 2);
    CHECK(g1.params[0].family == Family::delta1);
    CHECK(g1.params[0].v_matrix(0, 0) == doctest::Approx(0.5));
    CHECK(g1.params[1].v_matrix(0, 1) == doctest::Approx(-1.0));

    // asymmetric patterns are symmetrized so the dissimilarity stays symmetric
    write_file(tmp.file("g2.grid"),
               "family = delta1\n"
               "vtilde = a\n"
               "vtilde.a = 1 -1 ; 0 1\n"
               "methods = complete\n");
    io::GridFile g2 = io::load_grid_file(tmp.file("g2.grid"), 2);
    CHECK(g2.params[0].v_matrix(0, 1) == doctest::Approx(-0.5));
    CHECK(g2.params[0].v_matrix(1, 0) == doctest::Approx(-0.5));
}

TEST_CASE("synthetic generators are deterministic per seed") {
    Dataset a = make_gaussians(7);
    Dataset b = make_gaussians(7);
    Dataset c = make_gaussians(8);
    CHECK(a.n() == 200);
    CHECK(a.x() == b.x());
    CHECK(a.x() != c.x());
    // 50 per component, components 0/1 are s = +1
    int plus = 0;
    for (int i = 0; i < 200; ++i) plus += a.s()(i, 0) > 0 ? 1 : 0;
    CHECK(plus == 100);

    Dataset r1 = make_rings(5);
    Dataset r2 = make_rings(5);
    CHECK(r1.n() == 981);
    CHECK(r1.x() == r2.x());
    int circles = 0;
    for (int i = 0; i < r1.n(); ++i) circles += r1.s()(i, 0) == 1.0 ? 1 : 0;
    CHECK(circles == 241);  // 0.246 of 981, rounded
}

TEST_CASE("SVG scatter output") {
    Eigen::MatrixXd coords(4, 2);
    coords << 0, 0, 1, 0, 0, 1, 1, 1;
    std::vector<int> labels = {0, 0, 1, 1};
    std::vector<int> classes = {0, 1, 0, 1};
    std::string svg = scatter_svg(coords, labels, 2, classes, 2);
    // two circles (class 0) and two rects (class 1) among the data markers
    CHECK(svg.find("<circle") != std::string::npos);
    CHECK(svg.find("<rect") != std::string::npos);
    CHECK(svg.find("#1f77b4") != std::string::npos);
    CHECK(svg.find("#d62728") != std::string::npos);
    CHECK(svg.find("</svg>") != std::string::npos);

    CHECK_THROWS(scatter_svg(Eigen::MatrixXd::Zero(0, 2), {}, 1, {}, 1));
    CHECK_THROWS(scatter_svg(Eigen::MatrixXd::Zero(3, 3), labels, 2, classes, 2));

    // a full-size dataset renders one marker per point
    Dataset g = make_gaussians(3);
    std::vector<int> glabels(200, 0), gclasses(200);
    for (int i = 0; i < 200; ++i) {
        glabels[i] = i % 2;
        gclasses[i] = g.s()(i, 0) > 0 ? 0 : 1;
    }
    std::string big = scatter_svg(g.x(), glabels, 2, gclasses, 2);
    std::size_t markers = 0;
    for (std::size_t pos = 0; (pos = big.find("<circle", pos)) != std::string::npos; ++pos)
        ++markers;
    for (std::size_t pos = 0; (pos = big.find("<rect", pos)) != std::string::npos; ++pos)
        ++markers;
    // 200 data markers + legend markers + frame/background rects
    CHECK(markers >= 200);
}

TEST_CASE("atomic text writer creates parents and round-trips") {
    TempDir tmp;
    std::string path = tmp.file("sub/dir/file.txt");
    io::write_text_atomic(path, "hello\n");
    std::ifstream in(path);
    std::string content((std::istreambuf_iterator<char>(in)),
                        std::istreambuf_iterator<char>());
    CHECK(content == "hello\n");
    CHECK_FALSE(std::filesystem::exists(path + ".tmp"));
}

TEST_CASE("format_double survives a text round-trip") {
    Rng rng(6);
    for (int i = 0; i < 200; ++i) {
        double v = rng.normal() * std::pow(10.0, static_cast<double>(rng.index(20)) - 10.0);
        CHECK(std::stod(io::format_double(v)) == v);
    }
}
