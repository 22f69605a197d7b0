#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "rvhedge/io.hpp"

#include <filesystem>
#include <fstream>
#include <string>
#include <unistd.h>

using namespace rvhedge;
namespace fs = std::filesystem;

namespace {

struct TempDir {
    fs::path path;
    TempDir() {
        path = fs::temp_directory_path() /
               fs::path("rvhedge_io_test_" + std::to_string(::getpid()));
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
    fs::path file(const std::string& name) const { return path / name; }
};

fs::path write_file(const TempDir& dir, const std::string& name, const std::string& body) {
    const fs::path p = dir.file(name);
    std::ofstream out(p);
    out << body;
    return p;
}

} // namespace

TEST_CASE("double formatting is stable and trims noise") {
    CHECK(format_double(0.1) == "0.1");
    CHECK(format_double(1.0) == "1");
    CHECK(format_double(-0.25) == "-0.25");
    CHECK(format_double(0.0) == "0");
    CHECK(format_double(1234567.5) == "1234567.5");
    CHECK(format_double(1e-8) == "1e-08");
    // 12 significant digits, shortest form
    CHECK(format_double(1.0 / 3.0) == "0.333333333333");
}

TEST_CASE("vix csv round trip") {
    TempDir dir;
    const fs::path p = write_file(dir, "vix.csv",
                                  "date,close\n"
                                  "2015-01-05,17.5\n"
                                  "2015-01-06,18.25\n"
                                  "2015-01-07,16.9\n");
    const VixIngest in = ingest_vix_csv(p);
    CHECK(in.warnings.empty());
    REQUIRE(in.series.size() == 3);
    CHECK(in.series.kind() == SeriesKind::VixLevel);
    CHECK(in.series.value(1) == 18.25);
    CHECK(format_date(in.series.date(2)) == "2015-01-07");

    const fs::path out = dir.file("echo.csv");
    write_vix_csv(out, in.series);
    const VixIngest again = ingest_vix_csv(out);
    CHECK(again.series.dates() == in.series.dates());
    CHECK(again.series.values() == in.series.values());
}

TEST_CASE("vix csv tolerates windows line endings and reorders rows") {
    TempDir dir;
    const fs::path p = write_file(dir, "vix.csv",
                                  "date,close\r\n"
                                  "2015-01-06,18.25\r\n"
                                  "2015-01-05,17.5\r\n");
    const VixIngest in = ingest_vix_csv(p);
    REQUIRE(in.series.size() == 2);
    CHECK(in.series.date(0) < in.series.date(1));
    REQUIRE(in.warnings.size() == 1);
    CHECK(in.warnings[0].find("sorted") != std::string::npos);
}

TEST_CASE("vix csv hard errors carry line numbers") {
    TempDir dir;
    CHECK_THROWS_WITH_AS(ingest_vix_csv(dir.file("absent.csv")),
                         doctest::Contains("absent.csv"), std::runtime_error);

    const fs::path bad_header = write_file(dir, "h.csv", "day,close\n2015-01-05,17.5\n");
    CHECK_THROWS_AS(ingest_vix_csv(bad_header), std::invalid_argument);

    const fs::path dup = write_file(dir, "dup.csv",
                                    "date,close\n2015-01-05,17.5\n2015-01-05,18.0\n");
    CHECK_THROWS_AS(ingest_vix_csv(dup), std::invalid_argument);

    const fs::path neg = write_file(dir, "neg.csv", "date,close\n2015-01-05,-2\n");
    CHECK_THROWS_AS(ingest_vix_csv(neg), std::invalid_argument);

    const fs::path short_row = write_file(dir, "s.csv", "date,close\n2015-01-05\n");
    CHECK_THROWS_AS(ingest_vix_csv(short_row), std::invalid_argument);
}

TEST_CASE("forward variance csv round trip and unit guard") {
    TempDir dir;
    const fs::path p = write_file(dir, "fvs.csv",
                                  "date,maturity_date,forward_variance\n"
                                  "2015-01-05,2015-02-18,0.0412\n"
                                  "2015-01-05,2015-03-18,0.0431\n"
                                  "2015-01-06,2015-02-18,0.0405\n");
    const FvsIngest in = ingest_fvs_csv(p);
    CHECK(in.warnings.empty());
    CHECK(in.store.size() == 3);
    CHECK(in.store.lookup(parse_date("2015-01-06"), parse_date("2015-02-18")).value() == 0.0405);

    const fs::path out = dir.file("echo.csv");
    write_fvs_csv(out, in.store);
    const FvsIngest again = ingest_fvs_csv(out);
    CHECK(again.store.entries().size() == in.store.entries().size());
    CHECK(again.store.lookup(parse_date("2015-01-05"), parse_date("2015-03-18")).value() ==
          0.0431);

    // a vol-points value like 20 is a unit error, not a variance
    const fs::path units = write_file(dir, "u.csv",
                                      "date,maturity_date,forward_variance\n"
                                      "2015-01-05,2015-02-18,20\n");
    CHECK_THROWS_WITH_AS(ingest_fvs_csv(units), doctest::Contains("check units"),
                         std::invalid_argument);

    const fs::path stale = write_file(dir, "stale.csv",
                                      "date,maturity_date,forward_variance\n"
                                      "2015-03-05,2015-02-18,0.04\n");
    CHECK_THROWS_AS(ingest_fvs_csv(stale), std::invalid_argument);
}

TEST_CASE("option grid csv ingest groups and sorts") {
    TempDir dir;
    const fs::path p = write_file(dir, "opts.csv",
                                  "date,maturity_date,strike,call_price,put_price\n"
                                  "2015-01-05,2015-02-18,20,2.0,1.5\n"
                                  "2015-01-05,2015-02-18,18,3.1,0.6\n"
                                  "2015-01-05,2015-02-18,22,1.2,2.7\n"
                                  "2015-01-05,2015-03-18,20,2.6,2.1\n");
    const auto grids = ingest_options_csv(p);
    REQUIRE(grids.size() == 2);
    CHECK(grids[0].maturity == parse_date("2015-02-18"));
    CHECK(grids[0].strikes == std::vector<double>{18.0, 20.0, 22.0});
    CHECK(grids[0].call_prices == std::vector<double>{3.1, 2.0, 1.2});
    // spot = median of K + C - P = {20.5, 20.5, 20.5}
    CHECK(grids[0].spot == doctest::Approx(20.5).epsilon(1e-14));
    CHECK(grids[1].strikes.size() == 1);

    const fs::path dup = write_file(dir, "dup.csv",
                                    "date,maturity_date,strike,call_price,put_price\n"
                                    "2015-01-05,2015-02-18,20,2.0,1.5\n"
                                    "2015-01-05,2015-02-18,20,2.1,1.4\n");
    CHECK_THROWS_AS(ingest_options_csv(dup), std::invalid_argument);
}
