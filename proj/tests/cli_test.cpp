// End-to-end tests for the command line tool. Each test spawns the real
// binary (path injected at compile time), captures stdout/stderr and checks
// exit codes and the files written to the output directory.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <sys/wait.h>
#include <unistd.h>

namespace fs = std::filesystem;

namespace {

struct RunResult {
    int exit_code = -1;
    std::string out;
    std::string err;
};

std::string slurp(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    REQUIRE_MESSAGE(bool(in), "cannot open ", path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

struct TempDir {
    fs::path path;
    TempDir() {
        path = fs::temp_directory_path() /
               ("rvhedge_cli_" + std::to_string(::getpid()) + "_" +
                std::to_string(counter++));
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
    static inline int counter = 0;
};

RunResult run_cli(const std::string& args, const fs::path& scratch) {
    const fs::path out_file = scratch / "stdout.txt";
    const fs::path err_file = scratch / "stderr.txt";
    const std::string cmd = std::string(RVHEDGE_CLI_PATH) + " " + args + " >" +
                            out_file.string() + " 2>" + err_file.string();
    const int status = std::system(cmd.c_str());
    RunResult res;
    res.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    res.out = slurp(out_file);
    res.err = slurp(err_file);
    return res;
}

} // namespace

TEST_CASE("usage errors exit with code 2") {
    TempDir tmp;
    CHECK(run_cli("", tmp.path).exit_code == 2);
    CHECK(run_cli("frobnicate", tmp.path).exit_code == 2);
    CHECK(run_cli("backtest", tmp.path).exit_code == 2); // missing required options
    CHECK(run_cli("--help", tmp.path).exit_code == 0);
}

TEST_CASE("missing input file exits with code 1 and a json diagnostic") {
    TempDir tmp;
    const RunResult res =
        run_cli("estimate-hurst --vix " + (tmp.path / "absent.csv").string() + " --out " +
                    (tmp.path / "out").string(),
                tmp.path);
    CHECK(res.exit_code == 1);
    CHECK(res.err.find("\"error\"") != std::string::npos);
    CHECK(res.err.find("absent.csv") != std::string::npos);
}

TEST_CASE("synthesize, backtest and replay pipeline") {
    TempDir tmp;
    const fs::path synth = tmp.path / "synth";
    const std::string common = "--window 20 --hedge-days 3 --maturity-days 5";

    const RunResult syn = run_cli("synthesize --days 140 --seed 5 " + common + " --out " +
                                      synth.string(),
                                  tmp.path);
    CAPTURE(syn.err);
    REQUIRE(syn.exit_code == 0);
    REQUIRE(fs::exists(synth / "vix.csv"));
    REQUIRE(fs::exists(synth / "fvs.csv"));
    REQUIRE(fs::exists(synth / "manifest.json"));
    CHECK(syn.out.find("\"n_days\": 140") != std::string::npos);

    const std::string vix = (synth / "vix.csv").string();
    const std::string fvs = (synth / "fvs.csv").string();

    // single-model backtest with everything pinned so the run is cheap
    const fs::path bt = tmp.path / "bt";
    const RunResult back = run_cli("backtest --model rfsv --vix " + vix + " --fvs " + fvs +
                                       " " + common + " --hurst 0.377 --sigma 0.5 --out " +
                                       bt.string(),
                                   tmp.path);
    CAPTURE(back.err);
    REQUIRE(back.exit_code == 0);
    REQUIRE(fs::exists(bt / "summary.json"));
    REQUIRE(fs::exists(bt / "records.csv"));
    CHECK(back.out.find("\"reduction_factor\"") != std::string::npos);

    const std::string records = slurp(bt / "records.csv");
    CHECK(records.rfind("start_date,model,pnl_hedged,pnl_unhedged\n", 0) == 0);
    CHECK(records.find(",rfsv,") != std::string::npos);

    // replaying the recorded manifest into a fresh directory reproduces the
    // outputs byte for byte
    const fs::path replayed = tmp.path / "replayed";
    const RunResult rep = run_cli("replay " + (bt / "manifest.json").string() + " --out " +
                                      replayed.string(),
                                  tmp.path);
    CAPTURE(rep.err);
    REQUIRE(rep.exit_code == 0);
    CHECK(slurp(replayed / "summary.json") == slurp(bt / "summary.json"));
    CHECK(slurp(replayed / "records.csv") == slurp(bt / "records.csv"));
}

TEST_CASE("estimate-hurst writes the fit table") {
    TempDir tmp;
    const fs::path synth = tmp.path / "synth";
    REQUIRE(run_cli("synthesize --days 600 --seed 9 --out " + synth.string(), tmp.path)
                .exit_code == 0);

    const fs::path out = tmp.path / "fit";
    const RunResult res = run_cli("estimate-hurst --vix " + (synth / "vix.csv").string() +
                                      " --lags-max 20 --out " + out.string(),
                                  tmp.path);
    CAPTURE(res.err);
    REQUIRE(res.exit_code == 0);
    CHECK(res.out.find("\"hurst\"") != std::string::npos);
    CHECK(res.out.find("\"first_half\"") != std::string::npos);
    const std::string fit = slurp(out / "hurst_fit.csv");
    CHECK(fit.rfind("delta_days,m2,fit_m2\n", 0) == 0);
    // one row per lag plus the header
    CHECK(std::count(fit.begin(), fit.end(), '\n') == 21);
}

TEST_CASE("sweep-h reports the argmin over the grid") {
    TempDir tmp;
    const fs::path synth = tmp.path / "synth";
    const std::string common = "--window 20 --hedge-days 3 --maturity-days 5";
    REQUIRE(run_cli("synthesize --days 120 --seed 11 " + common + " --out " + synth.string(),
                    tmp.path)
                .exit_code == 0);

    const fs::path out = tmp.path / "sweep";
    const RunResult res =
        run_cli("sweep-h --vix " + (synth / "vix.csv").string() + " --fvs " +
                    (synth / "fvs.csv").string() + " " + common +
                    " --sigma 0.5 --h-from 0.3 --h-to 0.5 --h-step 0.1 --out " + out.string(),
                tmp.path);
    CAPTURE(res.err);
    REQUIRE(res.exit_code == 0);
    CHECK(res.out.find("\"n_points\": 3") != std::string::npos);
    const std::string csv = slurp(out / "hurst_rmse.csv");
    CHECK(csv.rfind("hurst,rmse_hedged\n", 0) == 0);
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 4);
}

TEST_CASE("replicate prices a synthetic grid and extracts curves") {
    TempDir tmp;
    // two maturities of lognormal quotes so a curve can be extracted
    std::ostringstream csv;
    csv << "date,maturity_date,strike,call_price,put_price\n";
    const double s0 = 1.0;
    for (const auto& [mat, vol_sq_t] :
         {std::pair<const char*, double>{"2015-07-01", 0.005}, {"2015-10-01", 0.0125}}) {
        const double sd = std::sqrt(vol_sq_t);
        for (double k = 0.4; k <= 2.5 + 1e-9; k += 0.01) {
            const double d1 = std::log(s0 / k) / sd + 0.5 * sd;
            const double call = s0 * 0.5 * std::erfc(-d1 / std::sqrt(2.0)) -
                                k * 0.5 * std::erfc(-(d1 - sd) / std::sqrt(2.0));
            const double put = std::max(call - s0 + k, 0.0);
            csv << "2015-06-01," << mat << "," << k << "," << call << "," << put << "\n";
        }
    }
    const fs::path grid = tmp.path / "grid.csv";
    std::ofstream(grid) << csv.str();

    const fs::path out = tmp.path / "rep";
    const RunResult res =
        run_cli("replicate --grid " + grid.string() + " --out " + out.string(), tmp.path);
    CAPTURE(res.err);
    REQUIRE(res.exit_code == 0);
    CHECK(res.out.find("\"n_grids\": 2") != std::string::npos);
    CHECK(res.out.find("\"n_curves\": 1") != std::string::npos);
    REQUIRE(fs::exists(out / "replication.csv"));
    REQUIRE(fs::exists(out / "curves.csv"));

    // the first replication value must sit close to the quoted total variance
    std::ifstream rep(out / "replication.csv");
    std::string line;
    std::getline(rep, line); // header
    std::getline(rep, line); // date,maturity_date,spot,value,tail_warning
    std::istringstream fields(line);
    std::string field;
    for (int i = 0; i < 4; ++i) std::getline(fields, field, ',');
    CHECK(std::stod(field) == doctest::Approx(0.005).epsilon(0.02));
}

TEST_CASE("simulate ueq prints a regression summary") {
    TempDir tmp;
    const fs::path out = tmp.path / "sim";
    const RunResult res = run_cli(
        "simulate --experiment ueq --kernel-hurst 0.3 --maturity 0.05 --dt 0.0005 "
        "--steps 32 --paths 50 --seed 7 --out " +
            out.string(),
        tmp.path);
    CAPTURE(res.err);
    REQUIRE(res.exit_code == 0);
    CHECK(res.out.find("\"slope\"") != std::string::npos);
    CHECK(res.out.find("\"r_squared\"") != std::string::npos);
    REQUIRE(fs::exists(out / "summary.json"));
}
