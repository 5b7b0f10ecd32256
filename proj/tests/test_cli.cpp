#include <doctest.h>

#include <sstream>

#include "cli.hpp"
#include "nfpr/io.hpp"
#include "nfpr/metrics.hpp"
#include "oracle.hpp"
#include "test_util.hpp"

using namespace nfpr;

namespace {

struct Result {
    int code;
    std::string out, err;
};

Result run(std::vector<std::string> args) {
    args.insert(args.begin(), "nfpr");
    std::ostringstream out, err;
    const int code = cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

std::vector<std::vector<std::string>> read_csv_rows(const std::filesystem::path& p) {
    std::istringstream in(testutil::read_bytes(p));
    std::vector<std::vector<std::string>> rows;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        std::vector<std::string> cells;
        std::stringstream ls(line);
        std::string cell;
        while (std::getline(ls, cell, ',')) cells.push_back(cell);
        rows.push_back(cells);
    }
    return rows;
}

}  // namespace

TEST_CASE("default sidecar path replaces the extension") {
    CHECK(cli::default_sidecar_path("a/b/noisy.pgm") == "a/b/noisy.nfprf");
    CHECK(cli::default_sidecar_path("plain") == "plain.nfprf");
}

TEST_CASE("corrupt") {
    const auto dir = testutil::scratch_dir("cli_corrupt");
    const Image clean = oracle::random_image(256, 256, 1, true);
    save_pgm(clean, dir / "clean.pgm");
    const std::string in = (dir / "clean.pgm").string();

    SUBCASE("zero noise sidecar equals the input") {
        const auto r = run({"corrupt", in, (dir / "z.pgm").string(), "--sigma-noise", "0", "--seed", "3"});
        REQUIRE(r.code == 0);
        CHECK(load_sidecar(dir / "z.nfprf") == clean);
        CHECK(load_pgm(dir / "z.pgm") == clean);
    }
    SUBCASE("same seed gives byte-identical sidecars") {
        REQUIRE(run({"corrupt", in, (dir / "a.pgm").string(), "--sigma-noise", "25", "--seed", "11"}).code == 0);
        REQUIRE(run({"corrupt", in, (dir / "b.pgm").string(), "--sigma-noise", "25", "--seed", "11"}).code == 0);
        CHECK(testutil::read_bytes(dir / "a.nfprf") == testutil::read_bytes(dir / "b.nfprf"));
    }
    SUBCASE("noise energy matches sigma^2") {
        REQUIRE(run({"corrupt", in, (dir / "n.pgm").string(), "--sigma-noise", "100", "--seed", "1",
                     "--sidecar", (dir / "custom.bin").string()})
                    .code == 0);
        const double e = mse(load_sidecar(dir / "custom.bin"), clean);
        CHECK(std::abs(e - 10000.0) <= 300.0);
    }
    SUBCASE("I/O failure is exit 1, usage errors exit 2") {
        CHECK(run({"corrupt", (dir / "missing.pgm").string(), (dir / "x.pgm").string(), "--sigma-noise", "1"}).code ==
              1);
        CHECK(run({"corrupt", in, (dir / "x.pgm").string()}).code == 2);
        CHECK(run({"corrupt", in, (dir / "x.pgm").string(), "--sigma-noise", "-4"}).code == 2);
        CHECK(run({"frobnicate"}).code == 2);
        CHECK(run({}).code == 2);
    }
}

TEST_CASE("denoise") {
    const auto dir = testutil::scratch_dir("cli_denoise");
    const std::vector<std::string> small = {"--sigma", "150", "--lambda", "15", "--kmax", "3", "--rho-search", "3",
                                            "--rho-sim", "2", "--nset", "8"};
    auto with = [&](std::vector<std::string> head) {
        head.insert(head.end(), small.begin(), small.end());
        return head;
    };

    SUBCASE("constant input is returned unchanged") {
        save_pgm(Image(20, 16, 90.0), dir / "flat.pgm");
        const auto r = run(with({"denoise", (dir / "flat.pgm").string(), (dir / "out.pgm").string(), "--clean",
                                 (dir / "flat.pgm").string()}));
        REQUIRE(r.code == 0);
        CHECK(load_sidecar(dir / "out.nfprf") == Image(20, 16, 90.0));
        CHECK(r.out.find("mse (unclamped): 0\n") != std::string::npos);
        CHECK(r.out.find("time_s: ") != std::string::npos);
    }
    SUBCASE("identical flags give byte-identical sidecars") {
        save_sidecar(oracle::random_image(24, 24, 8), dir / "noisy.nfprf");
        REQUIRE(run(with({"denoise", (dir / "noisy.nfprf").string(), (dir / "a.pgm").string()})).code == 0);
        REQUIRE(run(with({"denoise", (dir / "noisy.nfprf").string(), (dir / "b.pgm").string(), "--threads", "2"}))
                    .code == 0);
        CHECK(testutil::read_bytes(dir / "a.nfprf") == testutil::read_bytes(dir / "b.nfprf"));
    }
    SUBCASE("literal step scale is selectable") {
        save_sidecar(oracle::random_image(12, 12, 9), dir / "noisy.nfprf");
        CHECK(run(with({"denoise", (dir / "noisy.nfprf").string(), (dir / "l.pgm").string(), "--step-scale",
                        "literal"}))
                  .code == 0);
        CHECK(run(with({"denoise", (dir / "noisy.nfprf").string(), (dir / "l.pgm").string(), "--step-scale", "bogus"}))
                  .code == 2);
    }
    SUBCASE("set dump lists pixel, rank, neighbour and both distances") {
        save_sidecar(oracle::random_image(5, 4, 2), dir / "tiny.nfprf");
        REQUIRE(run(with({"denoise", (dir / "tiny.nfprf").string(), (dir / "t.pgm").string(), "--dump-sets",
                          (dir / "sets.csv").string()}))
                    .code == 0);
        const auto rows = read_csv_rows(dir / "sets.csv");
        REQUIRE(rows.size() == 1 + 20 * 8);
        CHECK(rows[0] == std::vector<std::string>{"pixel", "rank", "neighbor", "raw_distance", "rescaled_distance"});
        CHECK(rows[1][0] == "0");
        CHECK(rows[1][2] == "0");  // self-match first
    }
    SUBCASE("invalid parameters are usage errors") {
        save_pgm(Image(8, 8, 1.0), dir / "f.pgm");
        const std::string f = (dir / "f.pgm").string(), o = (dir / "o.pgm").string();
        CHECK(run({"denoise", f, o, "--sigma", "150", "--lambda", "15", "--kmax", "0"}).code == 2);
        CHECK(run({"denoise", f, o, "--sigma", "150", "--lambda", "15", "--kmax", "2", "--tau", "1.5"}).code == 2);
        CHECK(run({"denoise", f, o, "--sigma", "150", "--kmax", "2"}).code == 2);
        CHECK(run({"denoise", f, o, "--sigma", "abc", "--lambda", "15", "--kmax", "2"}).code == 2);
    }
}

TEST_CASE("mse and frc subcommands") {
    const auto dir = testutil::scratch_dir("cli_pair");
    save_sidecar(Image(2, 1, {0, 0}), dir / "a.nfprf");
    save_sidecar(Image(2, 1, {3, 4}), dir / "b.nfprf");
    save_pgm(Image(2, 1, {3, 4}), dir / "b.pgm");

    const auto m = run({"mse", (dir / "a.nfprf").string(), (dir / "b.nfprf").string()});
    CHECK(m.code == 0);
    CHECK(m.out == "mse (unclamped): 12.5\n");
    CHECK(run({"mse", (dir / "a.nfprf").string(), (dir / "b.pgm").string()}).out == "mse (pgm): 12.5\n");

    const Image x = oracle::random_image(64, 64, 5);
    save_sidecar(x, dir / "x.nfprf");
    save_sidecar(oracle::random_image(64, 32, 5), dir / "y.nfprf");
    const std::string xp = (dir / "x.nfprf").string();

    SUBCASE("a == b gives unit correlation on 64 rings") {
        REQUIRE(run({"frc", xp, xp, (dir / "frc.csv").string()}).code == 0);
        const auto rows = read_csv_rows(dir / "frc.csv");
        REQUIRE(rows.size() == 65);
        CHECK(rows[0] == std::vector<std::string>{"ring_index", "freq_center", "correlation", "n_bins"});
        for (std::size_t r = 1; r < rows.size(); ++r) {
            REQUIRE(rows[r].size() == 4);
            if (std::stoul(rows[r][3]) == 0) continue;
            CHECK(std::stod(rows[r][2]) == doctest::Approx(1.0).epsilon(1e-9));
        }
    }
    SUBCASE("levels flag and stdout output") {
        const auto r = run({"frc", xp, xp, "--levels", "8"});
        REQUIRE(r.code == 0);
        CHECK(std::count(r.out.begin(), r.out.end(), '\n') == 2 + 8);
    }
    SUBCASE("dimension mismatch is a usage error") {
        CHECK(run({"frc", xp, (dir / "y.nfprf").string(), (dir / "bad.csv").string()}).code == 2);
        CHECK(run({"mse", xp, (dir / "y.nfprf").string()}).code == 2);
        CHECK(run({"frc", xp, xp, "--levels", "0"}).code == 2);
    }
}
