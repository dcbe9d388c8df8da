#include <doctest.h>

#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <vector>

namespace {

struct RunResult {
    int exit_code = -1;
    std::string out;
    std::string err;
};

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

RunResult run_cli(const std::string& args) {
    const std::string out_path = "/tmp/rbcom_cli_out.txt";
    const std::string err_path = "/tmp/rbcom_cli_err.txt";
    std::string cmd = std::string(RBCOM_CLI_PATH) + " " + args + " >" +
                      out_path + " 2>" + err_path;
    int rc = std::system(cmd.c_str());
    RunResult r;
    r.exit_code = WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
    r.out = slurp(out_path);
    r.err = slurp(err_path);
    return r;
}

std::string preset(const char* name) {
    return std::string(RBCOM_PRESET_DIR) + "/" + name;
}

std::string write_config(const char* name, const std::string& body) {
    std::string path = std::string("/tmp/rbcom_cli_") + name + ".cfg";
    std::ofstream(path) << body;
    return path;
}

std::vector<std::string> lines_of(const std::string& text) {
    std::vector<std::string> lines;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) lines.push_back(line);
    return lines;
}

double value_after(const std::string& text, const std::string& key) {
    auto pos = text.find(key);
    REQUIRE(pos != std::string::npos);
    return std::strtod(text.c_str() + pos + key.size(), nullptr);
}

} // namespace

TEST_SUITE("cli") {

TEST_CASE("point reports the baseline budget") {
    auto r = run_cli("point " + preset("baseline.cfg"));
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("lasing = yes") != std::string::npos);
    CHECK(r.out.find("carrier_amplitude = 1.111990686909e+05 V/m") !=
          std::string::npos);
    CHECK(r.out.find("saturation_intensity = 2.901477922826e+07 W/m^2") !=
          std::string::npos);
    CHECK(r.out.find("capacity = 18.9263562717 bit/s/Hz") != std::string::npos);
}

TEST_CASE("point on a dead operating point") {
    auto cfg = write_config("below", "[modulation]\ndepth_m = 0.35\nbias_p = 0.65\n");
    auto r = run_cli("point " + cfg);
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("lasing = no") != std::string::npos);
    CHECK(r.out.find("carrier_amplitude = 0 V/m") != std::string::npos);
    CHECK(r.out.find("capacity = 0 bit/s/Hz") != std::string::npos);
}

TEST_CASE("config errors exit with code 2") {
    auto r = run_cli("point /definitely/not/here.cfg");
    CHECK(r.exit_code == 2);
    CHECK(r.err.find("config not found") != std::string::npos);

    auto cfg = write_config("invalid",
                            "[modulation]\ndepth_m = 0.6\nbias_p = 0.7\n");
    auto bad = run_cli("point " + cfg);
    CHECK(bad.exit_code == 2);
    CHECK(bad.err.find("bias_p + depth_m") != std::string::npos);

    CHECK(run_cli("").exit_code == 2); // subcommand required
}

TEST_CASE("sweep emits the fixed csv schema") {
    auto r = run_cli("sweep " + preset("depth_sweep.cfg") +
                     " --var depth_m --range 0.1:0.2:2");
    CHECK(r.exit_code == 0);
    auto rows = lines_of(r.out);
    REQUIRE(rows.size() == 3);
    CHECK(rows[0] == "depth_m,ac,capacity,i_sig,snr,lasing");
    CHECK(rows[1].substr(0, 4) == "0.1,");
    CHECK(rows[2].substr(0, 4) == "0.2,");

    auto again = run_cli("sweep " + preset("depth_sweep.cfg") +
                         " --var depth_m --range 0.1:0.2:2");
    CHECK(again.out == r.out); // deterministic

    auto led = run_cli("sweep " + preset("range_vs_led.cfg") +
                       " --var distance_d --range 1:10:2 --led");
    CHECK(led.exit_code == 0);
    auto led_rows = lines_of(led.out);
    REQUIRE(led_rows.size() == 3);
    CHECK(led_rows[0] == "distance_d,ac,capacity,i_sig,snr,lasing,led_capacity");
}

TEST_CASE("sweep usage errors exit with code 2") {
    CHECK(run_cli("sweep " + preset("depth_sweep.cfg") +
                  " --var bogus --range 0:1:5")
              .exit_code == 2);
    CHECK(run_cli("sweep " + preset("depth_sweep.cfg") +
                  " --var depth_m --range zoinks")
              .exit_code == 2);
    CHECK(run_cli("sweep " + preset("depth_sweep.cfg") +
                  " --var depth_m --range 0.2:0.1:5")
              .exit_code == 2);
}

TEST_CASE("threshold prints nine decimal places") {
    auto m = run_cli("threshold " + preset("baseline.cfg") + " --var depth_m");
    CHECK(m.exit_code == 0);
    CHECK(m.out == "0.311330501\n");

    auto eta = run_cli("threshold " + preset("baseline.cfg") + " --var eta_d");
    CHECK(eta.exit_code == 0);
    CHECK(eta.out == "0.726163728\n");

    auto pump = run_cli("threshold " + preset("baseline.cfg") +
                        " --var power_Pin");
    CHECK(pump.exit_code == 0);
    CHECK(pump.out == "11.234206312\n");
}

TEST_CASE("threshold without a sign change exits with code 1") {
    auto cfg = write_config("far", "[cavity]\ndistance_d = 1000\n");
    auto r = run_cli("threshold " + cfg + " --var distance_d");
    CHECK(r.exit_code == 1);
    CHECK(r.err.find("no sign change") != std::string::npos);
}

TEST_CASE("echo demo separates the loop from the chain") {
    auto r = run_cli("echo-demo " + preset("baseline.cfg") +
                     " --scaled --seed 11");
    CHECK(r.exit_code == 0);
    auto rows = lines_of(r.out);
    REQUIRE(rows.size() == 8193);
    CHECK(rows[0] == "t,x,g,ac,ye,chain");
    double chain_metric = value_after(r.err, "chain_metric=");
    double echo_metric = value_after(r.err, "echo_metric=");
    CHECK(chain_metric < 0.001);
    CHECK(echo_metric > chain_metric);

    auto again = run_cli("echo-demo " + preset("baseline.cfg") +
                         " --scaled --seed 11");
    CHECK(again.out == r.out); // byte-identical per seed
    auto other = run_cli("echo-demo " + preset("baseline.cfg") +
                         " --scaled --seed 12");
    CHECK(other.out != r.out);
}

TEST_CASE("echo demo with a constant source warns") {
    auto r = run_cli("echo-demo " + preset("baseline.cfg") +
                     " --scaled --source constant");
    CHECK(r.exit_code == 0);
    CHECK(r.err.find("undefined correlation") != std::string::npos);
    CHECK(lines_of(r.out).size() == 8193); // traces still emitted
}

TEST_CASE("dynamics trajectory and closing gain check") {
    auto r = run_cli("dynamics " + preset("baseline.cfg"));
    CHECK(r.exit_code == 0);
    auto rows = lines_of(r.out);
    REQUIRE(rows.size() > 100);
    CHECK(rows[0] == "t,n2,phi,g");
    CHECK(rows[1] == "0,0,0,1");
    double prev = -1.0;
    for (size_t i = 1; i < rows.size(); ++i) {
        double t = std::strtod(rows[i].c_str(), nullptr);
        CHECK(t > prev);
        prev = t;
    }
    CHECK(value_after(r.err, "rel_err=") < 1e-4);
}

TEST_CASE("dynamics with the pump off settles at unity gain") {
    auto cfg = write_config("dark", "[pump]\npower_Pin = 0\n");
    auto r = run_cli("dynamics " + cfg);
    CHECK(r.exit_code == 0);
    auto rows = lines_of(r.out);
    REQUIRE(!rows.empty());
    CHECK(rows.back().substr(rows.back().size() - 2) == ",1"); // g column
    CHECK(value_after(r.err, "dynamic_gain=") == 1.0);
}

} // TEST_SUITE
