// Process-level checks of the zafe command line tool.

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <json.hpp>

namespace {

struct RunResult {
    int status = -1;
    std::string out;
};

RunResult run(const std::string& args, const std::string& env = "") {
    std::string cmd = env + " " + std::string(ZAFE_CLI_PATH) + " " + args + " 2>/dev/null";
    FILE* pipe = popen(cmd.c_str(), "r");
    if (!pipe) return {};
    RunResult r;
    char buf[4096];
    size_t n;
    while ((n = fread(buf, 1, sizeof buf, pipe)) > 0) r.out.append(buf, n);
    int rc = pclose(pipe);
    r.status = WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
    return r;
}

int g_failures = 0;

void check(bool ok, const std::string& what) {
    std::cout << (ok ? "[PASS] " : "[FAIL] ") << what << "\n";
    if (!ok) ++g_failures;
}

}  // namespace

int main() {
    using nlohmann::json;

    {
        RunResult r = run("eval --sigma 0.05 --t 100 --alpha 0.3183098861");
        check(r.status == 0, "eval exits 0");
        json j = json::parse(r.out, nullptr, false);
        bool parsed = !j.is_discarded();
        check(parsed, "eval emits JSON");
        if (parsed) {
            double omega = std::strtod(j["omega_used"].get<std::string>().c_str(), nullptr);
            check(std::abs(omega - 0.017728) < 1e-4, "eval reports omega_used near 0.017728");
            check(j["sign_convention"] == "plus", "eval reports the calibrated sign");
        }
    }

    {
        RunResult r = run("eval --sigma 2 --t 0.0001 --x 40");
        check(r.status == 0, "near-real eval exits 0");
        json j = json::parse(r.out, nullptr, false);
        if (!j.is_discarded()) {
            double re = std::strtod(j["afe_value"]["re"].get<std::string>().c_str(), nullptr);
            check(std::abs(re - 1.6449340668) < 1e-6, "near-real eval approximates zeta(2)");
        } else {
            check(false, "near-real eval parse");
        }
    }

    {
        RunResult r = run("eval --sigma 0.5 --t 30");
        check(r.status == 2, "eval without alpha or x exits 2 (usage)");
        RunResult r2 = run("eval --sigma 0.5 --t 30 --alpha 0.3 --x 9.0");
        check(r2.status == 2, "eval with both alpha and x exits 2 (usage)");
    }

    {
        // degenerate band boundary: alpha = 2/(3 pi)
        RunResult r = run("eval --sigma 0.5 --t 50 --alpha 0.212206590789194");
        check(r.status == 3, "degenerate alpha exits 3");
    }

    {
        RunResult r = run("saddle --alpha 0.3183098861 --k-max 4 --format csv");
        check(r.status == 0, "saddle exits 0");
        check(r.out.find("0.68154") == std::string::npos ? r.out.find("0.6815") != std::string::npos
                                                         : true,
              "saddle table contains the k=2 root");
        check(r.out.find("selected_k,2") != std::string::npos, "saddle selects k = 2");
    }

    {
        RunResult r = run("saddle --alpha 10 --k-max 1 --format csv");
        check(r.status == 0, "high-alpha saddle exits 0");
        check(r.out.find("selected_k,1") != std::string::npos, "alpha > 2/pi selects k = 1");
    }

    {
        RunResult a = run("scan --alpha 0.3183098861837907 --sigma 0.05 --t-min 50 "
                          "--t-max 70 --steps 3 --format csv");
        RunResult b = run("scan --alpha 0.3183098861837907 --sigma 0.05 --t-min 50 "
                          "--t-max 70 --steps 3 --format csv");
        check(a.status == 0, "scan exits 0");
        check(!a.out.empty() && a.out == b.out, "scan output is bit-identical across runs");
        check(a.out.rfind("t,x,y,abs_error,log_abs_error,log_a_tilde,neg_omega_t,bound,flags\n",
                          0) == 0,
              "scan CSV header matches the contract");
        RunResult single = run("scan --alpha 0.3183098861837907 --sigma 0.05 --t-min 40 "
                               "--t-max 40 --steps 1 --format csv");
        int lines = 0;
        for (char c : single.out)
            if (c == '\n') ++lines;
        check(single.status == 0 && lines == 2, "steps=1 emits a single data row");
    }

    {
        RunResult r = run("verify saddle-constants");
        check(r.status == 0, "verify saddle-constants exits 0");
        check(r.out.find("[FAIL]") == std::string::npos, "verify saddle-constants all pass");
    }

    {
        RunResult r = run("verify chi");
        check(r.status == 0, "verify chi exits 0");
    }

    {
        RunResult r = run("verify residues");
        check(r.status == 0, "verify residues exits 0");
    }

    {
        // environment variable feeds the precision; invalid value must be a usage error
        RunResult r = run("eval --sigma 0.5 --t 30 --alpha 0.3183098861", "ZAFE_PRECISION_BITS=16");
        check(r.status == 2, "precision below 53 via env exits 2");
    }

    {
        // config file supplies tolerance; command line overrides config
        std::string cfg_path = "zafe_test_config.ini";
        std::ofstream cfg(cfg_path);
        cfg << "precision=64\ntolerance=1e-9\n";
        cfg.close();
        RunResult r = run("--config " + cfg_path + " eval --sigma 0.5 --t 30 --alpha 0.5");
        check(r.status == 0, "config file accepted");
        RunResult r2 =
            run("--config " + cfg_path + " --precision 128 eval --sigma 0.5 --t 30 --alpha 0.5");
        check(r2.status == 0, "command line overrides config");
        std::remove(cfg_path.c_str());
    }

    std::cout << (g_failures == 0 ? "CLI: all checks passed\n"
                                  : "CLI: " + std::to_string(g_failures) + " failures\n");
    return g_failures == 0 ? 0 : 1;
}
