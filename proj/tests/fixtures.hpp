#pragma once

#include "lyap/report.hpp"

#include <string>

inline std::string data_path(const std::string& name) { return std::string(LYAP_DATA_DIR) + "/" + name; }

inline lyap::SystemSpec load_fixture(const std::string& name)
{
    return lyap::read_system(data_path(name));
}

// |a - b| <= tol
inline bool near(const lyap::Real& a, const lyap::Real& b, const lyap::Real& tol) { return abs(a - b) <= tol; }

#include <cstdio>
#include <sys/wait.h>

struct RunResult {
    int code = -1;
    std::string out;
};

// Runs lyapcert with `args`; stdout captured, stderr folded in when `merge`.
inline RunResult run_cli(const std::string& args, bool merge = false)
{
    std::string cmd = std::string(LYAPCERT_PATH) + " " + args + (merge ? " 2>&1" : " 2>/dev/null");
    RunResult r;
    FILE* p = popen(cmd.c_str(), "r");
    if (!p)
        return r;
    char buf[4096];
    std::size_t k;
    while ((k = fread(buf, 1, sizeof buf, p)) > 0)
        r.out.append(buf, k);
    int st = pclose(p);
    r.code = WIFEXITED(st) ? WEXITSTATUS(st) : -1;
    return r;
}
