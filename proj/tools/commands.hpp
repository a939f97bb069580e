#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "toricdef/base_space.hpp"

namespace toricdef::cli {

struct RunConfig {
    std::string command;
    std::string input;
    std::optional<std::int64_t> kmax;
    std::int64_t degree_bound = 3;
    IdealStrategy strategy = IdealStrategy::FacesBasis;
    std::optional<std::string> out;
    std::uint64_t seed = 1;
    bool maximal = false;
    std::optional<std::size_t> u0_edge;  // 1-based, as on the command line
};

/// Human-readable text followed by a "---data---" block of key=value lines.
struct Report {
    std::string text;
    std::vector<std::pair<std::string, std::string>> data;
    int exit_code = 0;

    void line(const std::string& s) { text += s + "\n"; }
    void put(const std::string& key, const std::string& value) { data.emplace_back(key, value); }
    std::string render() const;
};

Report run(const RunConfig& cfg);

Report cmd_analyze(const RunConfig& cfg);
Report cmd_t1(const RunConfig& cfg);
Report cmd_t2(const RunConfig& cfg);
Report cmd_base_ideal(const RunConfig& cfg);
Report cmd_family(const RunConfig& cfg);
Report cmd_minkowski(const RunConfig& cfg);
Report cmd_verify(const RunConfig& cfg);
Report cmd_export_cas(const RunConfig& cfg);

}  // namespace toricdef::cli
