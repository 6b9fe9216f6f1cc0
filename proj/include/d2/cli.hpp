#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

#include "d2/quantum.hpp"

namespace d2 {

using Json = nlohmann::ordered_json;

// bad job: the message starts with the JSON path of the offending value
struct InputError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

enum class CheckLevel { fast, full };

struct JobSpec {
    Field field;
    std::map<std::string, Algebra> algebras;
    Extension ext;
    std::string example;  // set when the job names a gallery item
    std::vector<std::string> tasks;
    uint64_t seed = 1;
    CheckLevel level = CheckLevel::full;
    int max_dim = 64;
};

// analyze, d2, bialgebroid, frobenius, hopf, weakhopf, qf; "all" expands to every task
const std::vector<std::string>& known_tasks();

JobSpec parse_job(const Json& j);
JobSpec parse_job_text(const std::string& text);
JobSpec parse_job_file(const std::string& path);

// structure-constant job for an extension, the form printed by `d2kit examples`
Json job_json(const Extension& e, const std::vector<std::string>& tasks, uint64_t seed);
Json gallery_job(const std::string& name, uint64_t seed = 1);

struct CheckRow {
    std::string task, name;
    bool ok = true;
    std::string where;
};
struct Refusal {
    std::string task, reason;
};

struct Report {
    std::string extension, field, level;
    uint64_t seed = 1;
    std::vector<std::string> tasks;
    Json dims = Json::object(), flags = Json::object(), witnesses = Json::object();
    std::vector<CheckRow> checks;
    std::vector<Refusal> refusals;
    std::vector<std::pair<std::string, double>> timing_ms;
    bool alarm() const;
    // 0 all verified, 1 refusals, 2 a verification failed
    int exit_code() const;
};
Report run_job(const JobSpec& job);

// timing is left out of JSON unless asked for, so that reports are reproducible byte for byte
std::string render_json(const Report& r, bool timing = false);
std::string render_markdown(const Report& r, bool timing = false);

}  // namespace d2
