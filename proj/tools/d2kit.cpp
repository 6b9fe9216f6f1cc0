#include <fstream>
#include <iostream>

#include "CLI11.hpp"

#include "d2/cli.hpp"
#include "d2/gallery.hpp"

using namespace d2;

namespace {

struct RunOptions {
    std::string job;
    std::optional<uint64_t> seed;
    std::string format = "json";
    std::string level;
    std::optional<int> max_dim;
    bool timing = false;
};

int run(const RunOptions& o, bool verify) {
    JobSpec job;
    try {
        std::ifstream in(o.job);
        if (!in) throw InputError(o.job + ": cannot read");
        std::stringstream ss;
        ss << in.rdbuf();
        Json j;
        try {
            j = Json::parse(ss.str());
        } catch (const nlohmann::json::parse_error& ex) {
            throw InputError(std::string("$: not valid JSON: ") + ex.what());
        }
        if (o.seed) j["seed"] = *o.seed;
        if (o.max_dim) j["maxDim"] = *o.max_dim;
        if (!o.level.empty()) j["checkLevel"] = o.level;
        if (verify) {
            j["checkLevel"] = "full";
            if (!j.contains("tasks")) j["tasks"] = Json::array({"all"});
        }
        job = parse_job(j);
    } catch (const InputError& ex) {
        std::cerr << "d2kit: input error: " << ex.what() << "\n";
        return 3;
    }
    Report r = run_job(job);
    std::cout << (o.format == "md" ? render_markdown(r, o.timing) : render_json(r, o.timing));
    int code = r.exit_code();
    if (code == 2) {
        for (const auto& c : r.checks)
            if (!c.ok) std::cerr << "d2kit: verification failed: [" << c.task << "] " << c.name << " at " << c.where << "\n";
    }
    return code;
}

void add_run_options(CLI::App* cmd, RunOptions& o, bool verify) {
    cmd->add_option("job", o.job, "job file (JSON)")->required();
    cmd->add_option("--seed", o.seed, "seed for searches and random gallery items");
    cmd->add_option("--format", o.format, "report format")->check(CLI::IsMember({"json", "md"}));
    if (!verify) cmd->add_option("--check-level", o.level, "fast or full")->check(CLI::IsMember({"fast", "full"}));
    cmd->add_option("--max-dim", o.max_dim, "dimension cap for algebras")->check(CLI::PositiveNumber);
    cmd->add_flag("--timing", o.timing, "include per-task timing in the report");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"dual bialgebroids for depth two extensions"};
    app.require_subcommand(1);
    RunOptions analyze, verify;
    auto* a = app.add_subcommand("analyze", "run the tasks of a job and print a report");
    add_run_options(a, analyze, false);
    auto* v = app.add_subcommand("verify", "analyze with full checks; all tasks unless the job lists some");
    add_run_options(v, verify, true);
    std::string name;
    uint64_t seed = 1;
    auto* ex = app.add_subcommand("examples", "list the gallery, or print the job for one item");
    ex->add_option("name", name, "gallery item");
    ex->add_option("--seed", seed, "seed for the random item");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 3;
    }
    if (*a) return run(analyze, false);
    if (*v) return run(verify, true);
    if (name.empty()) {
        for (const auto& g : gallery()) std::cout << g.name << "  " << g.description << "\n";
        return 0;
    }
    try {
        std::cout << gallery_job(name, seed).dump(2) << "\n";
    } catch (const InputError& e) {
        std::cerr << "d2kit: " << e.what() << "\n";
        return 3;
    }
    return 0;
}
