// gkfuse: run validation, fusion, product and normalization requests from an
// instance file and print a JSON report.
//
// Exit codes: 0 everything as expected, 1 a certificate failure, an
// unexpected outcome or a golden mismatch, 2 a parse or reference error.

#include "gk/corpus.hpp"
#include "gk/io.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

namespace fs = std::filesystem;

namespace {

struct Common {
    std::string file;
    bool trace = false;
    unsigned jobs = 1;
    std::string golden;
    bool update_golden = false;
    std::string output;
};

std::string read_file(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const fs::path& p, const std::string& text) {
    std::ofstream out(p, std::ios::binary);
    out << text;
    if (!out) throw std::runtime_error("cannot write " + p.string());
}

// Reports are compared against <golden>/<stem>.<command>.json.
int check_golden(const Common& c, const std::string& command, const std::string& report) {
    const fs::path path = fs::path(c.golden) / (fs::path(c.file).stem().string() + "." + command + ".json");
    if (c.update_golden) {
        fs::create_directories(path.parent_path());
        write_file(path, report);
        std::cerr << "wrote " << path.string() << "\n";
        return 0;
    }
    if (!fs::exists(path)) {
        std::cerr << "golden file missing: " << path.string() << "\n";
        return 1;
    }
    const std::string expected = read_file(path);
    if (expected == report) return 0;
    std::istringstream a(expected), b(report);
    std::string la, lb;
    for (std::size_t line = 1;; ++line) {
        const bool ha = static_cast<bool>(std::getline(a, la)), hb = static_cast<bool>(std::getline(b, lb));
        if (!ha && !hb) break;
        if (!ha || !hb || la != lb) {
            std::cerr << "golden mismatch in " << path.string() << " at line " << line << "\n"
                      << "  expected: " << (ha ? la : "<end of file>") << "\n"
                      << "  actual:   " << (hb ? lb : "<end of file>") << "\n";
            break;
        }
    }
    return 1;
}

int run_command(const Common& c, const std::string& command, gk::RunOptions opts,
                const std::vector<std::string>& words) {
    gk::Instance inst = gk::load_instance(c.file);
    // --word selects the normalize requests of a word, or runs it bare.
    for (const auto& w : words) {
        bool found = false;
        for (const auto& r : inst.requests)
            if (r.command == "normalize" && r.word == w) {
                opts.ids.push_back(r.id);
                found = true;
            }
        if (found) continue;
        if (!inst.words.has(w)) throw gk::InstanceError("/words", "no word '" + w + "'");
        gk::RequestSpec r;
        r.id = w;
        r.command = "normalize";
        r.word = w;
        inst.requests.push_back(r);
        opts.ids.push_back(w);
    }
    opts.trace = c.trace;
    opts.jobs = c.jobs;
    opts.instance_name = fs::path(c.file).stem().string();
    gk::RunResult res = gk::run(inst, command, opts);
    if (c.output.empty()) std::cout << res.report;
    else write_file(c.output, res.report);
    int code = res.exit_code;
    if (!c.golden.empty()) code = std::max(code, check_golden(c, command, res.report));
    return code;
}

void add_common(CLI::App* sub, Common& c) {
    sub->add_option("file", c.file, "instance file (gkfuse-instance/1 JSON)")->required();
    sub->add_flag("--trace", c.trace, "include derivations, blocks and pipeline data");
    sub->add_option("-j,--jobs", c.jobs, "worker threads; output order is unaffected")->check(CLI::Range(1u, 256u));
    sub->add_option("--golden", c.golden, "compare the report with <dir>/<stem>.<command>.json");
    sub->add_flag("--update-golden", c.update_golden, "write the golden file instead of comparing");
    sub->add_option("-o,--output", c.output, "write the report to a file");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact fusion and product engine for equivariant KK-type words"};
    app.require_subcommand(1);

    Common common;
    std::vector<std::string> ids, words;
    std::string corpus_dir;

    auto* validate = app.add_subcommand("validate", "check every object of an instance");
    add_common(validate, common);
    auto* fuse = app.add_subcommand("fuse", "run fusion requests");
    add_common(fuse, common);
    fuse->add_option("--request", ids, "request id (repeatable; default all)");
    auto* product = app.add_subcommand("product", "run product requests");
    add_common(product, common);
    product->add_option("--request", ids, "request id (repeatable; default all)");
    auto* normalize = app.add_subcommand("normalize", "normalize words");
    add_common(normalize, common);
    normalize->add_option("--word", words, "word label (repeatable; default all normalize requests)");
    normalize->add_option("--request", ids, "request id (repeatable)");
    auto* corpus = app.add_subcommand("corpus", "write the built-in regression instances");
    corpus->add_option("dir", corpus_dir, "output directory")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (*corpus) {
            fs::create_directories(corpus_dir);
            for (const auto& [stem, inst] : gk::corpus::regression_instances())
                write_file(fs::path(corpus_dir) / (stem + ".json"), gk::serialize_instance(inst));
            return 0;
        }
        gk::RunOptions opts;
        opts.ids = ids;
        for (auto* sub : {validate, fuse, product, normalize})
            if (*sub) return run_command(common, sub->get_name(), opts, words);
    } catch (const gk::InstanceError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
