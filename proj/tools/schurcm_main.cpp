// Command-line front end: inspect CM files, compute correlation measures,
// run the randomized verification suites, generate random quantum CMs.
//
// Exit codes: 0 ok, 1 theorem-backed check failed, 2 usage or parse error,
// 3 input not a bona fide quantum CM.

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "schurcm/schurcm.hpp"

namespace {

using namespace schurcm;

constexpr int kExitOk = 0;
constexpr int kExitCheckFailed = 1;
constexpr int kExitUsage = 2;
constexpr int kExitNotBonaFide = 3;

std::uint64_t default_seed() {
    if (const char* env = std::getenv("SCHUR_SEED")) {
        try {
            return std::stoull(env);
        } catch (...) {
            std::cerr << "warning: ignoring non-numeric SCHUR_SEED='" << env << "'\n";
        }
    }
    return 42;
}

PartySelector split_labels(const std::string& csv) {
    std::vector<std::string> labels;
    std::stringstream ss(csv);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (!item.empty()) labels.push_back(item);
    }
    return PartySelector(labels);
}

ModePartition parse_partition_spec(const std::string& spec) {
    std::vector<Party> parties;
    std::stringstream ss(spec);
    std::string item;
    while (std::getline(ss, item, ',')) {
        const auto colon = item.find(':');
        if (colon == std::string::npos || colon == 0 || colon + 1 >= item.size())
            throw ParseError("bad partition entry '" + item + "', expected LABEL:MODES");
        int modes = 0;
        try {
            modes = std::stoi(item.substr(colon + 1));
        } catch (...) {
            throw ParseError("bad mode count in '" + item + "'");
        }
        parties.push_back(Party{item.substr(0, colon), modes});
    }
    return ModePartition(parties);
}

int cmd_spectrum(const std::string& path) {
    const CovarianceMatrix v = load_cm(path);
    const Vector nus = symplectic_spectrum(v);
    for (Index i = 0; i < nus.size(); ++i) std::printf(i ? " %.5f" : "%.5f", nus(i));
    std::printf("\n");
    const BonaFideResult bf = is_bona_fide(v);
    std::printf("bona_fide %s margin %.5f\n", bf.ok ? "true" : "false", bf.margin);
    return bf.ok ? kExitOk : kExitNotBonaFide;
}

struct MeasureArgs {
    std::string name;
    std::string path;
    std::string cut;
    std::string steering;
    std::string steered;
    double alpha = 2.0;
    bool alpha_set = false;
    std::uint64_t seed = 42;
};

int cmd_measure(const MeasureArgs& args) {
    const CovarianceMatrix v = load_cm(args.path);
    const auto need = [&](const std::string& flag, const std::string& value) {
        if (value.empty())
            throw ParseError("measure '" + args.name + "' requires --" + flag);
        return split_labels(value);
    };
    double value = 0.0;
    if (args.name == "g_plus") {
        value = g_plus(v);
    } else if (args.name == "g_minus") {
        value = g_minus(v);
    } else if (args.name == "steerability") {
        value = steerability(v, need("steering", args.steering), need("steered", args.steered));
    } else if (args.name == "log_negativity") {
        value = log_negativity(v, need("cut", args.cut));
    } else if (args.name == "renyi_entropy") {
        if (!args.alpha_set) throw ParseError("measure 'renyi_entropy' requires --alpha");
        value = renyi_entropy(v, args.alpha);
    } else if (args.name == "mutual_info_2") {
        value = mutual_info_2(v, need("cut", args.cut));
    } else if (args.name == "e2_upper") {
        value = e2_upper(v, need("cut", args.cut)).bound;
    } else if (args.name == "e2_estimate") {
        E2SearchConfig cfg;
        cfg.rng = SeededRng(args.seed, 0);
        value = e2_estimate(v, need("cut", args.cut), cfg);
    } else if (args.name == "purity") {
        value = purity(v);
    } else {
        throw ParseError("unknown measure '" + args.name + "'");
    }
    std::printf("%.9f\n", value);
    return kExitOk;
}

struct VerifyArgs {
    std::string check;
    int trials = 200;
    std::uint64_t seed = 42;
    double tol = 1e-8;
    std::string csv;
};

void print_report(const PropertyReport& r, bool violations_allowed) {
    std::printf("%-28s trials=%-5d failures=%-4d worst_margin=% .6e stream=%-6llu %7.3fs%s\n",
                r.name.c_str(), r.trials, r.failures, r.worst_margin,
                static_cast<unsigned long long>(r.worst_seed_stream), r.elapsed_s,
                violations_allowed ? "  (violations allowed)" : "");
}

int cmd_verify(const VerifyArgs& args) {
    CheckConfig cfg;
    cfg.trials = args.trials;
    cfg.seed = args.seed;
    cfg.tol = args.tol;

    if (args.check == "counterexample") {
        const CounterexampleRecord rec = reproduce_counterexample();
        std::printf("nu_min %.5f\n", rec.nu_min);
        std::printf("gap %.6f\n", rec.gap);
        std::printf("g_joint %.6f g_b1 %.6f g_b2 %.6f\n", rec.g_joint, rec.g_b1, rec.g_b2);
        return kExitOk;
    }

    std::vector<const CheckInfo*> selected;
    if (args.check == "all") {
        for (const CheckInfo& info : check_registry()) selected.push_back(&info);
    } else {
        selected.push_back(&find_check(args.check));  // throws UnknownCheckError
    }

    std::vector<PropertyReport> reports;
    bool gate_failed = false;
    for (const CheckInfo* info : selected) {
        const PropertyReport rep = info->run(cfg);
        print_report(rep, info->violations_allowed);
        if (!info->violations_allowed && rep.failures > 0) gate_failed = true;
        reports.push_back(rep);
    }
    if (!args.csv.empty()) {
        std::ofstream os(args.csv, std::ios::binary);
        if (!os) throw Error("cannot open '" + args.csv + "' for writing");
        os << reports_to_csv(reports);
    }
    return gate_failed ? kExitCheckFailed : kExitOk;
}

struct GenArgs {
    std::string partition;
    std::string out;
    double nu_max = 3.0;
    double strength = 0.7;
    std::uint64_t seed = 42;
};

int cmd_gen(const GenArgs& args) {
    const ModePartition partition = parse_partition_spec(args.partition);
    SeededRng rng(args.seed, 0);
    const CovarianceMatrix v = random_quantum_cm(partition, args.nu_max, args.strength, rng);
    save_cm(args.out, v);
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Schur-complement calculus for quantum covariance matrices"};
    app.require_subcommand(1);
    const std::uint64_t seed0 = default_seed();

    std::string spectrum_path;
    CLI::App* spectrum = app.add_subcommand("spectrum", "symplectic eigenvalues and bona fide margin");
    spectrum->add_option("path", spectrum_path, "CM file (JSON)")->required();

    MeasureArgs margs;
    margs.seed = seed0;
    CLI::App* measure = app.add_subcommand("measure", "compute a correlation measure (nats)");
    measure->add_option("measure", margs.name,
                        "one of g_plus, g_minus, steerability, log_negativity, renyi_entropy, "
                        "mutual_info_2, e2_upper, e2_estimate, purity")
        ->required();
    measure->add_option("path", margs.path, "CM file (JSON)")->required();
    measure->add_option("--cut", margs.cut, "comma-separated party labels on one side");
    measure->add_option("--steering", margs.steering, "steering party labels");
    measure->add_option("--steered", margs.steered, "steered party labels");
    measure->add_option("--alpha", margs.alpha, "Renyi order (>= 1)")
        ->each([&](const std::string&) { margs.alpha_set = true; });
    measure->add_option("--seed", margs.seed, "seed for e2_estimate search");

    VerifyArgs vargs;
    vargs.seed = seed0;
    CLI::App* verify = app.add_subcommand("verify", "run randomized property checks");
    verify->add_option("check", vargs.check, "check id, 'all', or 'counterexample'")->required();
    verify->add_option("--trials", vargs.trials, "trials per check")->check(CLI::PositiveNumber);
    verify->add_option("--seed", vargs.seed, "ensemble seed");
    verify->add_option("--tol", vargs.tol, "relative slack tolerance");
    verify->add_option("--csv", vargs.csv, "write reports to this CSV file");

    GenArgs gargs;
    gargs.seed = seed0;
    CLI::App* gen = app.add_subcommand("gen", "generate a random quantum CM file");
    gen->add_option("partition", gargs.partition, "partition spec, e.g. A:2,B1:1,B2:1")->required();
    gen->add_option("out", gargs.out, "output path")->required();
    gen->add_option("--nu-max", gargs.nu_max, "largest symplectic eigenvalue")
        ->check(CLI::Range(1.0, 1e6));
    gen->add_option("--strength", gargs.strength, "squeezing strength")->check(CLI::PositiveNumber);
    gen->add_option("--seed", gargs.seed, "generator seed");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (*spectrum) return cmd_spectrum(spectrum_path);
        if (*measure) return cmd_measure(margs);
        if (*verify) return cmd_verify(vargs);
        if (*gen) return cmd_gen(gargs);
    } catch (const NotBonaFideError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitNotBonaFide;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    return kExitUsage;
}
