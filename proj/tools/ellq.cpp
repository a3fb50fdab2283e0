#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

#include <CLI11.hpp>

#include "ellq/checks.hpp"

using namespace ellq;
using nlohmann::json;

namespace {

std::vector<int> parse_mu(const std::string& s) {
    std::vector<int> mu;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        try {
            mu.push_back(std::stoi(tok));
        } catch (const std::exception&) {
            throw ConfigError("bad partition entry: " + tok);
        }
    }
    return mu;
}

AffineShift parse_shift(const std::string& s) {
    try {
        return AffineShift(parse_rational(s));
    } catch (const std::invalid_argument& e) {
        throw ConfigError(e.what());
    }
}

void emit(const json& j, const RunConfig& cfg) {
    const std::string text = j.dump(2) + "\n";
    if (cfg.output.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(cfg.output, std::ios::binary);
    if (!out) throw ConfigError("cannot write " + cfg.output);
    out << text;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"ellq: elliptic quantum group verification runs"};
    app.require_subcommand(1);
    app.fallthrough();

    std::string config_path, out_path, cache_dir = ".ellq-cache";
    std::optional<std::uint64_t> seed;
    std::optional<double> budget;
    bool timings = false;
    app.add_option("-c,--config", config_path, "key=value or JSON config file");
    app.add_option("-o,--out", out_path, "report path (default stdout)");
    app.add_option("--seed", seed, "override the config seed");
    app.add_option("--budget", budget, "time budget in seconds");
    app.add_option("--cache-dir", cache_dir, "q-character cache directory");
    app.add_flag("--timings", timings, "include wall-clock timings in reports");

    // every subcommand owns its option storage: CLI11 writes default_val through at definition
    struct Opts {
        int N = 2, r = 1, k = 1, t = 0, samples = 20, depth = 2;
        double p = 0.05;
        std::string mu = "2,1,0", a = "0";
    };
    std::map<std::string, Opts> opts;
    std::function<Report(const RunConfig&)> run;
    bool run_all = false;

    auto sub = [&](const char* name, const char* help) { return std::make_pair(app.add_subcommand(name, help), &opts[name]); };

    if (auto [c, o] = sub("theta-check", "theta oddness, periods, zeros, truncation"); c) {
        c->add_option("--samples", o->samples)->default_val(100);
        c->callback([&run, o] { run = [o](const RunConfig& g) { return theta_report(g, o->samples); }; });
    }
    if (auto [c, o] = sub("dybe", "dynamical Yang-Baxter residual"); c) {
        c->add_option("--N", o->N)->default_val(2)->check(CLI::Range(2, 6));
        c->add_option("--samples", o->samples)->default_val(50);
        c->callback([&run, o] { run = [o](const RunConfig& g) { return dybe_report(g, o->N, o->samples); }; });
    }
    if (auto [c, o] = sub("rll", "RLL residual on V(a), V(a)xV(b), sl2 asymptotic module"); c) {
        c->add_option("--N", o->N)->default_val(2)->check(CLI::Range(2, 4));
        c->add_option("--samples", o->samples)->default_val(20);
        c->callback([&run, o] { run = [o](const RunConfig& g) { return rll_report(g, o->N, o->samples); }; });
    }
    if (auto [c, o] = sub("minors", "quantum minors on V(0) and V(0)xV(1)"); c) {
        c->add_option("--N", o->N)->default_val(3)->check(CLI::Range(2, 4));
        c->add_option("--samples", o->samples)->default_val(10);
        c->callback([&run, o] { run = [o](const RunConfig& g) { return minors_report(g, o->N, o->samples); }; });
    }
    if (auto [c, o] = sub("qchar", "q-character of an evaluation module"); c) {
        c->add_option("--N", o->N)->default_val(3)->check(CLI::Range(1, 8));
        c->add_option("--mu", o->mu)->default_val("2,1,0");
        c->add_option("--a", o->a)->default_val("0");
        c->callback([&run, o] {
            run = [o](const RunConfig& g) { return qchar_report(g, o->N, parse_mu(o->mu), parse_shift(o->a)); };
        });
    }
    if (auto [c, o] = sub("tsystem", "Demazure T-system at one (r, k, t)"); c) {
        c->add_option("--N", o->N)->default_val(2)->check(CLI::Range(2, 5));
        c->add_option("--r", o->r)->default_val(1);
        c->add_option("--k", o->k)->default_val(1);
        c->add_option("--t", o->t)->default_val(0);
        c->callback([&run, o] { run = [o](const RunConfig& g) { return tsystem_report(g, o->N, o->r, o->k, o->t); }; });
    }
    if (auto [c, o] = sub("baxter-expand", "generalized Baxter expansion of qc(S_mu,a)"); c) {
        c->add_option("--N", o->N)->default_val(3)->check(CLI::Range(2, 6));
        c->add_option("--mu", o->mu)->default_val("1,0,0");
        c->add_option("--a", o->a)->default_val("0");
        c->callback([&run, o] {
            run = [o](const RunConfig& g) { return baxter_report(g, o->N, parse_mu(o->mu), parse_shift(o->a)); };
        });
    }
    if (auto [c, o] = sub("asymptotic-tq", "asymptotic Baxter relation, indeterminate k"); c) {
        c->add_option("--N", o->N)->default_val(2)->check(CLI::Range(2, 5));
        c->add_option("--r", o->r)->default_val(1);
        c->add_option("--t", o->t)->default_val(1);
        c->callback([&run, o] { run = [o](const RunConfig& g) { return asymptotic_tq_report(g, o->N, o->r, o->t); }; });
    }
    if (auto [c, o] = sub("transfer", "transfer matrices: scalar law, commutativity, products"); c) {
        c->add_option("--N", o->N)->default_val(2)->check(CLI::Range(2, 4));
        c->add_option("--depth", o->depth)->default_val(2);
        c->add_option("--samples", o->samples)->default_val(3);
        c->callback([&run, o] { run = [o](const RunConfig& g) { return transfer_report(g, o->N, o->depth, o->samples); }; });
    }
    if (auto [c, o] = sub("q-operator", "Q-operator anchor value and shift law, N = 2"); c) {
        c->add_option("--depth", o->depth)->default_val(4);
        c->add_option("--samples", o->samples)->default_val(2);
        c->callback([&run, o] { run = [o](const RunConfig& g) { return q_operator_report(g, o->depth, o->samples); }; });
    }
    if (auto [c, o] = sub("tq-check", "TQ relation per p-degree, N = 2"); c) {
        c->add_option("--depth", o->depth)->default_val(3);
        c->add_option("--samples", o->samples)->default_val(5);
        c->callback([&run, o] { run = [o](const RunConfig& g) { return tq_report(g, o->depth, o->samples); }; });
    }
    if (auto [c, o] = sub("bethe", "Bethe equations at the zeros of Q, N = 2"); c) {
        c->add_option("--p", o->p)->default_val(0.05);
        c->add_option("--depth", o->depth)->default_val(6);
        c->callback([&run, o] { run = [o](const RunConfig& g) { return bethe_report(g, o->p, o->depth); }; });
    }
    app.add_subcommand("all", "fixed battery of every check")->callback([&run_all] { run_all = true; });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    try {
        RunConfig cfg = config_path.empty() ? RunConfig{} : load_config(config_path);
        if (config_path.empty()) validate(cfg.P);
        if (seed) cfg.seed = *seed;
        if (budget) cfg.budget_seconds = *budget;
        cfg.output = out_path;
        cfg.cache_dir = cache_dir;
        cfg.timings = timings;
        bool pass = false;
        if (run_all) {
            emit(all_reports(cfg, &pass), cfg);
        } else {
            Report rep = run(cfg);
            pass = rep.pass();
            emit(rep.to_json(cfg), cfg);
        }
        return pass ? 0 : 1;
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return 2;
    } catch (const BudgetExceeded& e) {
        std::cerr << "budget exceeded: " << e.what() << '\n';
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "failed: " << e.what() << '\n';
        return 1;
    }
}
