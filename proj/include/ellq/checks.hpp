#pragma once
#include <chrono>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include <json.hpp>

#include "ellq/kring.hpp"
#include "ellq/transfer.hpp"

namespace ellq {

inline constexpr int kSchemaVersion = 1;
inline constexpr const char* kToolVersion = "0.3.0";

struct RunConfig {
    EllipticParams P;
    std::uint64_t seed = 20240917;
    double budget_seconds = 600;
    std::string output;                // empty: stdout
    std::string cache_dir = ".ellq-cache";
    bool timings = false;              // off by default so reports stay byte-stable
};

// flat key=value lines (# comments) or a JSON object; unknown keys are config errors
RunConfig parse_config_text(const std::string& text);
RunConfig load_config(const std::string& path);
nlohmann::json config_json(const RunConfig& cfg);

// one numeric or exact claim with the tolerance it was judged against
struct Claim {
    std::string name;
    double value = 0;
    double tol = 0;       // value < tol passes; tol < 0 marks an exact claim
    bool pass = false;
};

struct Report {
    std::string check;
    nlohmann::json inputs = nlohmann::json::object();
    std::vector<Claim> claims;
    nlohmann::json details = nlohmann::json::object();
    std::vector<std::string> notes;
    double elapsed_ms = 0;

    void bound(const std::string& name, double value, double tol);
    void exact(const std::string& name, bool ok);
    bool pass() const;
    double claim(const std::string& name) const;
    nlohmann::json to_json(const RunConfig& cfg) const;
};

class Deadline {
public:
    explicit Deadline(double seconds) : seconds_(seconds), start_(std::chrono::steady_clock::now()) {}
    double elapsed() const;
    void check(const std::string& where) const;  // throws BudgetExceeded
private:
    double seconds_;
    std::chrono::steady_clock::time_point start_;
};

// seeded draws; try_sample reruns f after a pole-guard trip, at most `retries` times
class Sampler {
public:
    explicit Sampler(std::uint64_t seed) : gen_(seed) {}
    double uniform(double lo, double hi);
    cplx point(double re = 0.45, double im = 0.25);
    CVec lam(int N);
    std::uint64_t raw() { return gen_(); }

    template <class F>
    auto try_sample(F&& f, int retries = 10) -> decltype(f(*this)) {
        for (int i = 0;; ++i) {
            try {
                return f(*this);
            } catch (const PoleError&) {
                if (i >= retries) throw;
                ++retries_used_;
            }
        }
    }
    int retries_used() const { return retries_used_; }

private:
    std::mt19937_64 gen_;
    int retries_used_ = 0;
};

// content-addressed q-character store: one JSON file per (N, mu, a, version)
class QCharCache {
public:
    explicit QCharCache(std::string dir) : dir_(std::move(dir)) {}
    static std::string key(int N, const Partition& mu, const AffineShift& a);
    static std::string digest(const std::string& key);
    QCharacter get(int N, const Partition& mu, const AffineShift& a, bool* hit = nullptr) const;
    std::string path_for(const std::string& key) const;
private:
    std::string dir_;
};

Report theta_report(const RunConfig& cfg, int samples);
Report dybe_report(const RunConfig& cfg, int N, int samples);
Report rll_report(const RunConfig& cfg, int N, int samples);
Report minors_report(const RunConfig& cfg, int N, int samples);
Report qchar_report(const RunConfig& cfg, int N, const std::vector<int>& mu, const AffineShift& a);
Report tsystem_report(const RunConfig& cfg, int N, int r, int k, int t);
Report baxter_report(const RunConfig& cfg, int N, const std::vector<int>& mu, const AffineShift& a);
Report asymptotic_tq_report(const RunConfig& cfg, int N, int r, int t);
Report transfer_report(const RunConfig& cfg, int N, int depth, int samples);
Report q_operator_report(const RunConfig& cfg, int depth, int samples);
Report tq_report(const RunConfig& cfg, int depth, int samples);
Report bethe_report(const RunConfig& cfg, double p, int depth);

// the fixed battery behind `ellq all`
nlohmann::json all_reports(const RunConfig& cfg, bool* pass);

// deterministic inhomogeneities for an l-site chain
std::vector<cplx> default_inhomogeneities(int ell);

} // namespace ellq
