#include "adrhp/config.hpp"

#include <fstream>
#include <json.hpp>
#include <sstream>

namespace adrhp {
namespace {

using nlohmann::json;

KernelSpec parse_kernel(const json& j) {
    std::string family = j.at("family").get<std::string>();
    if (family == "exponential")
        return KernelSpec::exponential(j.at("alpha").get<double>(), j.at("beta").get<double>());
    if (family == "erlang")
        return KernelSpec::erlang(j.at("alpha").get<double>(), j.at("beta").get<double>(),
                                  j.at("order").get<int>());
    if (family == "piecewise_constant")
        return KernelSpec::piecewise_constant(j.at("breakpoints").get<std::vector<double>>(),
                                              j.at("values").get<std::vector<double>>());
    if (family == "zero") return KernelSpec::zero();
    throw std::invalid_argument("model.kernel.family: unknown value '" + family + "'");
}

WeightLaw parse_weights(const json& j) {
    std::string law = j.at("law").get<std::string>();
    if (law == "deterministic") return WeightLaw::deterministic(j.at("w").get<double>());
    if (law == "uniform")
        return WeightLaw::uniform(j.at("a").get<double>(), j.at("b").get<double>());
    if (law == "bernoulli")
        return WeightLaw::bernoulli(j.at("p").get<double>(), j.at("w").get<double>());
    throw std::invalid_argument("model.weights.law: unknown value '" + law + "'");
}

IntensityFn parse_psi(const json& j) {
    std::string phi = j.at("phi").get<std::string>();
    double delta = j.value("delta", 0.0);
    if (phi == "affine")
        return IntensityFn::affine(j.at("mu").get<double>(), j.at("a").get<double>(), delta);
    if (phi == "clipped_affine")
        return IntensityFn::clipped_affine(j.at("mu").get<double>(), j.at("a").get<double>(),
                                           j.at("cap").get<double>(), delta);
    if (phi == "sigmoid")
        return IntensityFn::sigmoid(j.at("scale").get<double>(), j.at("gain").get<double>(),
                                    j.at("center").get<double>(), delta);
    if (phi == "constant") return IntensityFn::constant(j.at("c").get<double>(), delta);
    throw std::invalid_argument("model.psi.phi: unknown value '" + phi + "'");
}

InitialLaw parse_initial(const json& j) {
    std::string kind = j.at("age0").get<std::string>();
    if (kind == "exponential") return InitialLaw::exponential_age(j.at("rate").get<double>());
    if (kind == "uniform") return InitialLaw::uniform_age(j.at("upper").get<double>());
    if (kind == "dirac") return InitialLaw::dirac_age(j.at("a0").get<double>());
    throw std::invalid_argument("model.initial.age0: unknown value '" + kind + "'");
}

PastInfluenceLaw parse_past(const json& j) {
    std::string mode = j.at("mode").get<std::string>();
    if (mode == "hawkes_past") return PastInfluenceLaw::hawkes_past();
    if (mode == "common_stimulus")
        return PastInfluenceLaw::common_stimulus(j.at("tau").get<double>());
    if (mode == "zero") return PastInfluenceLaw::zero();
    throw std::invalid_argument("model.past.mode: unknown value '" + mode + "'");
}

}  // namespace

ExperimentConfig parse_config(const std::string& json_text) {
    json j;
    try {
        j = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw std::invalid_argument(std::string("config parse error: ") + e.what());
    }
    ExperimentConfig cfg;
    const json& m = j.at("model");
    cfg.model.kernel.base = parse_kernel(m.at("kernel"));
    cfg.model.kernel.weights =
        m.contains("weights") ? parse_weights(m.at("weights")) : WeightLaw::deterministic(1.0);
    cfg.model.psi = parse_psi(m.at("psi"));
    cfg.model.initial = parse_initial(m.at("initial"));
    cfg.model.past = m.contains("past") ? parse_past(m.at("past")) : PastInfluenceLaw::zero();
    cfg.model.self_interaction = m.value("self_interaction", true);
    cfg.model.event_cap = m.value("event_cap", std::size_t{1000000});

    if (j.contains("experiment")) {
        const json& e = j.at("experiment");
        cfg.theta = e.value("theta", cfg.theta);
        cfg.dx = e.value("dx", cfg.dx);
        if (e.contains("n_list")) cfg.n_list = e.at("n_list").get<std::vector<int>>();
        cfg.replicas = e.value("replicas", cfg.replicas);
        cfg.max_replicas = e.value("max_replicas", cfg.max_replicas);
        cfg.seed = e.value("seed", cfg.seed);
        cfg.out_dir = e.value("out", cfg.out_dir);
        if (e.contains("snapshot_times"))
            cfg.snapshot_times = e.at("snapshot_times").get<std::vector<double>>();
        cfg.jobs = e.value("jobs", 0);
        cfg.n = e.value("n", cfg.n);
    }
    return cfg;
}

ExperimentConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open config file: " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_config(ss.str());
}

std::string assumption_report_json(const AssumptionReport& rep) {
    nlohmann::json j;
    for (const auto& c : rep.checks) {
        const char* st = c.status == AssumptionCheck::Status::Satisfied    ? "satisfied"
                         : c.status == AssumptionCheck::Status::Violated ? "violated"
                                                                         : "not_checkable";
        j["assumptions"][c.name] = {{"status", st}, {"detail", c.detail}};
    }
    j["pipelines"]["bounded_pde"] = rep.h1;
    j["pipelines"]["age_independent"] = rep.h2;
    return j.dump(2);
}

}  // namespace adrhp
