#include <cmath>
#include <stdexcept>

#include "chaincal/experiments.hpp"

namespace chaincal {

namespace {

std::vector<double> make_grid(double lo, double hi, double step) {
    if (!(step > 0.0) || !(hi >= lo)) throw std::invalid_argument("bad grid bounds/step");
    std::vector<double> grid;
    const int count = static_cast<int>(std::floor((hi - lo) / step + 0.5)) + 1;
    for (int i = 0; i < count; ++i) grid.push_back(lo + i * step);
    return grid;
}

const TomlValue* find(const TomlTable& table, const std::string& key) {
    const auto it = table.find(key);
    return it == table.end() ? nullptr : &it->second;
}

double get_double(const TomlTable& t, const std::string& key, double fallback) {
    const TomlValue* v = find(t, key);
    return v ? v->as_double() : fallback;
}

std::int64_t get_int(const TomlTable& t, const std::string& key, std::int64_t fallback) {
    const TomlValue* v = find(t, key);
    return v ? v->as_int() : fallback;
}

std::string get_string(const TomlTable& t, const std::string& key, const std::string& fallback) {
    const TomlValue* v = find(t, key);
    return v ? v->as_string() : fallback;
}

std::vector<double> grid_from(const TomlTable& t, const std::string& section,
                              const std::vector<double>& fallback) {
    if (const TomlValue* values = find(t, section + ".values")) return values->as_double_array();
    const TomlValue* lo = find(t, section + ".min");
    const TomlValue* hi = find(t, section + ".max");
    if (lo && hi)
        return make_grid(lo->as_double(), hi->as_double(), get_double(t, section + ".step", 0.1));
    return fallback;
}

Schedule schedule_from(const TomlTable& t, const std::string& section, const Schedule& base) {
    Schedule schedule = base;
    const std::string kind = get_string(t, section + ".schedule",
                                        base.kind == ScheduleKind::linear ? "linear" : "geometric");
    if (kind == "geometric")
        schedule.kind = ScheduleKind::geometric;
    else if (kind == "linear")
        schedule.kind = ScheduleKind::linear;
    else
        throw std::invalid_argument("unknown schedule kind: " + kind);
    schedule.beta_start = get_double(t, section + ".beta_start", base.beta_start);
    schedule.beta_end = get_double(t, section + ".beta_end", base.beta_end);
    schedule.sweeps = static_cast<int>(get_int(t, section + ".sweeps", base.sweeps));
    return schedule;
}

}  // namespace

ExperimentPlan plan_from_toml(const TomlTable& t) {
    ExperimentPlan plan;

    const std::string kind = get_string(t, "kind", "sa_jc_sweep");
    if (kind == "exact_gap_sweep")
        plan.kind = PlanKind::exact_gap_sweep;
    else if (kind == "sa_jc_sweep")
        plan.kind = PlanKind::sa_jc_sweep;
    else if (kind == "sa_j2_sweep")
        plan.kind = PlanKind::sa_j2_sweep;
    else if (kind == "disorder_study")
        plan.kind = PlanKind::disorder_study;
    else
        throw std::invalid_argument("unknown plan kind: " + kind);

    plan.seed = static_cast<std::uint64_t>(get_int(t, "seed", 0));
    plan.ensembles = static_cast<int>(get_int(t, "ensembles", plan.ensembles));

    plan.lattice.length = static_cast<int>(get_int(t, "lattice.length", plan.lattice.length));
    plan.lattice.j1 = get_double(t, "lattice.j1", plan.lattice.j1);
    plan.lattice.j2 = get_double(t, "lattice.j2", plan.lattice.j2);
    const std::string boundary = get_string(t, "lattice.boundary", "periodic");
    if (boundary == "periodic")
        plan.lattice.boundary = Boundary::periodic;
    else if (boundary == "open")
        plan.lattice.boundary = Boundary::open;
    else
        throw std::invalid_argument("unknown boundary: " + boundary);

    const std::string mode = get_string(t, "chains.mode", "target_total");
    if (mode == "fixed") {
        plan.chains.mode = ChainPolicy::Mode::fixed;
        const TomlValue* sites = find(t, "chains.sites");
        const TomlValue* lengths = find(t, "chains.lengths");
        if (!sites || !lengths)
            throw std::invalid_argument("chains.mode = \"fixed\" needs sites and lengths");
        const auto site_values = sites->as_int_array();
        const auto length_values = lengths->as_int_array();
        if (site_values.size() != length_values.size())
            throw std::invalid_argument("chains.sites and chains.lengths differ in size");
        for (std::size_t i = 0; i < site_values.size(); ++i)
            plan.chains.fixed.chains.push_back(
                {static_cast<int>(site_values[i]), static_cast<int>(length_values[i])});
        plan.chains.fixed.canonicalize();
    } else if (mode == "target_total") {
        plan.chains.mode = ChainPolicy::Mode::target_total;
    } else if (mode == "random") {
        plan.chains.mode = ChainPolicy::Mode::random;
    } else {
        throw std::invalid_argument("unknown chain policy mode: " + mode);
    }
    plan.chains.target_total =
        static_cast<int>(get_int(t, "chains.target_total", plan.chains.target_total));
    plan.chains.max_tries = static_cast<int>(get_int(t, "chains.max_tries", plan.chains.max_tries));

    switch (plan.kind) {
        case PlanKind::exact_gap_sweep:
            plan.grid = grid_from(t, "grid", {0.42, 0.46, 0.48});
            break;
        case PlanKind::sa_jc_sweep:
        case PlanKind::disorder_study:
            plan.grid = grid_from(t, "grid", make_grid(1.0, 4.0, 0.1));
            break;
        case PlanKind::sa_j2_sweep:
            plan.grid = grid_from(t, "grid", {0.42, 0.44, 0.46, 0.48});
            break;
    }

    plan.sa.schedule = schedule_from(t, "sa", plan.sa.schedule);
    plan.sa.shots = get_int(t, "sa.shots", plan.sa.shots);
    const std::string policy = get_string(t, "sa.policy", "strict_intact");
    if (policy == "strict_intact")
        plan.sa.policy = SuccessPolicy::strict_intact;
    else if (policy == "energy_only")
        plan.sa.policy = SuccessPolicy::energy_only;
    else
        throw std::invalid_argument("unknown success policy: " + policy);

    plan.jc_lo = get_double(t, "exact.jc_lo", plan.jc_lo);
    plan.jc_hi = get_double(t, "exact.jc_hi", plan.jc_hi);
    plan.kink_grid_step = get_double(t, "exact.grid_step", plan.kink_grid_step);
    plan.exact.max_qubits = static_cast<int>(get_int(t, "exact.max_qubits", plan.exact.max_qubits));
    plan.exact.tolerance = get_double(t, "exact.tolerance", plan.exact.tolerance);

    if (const TomlValue* v = find(t, "conditions.fixed_jc")) plan.fixed_jc = v->as_double_array();
    if (const TomlValue* v = find(t, "conditions.fixed_delta_c"))
        plan.fixed_delta_c = v->as_double_array();
    plan.kink_chain_total =
        static_cast<int>(get_int(t, "conditions.kink_chain_total", plan.kink_chain_total));

    if (const TomlValue* v = find(t, "disorder.x")) plan.x_grid = v->as_double_array();
    plan.disorder.j2_low = get_double(t, "disorder.j2_low", plan.disorder.j2_low);
    plan.disorder.j2_high = get_double(t, "disorder.j2_high", plan.disorder.j2_high);

    // Reference-ground budget: defaults to ten times the measurement sweeps.
    plan.oracle.schedule = plan.sa.schedule;
    plan.oracle.schedule.sweeps = plan.sa.schedule.sweeps * 10;
    plan.oracle.shots = 200;
    plan.oracle.schedule = schedule_from(t, "oracle", plan.oracle.schedule);
    plan.oracle.shots = get_int(t, "oracle.shots", plan.oracle.shots);

    plan.validate();
    return plan;
}

ExperimentPlan load_plan(const std::string& path) {
    return plan_from_toml(parse_toml_file(path));
}

Json to_json(const ExperimentPlan& plan) {
    Json j;
    switch (plan.kind) {
        case PlanKind::exact_gap_sweep: j["kind"] = "exact_gap_sweep"; break;
        case PlanKind::sa_jc_sweep: j["kind"] = "sa_jc_sweep"; break;
        case PlanKind::sa_j2_sweep: j["kind"] = "sa_j2_sweep"; break;
        case PlanKind::disorder_study: j["kind"] = "disorder_study"; break;
    }
    j["seed"] = plan.seed;
    j["ensembles"] = plan.ensembles;
    j["lattice"] = {{"length", plan.lattice.length},
                    {"j1", plan.lattice.j1},
                    {"j2", plan.lattice.j2},
                    {"boundary",
                     plan.lattice.boundary == Boundary::periodic ? "periodic" : "open"}};
    Json chains;
    switch (plan.chains.mode) {
        case ChainPolicy::Mode::fixed: {
            chains["mode"] = "fixed";
            chains["chains"] = to_json(plan.chains.fixed)["chains"];
            break;
        }
        case ChainPolicy::Mode::target_total:
            chains["mode"] = "target_total";
            chains["target_total"] = plan.chains.target_total;
            break;
        case ChainPolicy::Mode::random: chains["mode"] = "random"; break;
    }
    j["chains"] = std::move(chains);
    j["grid"] = plan.grid;
    j["sa"] = {{"shots", plan.sa.shots},
               {"schedule",
                plan.sa.schedule.kind == ScheduleKind::geometric ? "geometric" : "linear"},
               {"beta_start", plan.sa.schedule.beta_start},
               {"beta_end", plan.sa.schedule.beta_end},
               {"sweeps", plan.sa.schedule.sweeps},
               {"policy", plan.sa.policy == SuccessPolicy::strict_intact ? "strict_intact"
                                                                         : "energy_only"}};
    j["exact"] = {{"jc_lo", plan.jc_lo},
                  {"jc_hi", plan.jc_hi},
                  {"grid_step", plan.kink_grid_step},
                  {"max_qubits", plan.exact.max_qubits},
                  {"tolerance", plan.exact.tolerance}};
    if (plan.kind == PlanKind::sa_j2_sweep)
        j["conditions"] = {{"fixed_jc", plan.fixed_jc},
                           {"fixed_delta_c", plan.fixed_delta_c},
                           {"kink_chain_total", plan.kink_chain_total}};
    if (plan.kind == PlanKind::disorder_study) {
        j["disorder"] = {{"x", plan.x_grid},
                         {"j2_low", plan.disorder.j2_low},
                         {"j2_high", plan.disorder.j2_high}};
        j["oracle"] = {{"shots", plan.oracle.shots},
                       {"sweeps", plan.oracle.schedule.sweeps},
                       {"beta_start", plan.oracle.schedule.beta_start},
                       {"beta_end", plan.oracle.schedule.beta_end}};
    }
    return j;
}

}  // namespace chaincal
