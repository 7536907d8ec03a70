#include "symef1/cli.hpp"
#include "symef1/constructive.hpp"
#include "symef1/core.hpp"
#include "symef1/exact.hpp"
#include "symef1/heuristic.hpp"
#include "symef1/sim.hpp"
#include "symef1/tuples.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

namespace symef1::cli {

namespace {

std::vector<int> parse_int_list(const std::string & spec)
{
    // "5..10,15" -> 5 6 7 8 9 10 15
    std::vector<int> out;
    std::stringstream ss(spec);
    std::string part;
    while (std::getline(ss, part, ',')) {
        if (part.empty())
            throw CLI::ValidationError("empty entry in list '" + spec + "'");
        auto dots = part.find("..");
        try {
            if (dots == std::string::npos) {
                out.push_back(std::stoi(part));
                continue;
            }
            int lo = std::stoi(part.substr(0, dots)), hi = std::stoi(part.substr(dots + 2));
            if (hi < lo)
                throw CLI::ValidationError("descending range '" + part + "'");
            for (int x = lo; x <= hi; ++x)
                out.push_back(x);
        }
        catch (const std::logic_error &) {
            throw CLI::ValidationError("cannot parse list entry '" + part + "'");
        }
    }
    return out;
}

struct Budget {
    std::uint64_t nodes = SearchLimits{}.node_budget;
    double seconds = SearchLimits{}.time_budget_seconds;

    void attach(CLI::App * cmd)
    {
        cmd->add_option("--node-budget", nodes, "Search node budget")->check(CLI::PositiveNumber);
        cmd->add_option("--time-budget", seconds, "Search time budget in seconds")->check(CLI::PositiveNumber);
    }

    SearchLimits limits() const { return {nodes, seconds}; }
};

void print_violation(std::ostream & out, const Violation & v)
{
    out << "VIOLATED agent=" << v.agent + 1 << " held=" << v.held + 1 << " envied=" << v.envied + 1 << " lhs=" << v.lhs
        << " rhs=" << v.rhs << '\n';
}

int cmd_check(const std::string & instance_path, const std::string & partition_path, const std::string & mode,
              std::ostream & out)
{
    auto inst = load_instance(instance_path);
    auto p = load_partition(partition_path, inst.agents(), inst.items());

    if (mode == "balanced") {
        if (is_balanced(p)) {
            out << "SATISFIED mode=balanced\n";
            return ok;
        }
        std::size_t lo = p[0].size(), hi = p[0].size();
        for (auto & b : p.bundles) {
            lo = std::min(lo, b.size());
            hi = std::max(hi, b.size());
        }
        out << "VIOLATED min_size=" << lo << " max_size=" << hi << '\n';
        return negative;
    }

    std::optional<Violation> v;
    if (mode == "symef1")
        v = find_symmetric_violation(inst, p, EnvyRelaxation::any_good_max);
    else if (mode == "symefx")
        v = find_symmetric_violation(inst, p, EnvyRelaxation::any_good_min);
    else {
        Assignment a{p, {}};
        for (int i = 0; i < inst.agents(); ++i)
            a.owner.push_back(i);
        v = find_ef1_violation(inst, a);
    }
    if (v) {
        print_violation(out, *v);
        return negative;
    }
    out << "SATISFIED mode=" << mode << '\n';
    return ok;
}

struct SolveOptions {
    std::string strategy = "auto";
    std::string order = "index";
    std::uint64_t seed = 0;
    Budget budget;
};

void print_solution(std::ostream & out, const std::string & stage, const std::string & basis, const Partition & p)
{
    out << "# stage=" << stage << " basis=" << basis << '\n' << format_partition(p);
}

int cmd_solve(const std::string & instance_path, const SolveOptions & opt, std::ostream & out, std::ostream & err)
{
    auto inst = load_instance(instance_path);
    const bool any = opt.strategy == "auto";

    if (any || opt.strategy == "constructive") {
        if (auto gs = detect_groups(inst)) {
            print_solution(out, "constructive", "closed-form", grouped_allocation(inst, *gs));
            return ok;
        }
        if (! any) {
            out << "NOT_APPLICABLE\n";
            return negative;
        }
    }

    if (any || opt.strategy == "coloring") {
        auto g = build_item_graph(inst);
        if (auto c = k_color(g, inst.agents())) {
            print_solution(out, "coloring", "sufficient-condition", coloring_to_partition(*c, inst.agents()));
            return ok;
        }
        if (! any) {
            out << "NOT_APPLICABLE\n";
            return negative;
        }
    }

    if (any || opt.strategy == "heuristic") {
        static const std::map<std::string, ItemOrder> orders{
            {"index", ItemOrder::index}, {"desc-total-value", ItemOrder::desc_total_value}, {"random", ItemOrder::random}};
        auto order = make_item_order(inst, orders.at(opt.order), opt.seed);
        auto res = greedy_symef1(inst, order);
        std::ostringstream stats;
        stats << "case1=" << res.stats.placed_case1 << " case2=" << res.stats.placed_case2
              << " case3=" << res.stats.placed_case3;
        if (res.partition) {
            print_solution(out, "heuristic", "search", *res.partition);
            out << "# " << stats.str() << '\n';
            return ok;
        }
        if (! any) {
            out << "NOT_FOUND\n";
            err << stats.str() << '\n';
            return negative;
        }
    }

    auto outcome = exact_symef1(inst, opt.budget.limits());
    switch (outcome.status) {
    case ExactStatus::found:
        print_solution(out, "exact", "search", *outcome.partition);
        return ok;
    case ExactStatus::proved_infeasible:
        out << "INFEASIBLE\n";
        return negative;
    case ExactStatus::budget_exceeded:
        out << "BUDGET_EXCEEDED\n";
        err << "exact search stopped after " << outcome.nodes << " nodes\n";
        return budget_exhausted;
    }
    return negative;
}

int cmd_color(const std::string & instance_path, int k, std::ostream & out)
{
    auto inst = load_instance(instance_path);
    if (k <= 0)
        k = inst.agents();
    auto c = k_color(build_item_graph(inst), k);
    if (! c) {
        out << "INFEASIBLE k=" << k << '\n';
        return negative;
    }
    out << format_partition(coloring_to_partition(*c, k));
    return ok;
}

int cmd_enumerate(const std::string & instance_path, bool force, const Budget & budget, std::ostream & out)
{
    auto inst = load_instance(instance_path);
    SearchOptions options;
    options.allow_large = force;
    auto e = enumerate_symef1(inst, budget.limits(), options);
    out << "count=" << e.partitions.size() << '\n';
    for (std::size_t x = 0; x < e.partitions.size(); ++x)
        out << "# partition " << x + 1 << '\n' << format_partition(e.partitions[x]);
    return e.partitions.empty() ? negative : ok;
}

int cmd_mnw(const std::string & instance_path, bool force, const Budget & budget, std::ostream & out)
{
    auto inst = load_instance(instance_path);
    SearchOptions options;
    options.allow_large = force;
    auto r = max_nash_welfare(inst, budget.limits(), options);
    out << "# nash_welfare=" << r.welfare << " positive_agents=" << r.positive_agents
        << " symef1=" << (is_symef1(inst, r.assignment.partition) ? "yes" : "no") << '\n';
    out << format_partition(r.assignment.partition);
    return ok;
}

int cmd_export_ip(const std::string & instance_path, const std::string & out_path, std::ostream & out)
{
    auto inst = load_instance(instance_path);
    auto text = export_ip(inst);
    if (out_path.empty() || out_path == "-") {
        out << text;
        return ok;
    }
    std::ofstream file(out_path, std::ios::binary);
    if (! file)
        throw std::runtime_error("cannot write '" + out_path + "'");
    file << text;
    if (! file)
        throw std::runtime_error("failed writing '" + out_path + "'");
    return ok;
}

struct SimulateOptions {
    std::string agents = "3";
    std::string items = "5..10";
    std::string max_values = "10000";
    int reps = 2000;
    std::uint64_t seed = 42;
    std::string out_path;
    int threads = 0;
    bool no_timing = false;
    Budget budget;
};

int cmd_simulate(const SimulateOptions & opt, std::ostream & out, std::ostream & err)
{
    std::vector<Value> max_values;
    for (int v : parse_int_list(opt.max_values))
        max_values.push_back(v);
    SimConfig cfg;
    cfg.cells = grid(parse_int_list(opt.agents), parse_int_list(opt.items), max_values, opt.reps);
    cfg.master_seed = opt.seed;
    cfg.limits = opt.budget.limits();
    cfg.threads = opt.threads;
    cfg.record_timing = ! opt.no_timing;

    auto reports = run_simulation(cfg, [&](const SimCell & c, const SimReport & r) {
        err << "n=" << c.agents << " m=" << c.items << " M=" << c.max_value << " reps=" << c.replications
            << " symef1=" << r.pct_symef1 << "% fallback=" << r.pct_exact_fallback << "%";
        if (r.budget_exceeded)
            err << " budget_exceeded=" << r.budget_exceeded;
        err << std::endl;
    });
    auto csv = emit_csv(reports);
    if (opt.out_path.empty() || opt.out_path == "-")
        out << csv;
    else {
        std::ofstream file(opt.out_path, std::ios::binary);
        if (! file)
            throw std::runtime_error("cannot write '" + opt.out_path + "'");
        file << csv;
    }
    return ok;
}

} // namespace

int run(const std::vector<std::string> & args, std::ostream & out, std::ostream & err)
{
    CLI::App app{"symEF1 partitions of indivisible goods: verify, construct, search, simulate", "symef1"};
    app.require_subcommand(1);

    std::string instance_path, partition_path, mode = "symef1", out_path;
    int k = 0;
    bool force = false;
    SolveOptions solve;
    SimulateOptions sim;
    Budget budget;

    auto * check = app.add_subcommand("check", "Verify a partition against an instance");
    check->add_option("instance", instance_path, "Instance file")->required();
    check->add_option("partition", partition_path, "Partition file")->required();
    check->add_option("--mode", mode, "symef1, symefx, ef1 (bundle k to agent k) or balanced")
        ->check(CLI::IsMember({"symef1", "symefx", "ef1", "balanced"}));

    auto * solve_cmd = app.add_subcommand("solve", "Find a symEF1 partition");
    solve_cmd->add_option("instance", instance_path, "Instance file")->required();
    solve_cmd->add_option("--strategy", solve.strategy, "auto, constructive, coloring, heuristic or exact")
        ->check(CLI::IsMember({"auto", "constructive", "coloring", "heuristic", "exact"}));
    solve_cmd->add_option("--order", solve.order, "Heuristic item order: index, desc-total-value or random")
        ->check(CLI::IsMember({"index", "desc-total-value", "random"}));
    solve_cmd->add_option("--seed", solve.seed, "Seed for --order=random");
    solve.budget.attach(solve_cmd);

    auto * graph = app.add_subcommand("graph", "Print the item conflict graph in DOT");
    graph->add_option("instance", instance_path, "Instance file")->required();

    auto * color = app.add_subcommand("color", "Exact k-coloring of the item graph");
    color->add_option("instance", instance_path, "Instance file")->required();
    color->add_option("--k", k, "Number of colors (default: number of agents)");

    auto * enumerate = app.add_subcommand("enumerate", "List every distinct symEF1 partition");
    enumerate->add_option("instance", instance_path, "Instance file")->required();
    enumerate->add_flag("--force", force, "Allow search spaces above 10^8");
    budget.attach(enumerate);

    auto * mnw = app.add_subcommand("mnw", "Maximum Nash welfare assignment by exhaustive search");
    mnw->add_option("instance", instance_path, "Instance file")->required();
    mnw->add_flag("--force", force, "Allow search spaces above 10^8");
    budget.attach(mnw);

    auto * export_cmd = app.add_subcommand("export-ip", "Write the 0/1 feasibility model in LP format");
    export_cmd->add_option("instance", instance_path, "Instance file")->required();
    export_cmd->add_option("--out", out_path, "Output path (default: standard output)");

    auto * simulate = app.add_subcommand("simulate", "Estimate symEF1 incidence on random instances");
    simulate->add_option("--n", sim.agents, "Agent counts, e.g. 3,4,5");
    simulate->add_option("--m", sim.items, "Item counts, e.g. 5..10,15");
    simulate->add_option("--max-value", sim.max_values, "Maximum item values, e.g. 10,100,1000,10000");
    simulate->add_option("--reps", sim.reps, "Replications per cell")->check(CLI::PositiveNumber);
    simulate->add_option("--seed", sim.seed, "Master seed");
    simulate->add_option("--out", sim.out_path, "CSV output path (default: standard output)");
    simulate->add_option("--threads", sim.threads, "Worker threads (0: all cores)");
    simulate->add_flag("--no-timing", sim.no_timing, "Write 0 for wall time so output is reproducible");
    sim.budget.attach(simulate);

    std::vector<const char *> argv;
    for (auto & a : args)
        argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    }
    catch (const CLI::CallForHelp &) {
        out << app.help();
        return ok;
    }
    catch (const CLI::ParseError & e) {
        err << "error: " << e.what() << '\n';
        return input_error;
    }

    try {
        if (check->parsed())
            return cmd_check(instance_path, partition_path, mode, out);
        if (solve_cmd->parsed())
            return cmd_solve(instance_path, solve, out, err);
        if (graph->parsed()) {
            out << graph_to_dot(build_item_graph(load_instance(instance_path)));
            return ok;
        }
        if (color->parsed())
            return cmd_color(instance_path, k, out);
        if (enumerate->parsed())
            return cmd_enumerate(instance_path, force, budget, out);
        if (mnw->parsed())
            return cmd_mnw(instance_path, force, budget, out);
        if (export_cmd->parsed())
            return cmd_export_ip(instance_path, out_path, out);
        if (simulate->parsed())
            return cmd_simulate(sim, out, err);
    }
    catch (const BudgetExceeded & e) {
        out << "BUDGET_EXCEEDED\n";
        err << "error: " << e.what() << '\n';
        return budget_exhausted;
    }
    catch (const std::length_error & e) {
        err << "error: " << e.what() << '\n';
        return input_error;
    }
    catch (const CLI::ValidationError & e) {
        err << "error: " << e.what() << '\n';
        return input_error;
    }
    catch (const std::exception & e) {
        err << "error: " << e.what() << '\n';
        return input_error;
    }
    return input_error;
}

} // namespace symef1::cli
