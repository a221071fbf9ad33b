#include <addcomb/addcomb.hpp>

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

namespace {

using namespace addcomb;
using nlohmann::json;

struct Options {
    std::string group;
    std::string set;
    std::string a;
    std::string b;
    std::string x;
    std::string h;
    int k = 1;
    std::string engine = "brute";
    std::string vosper_mode = "fast";
    std::string check;
    std::string record;
    bool json = false;
    std::string out;
    std::string csv;
    int catalog_max = 16;

    int min_order = 2;
    int max_order = 8;
    std::string checks = "all";
    std::string mode = "exhaustive";
    long long sample_count = 1000;
    std::uint64_t seed = 0;
    int workers = 0;
    bool timing = false;
    std::vector<std::string> budgets;
};

struct Emit {
    std::string text;
    json doc;
    int code = 0;
};

GroupPtr need_group(const Options& o)
{
    require(!o.group.empty(), ErrorCode::parse, "--group is required");
    return parse_group(o.group);
}

GroupSet need_set(const GroupPtr& g, const std::string& literal, const char* flag)
{
    require(!literal.empty(), ErrorCode::parse, std::string(flag) + " is required");
    return parse_set(g, literal);
}

/// --set, falling back on --a, for commands that take one set.
GroupSet primary_set(const GroupPtr& g, const Options& o)
{
    return need_set(g, o.set.empty() ? o.a : o.set, "--set");
}

json set_list(const std::vector<GroupSet>& sets)
{
    json a = json::array();
    for (const auto& s : sets)
        a.push_back(s.to_string());
    return a;
}

std::string verdict_line(const Verdict& v)
{
    switch (v.outcome) {
    case Outcome::pass: return "pass";
    case Outcome::skipped: return "skipped: " + v.observed;
    case Outcome::fail: return "fail: " + v.observed + " (expected " + v.expected + ")";
    }
    return {};
}

Emit cmd_kappa(const Options& o)
{
    const auto g = need_group(o);
    const auto s = primary_set(g, o);
    KappaResult r;
    if (o.engine == "mincut") {
        require(o.k == 1, ErrorCode::domain, "the mincut engine computes kappa_1 only");
        r = kappa1_mincut(s);
    } else if (o.engine == "brute") {
        r = kappa(s, o.k);
    } else {
        fail(ErrorCode::parse, "unknown engine '" + o.engine + "'");
    }
    json j = {{"k", r.k}, {"kappa", r.value}, {"separable", r.separable}};
    j["witness"] = r.witness ? json(r.witness->to_string()) : json(nullptr);
    return {std::to_string(r.value), j};
}

Emit cmd_atoms(const Options& o)
{
    const auto g = need_group(o);
    const auto s = primary_set(g, o);
    const KappaResult kr = kappa(s, o.k);
    require(kr.separable, ErrorCode::not_separable, "S is not " + std::to_string(o.k) + "-separable");
    const auto atoms = all_atoms(s, o.k, kr);
    std::string text;
    for (const auto& a : atoms)
        text += (text.empty() ? "" : "\n") + a.to_string();
    return {text, {{"k", o.k}, {"kappa", kr.value}, {"atoms", set_list(atoms)}}};
}

Emit cmd_hyperatom(const Options& o)
{
    const auto g = need_group(o);
    const auto ha = hyper_atom(primary_set(g, o));
    json tied = json::array();
    for (const auto& h : ha.maximal)
        tied.push_back(h.to_string());
    return {ha.subgroup.to_string(), {{"hyper_atom", ha.subgroup.to_string()}, {"kappa1", ha.kappa1}, {"maximal", tied}}};
}

Emit cmd_vosper(const Options& o)
{
    const auto g = need_group(o);
    VosperMode mode = VosperMode::fast;
    if (o.vosper_mode == "exhaustive")
        mode = VosperMode::exhaustive;
    else
        require(o.vosper_mode == "fast", ErrorCode::parse, "unknown vosper mode '" + o.vosper_mode + "'");
    const bool v = is_vosper(primary_set(g, o), mode);
    return {v ? "true" : "false", {{"vosper", v}}};
}

Emit cmd_sumset(const Options& o)
{
    const auto g = need_group(o);
    const auto sum = sumset(need_set(g, o.a, "--a"), need_set(g, o.b, "--b"));
    return {sum.to_string(), {{"sumset", sum.to_string()}, {"size", sum.size()}}};
}

Emit cmd_period(const Options& o)
{
    const auto g = need_group(o);
    const auto p = period(primary_set(g, o));
    return {p.to_string(), {{"period", p.to_string()}, {"order", p.order()}}};
}

Emit cmd_classify(const Options& o)
{
    const auto g = need_group(o);
    const auto a = need_set(g, o.a, "--a");
    const auto b = need_set(g, o.b, "--b");
    const PairClass pc = classify_weak_pair(a, b);
    std::string text;
    for (auto [name, on] : {std::pair{"wp1", pc.wp1}, {"wp2", pc.wp2}, {"wp3", pc.wp3}, {"wp4", pc.wp4},
                            {"sp3", pc.sp3}, {"sp4", pc.sp4}})
        if (on)
            text += (text.empty() ? "" : ",") + std::string(name);
    text = "weak=" + std::string(pc.is_weak() ? "true" : "false") +
           " elementary=" + (pc.is_elementary() ? "true" : "false") + " flags=" + (text.empty() ? "-" : text);
    return {text, pc.to_json(*g)};
}

Emit cmd_check(const Options& o)
{
    const CheckSpec& spec = find_check(o.check);
    const auto g = need_group(o);
    CheckArgs args;
    for (const auto& [label, slot] : spec.labels) {
        switch (slot) {
        case Slot::s: args.s = need_set(g, o.a.empty() ? o.set : o.a, "--a"); break;
        case Slot::t: args.t = need_set(g, o.b.empty() ? o.x : o.b, "--b"); break;
        case Slot::x: args.x = need_set(g, o.x, "--x"); break;
        case Slot::h: {
            auto members = need_set(g, o.h, "--subgroup");
            args.h = Subgroup(std::move(members));
            break;
        }
        case Slot::k: args.k = o.k; break;
        }
    }
    Context ctx;
    const Verdict v = spec.evaluate(args, ctx);
    json j = v.to_json();
    j["check"] = spec.name;
    j["group"] = g->name();
    j["args"] = args_to_json(spec, args);
    return {verdict_line(v), j, v.is_fail() ? 1 : 0};
}

std::vector<std::string> split_list(const std::string& s)
{
    std::vector<std::string> out;
    std::stringstream in(s);
    std::string item;
    while (std::getline(in, item, ','))
        if (auto t = detail::trim(item); !t.empty())
            out.emplace_back(t);
    return out;
}

Emit cmd_verify(const Options& o)
{
    SuiteConfig c;
    c.min_order = o.min_order;
    c.max_order = o.max_order;
    c.checks = split_list(o.checks);
    if (o.mode == "sample")
        c.mode = SuiteMode::sample;
    else
        require(o.mode == "exhaustive", ErrorCode::config, "unknown mode '" + o.mode + "'");
    c.sample_count = o.sample_count;
    c.seed = o.seed;
    c.workers = o.workers > 0 ? o.workers : static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
    c.timing = o.timing;
    for (const auto& b : o.budgets) {
        const auto eq = b.find('=');
        require(eq != std::string::npos, ErrorCode::config, "budget must look like name=order, got '" + b + "'");
        c.budgets[b.substr(0, eq)] = detail::parse_int(std::string_view(b).substr(eq + 1), "budget");
    }
    const Report r = run_suite(c);
    const json j = report_to_json(r);
    if (!o.out.empty()) {
        std::ofstream f(o.out);
        require(f.good(), ErrorCode::config, "cannot write '" + o.out + "'");
        f << j.dump(2) << '\n';
    }
    if (!o.csv.empty()) {
        std::ofstream f(o.csv);
        require(f.good(), ErrorCode::config, "cannot write '" + o.csv + "'");
        f << report_to_csv(r);
    }
    std::string text;
    for (const auto& [name, k] : r.checks)
        text += (text.empty() ? "" : "\n") + name + " tested=" + std::to_string(k.tested) + " passed=" +
                std::to_string(k.passed) + " skipped=" + std::to_string(k.skipped) + " failed=" + std::to_string(k.failed);
    return {text, j, r.failed_total() > 0 ? 1 : 0};
}

Emit cmd_catalog(const Options& o)
{
    std::string text;
    json j = json::array();
    for (const auto& g : abelian_group_catalog(o.catalog_max)) {
        text += (text.empty() ? "" : "\n") + g->name();
        j.push_back({{"group", g->name()}, {"order", g->order()}, {"rank", g->rank()}});
    }
    return {text, j};
}

/// Accepts a single record or a whole report; replays every record it finds.
Emit cmd_replay(const Options& o)
{
    std::string source = o.record;
    require(!source.empty(), ErrorCode::parse, "replay needs a record file ('-' for stdin)");
    std::string body;
    if (source == "-") {
        body.assign(std::istreambuf_iterator<char>(std::cin), {});
    } else {
        std::ifstream f(source);
        require(f.good(), ErrorCode::parse, "cannot read '" + source + "'");
        body.assign(std::istreambuf_iterator<char>(f), {});
    }
    json doc = json::parse(body, nullptr, false);
    require(!doc.is_discarded(), ErrorCode::parse, "record is not valid JSON");
    std::vector<json> records;
    if (doc.is_object() && doc.contains("counterexamples") && doc["counterexamples"].is_array())
        records.assign(doc["counterexamples"].begin(), doc["counterexamples"].end());
    else if (doc.is_array())
        records.assign(doc.begin(), doc.end());
    else
        records.push_back(doc);
    std::string text;
    json out = json::array();
    int code = 0;
    for (const auto& rec : records) {
        const Verdict v = replay(rec);
        if (v.is_fail())
            code = 1;
        text += (text.empty() ? "" : "\n") + rec.value("check", std::string()) + " " + rec.value("group", std::string()) +
                " " + verdict_line(v);
        out.push_back(v.to_json());
    }
    return {text, doc.is_object() && !doc.contains("counterexamples") ? out.at(0) : out, code};
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Connectivity, atoms and critical pairs in finite abelian groups"};
    app.require_subcommand(1);
    Options o;

    auto add_group = [&](CLI::App* c) { c->add_option("--group", o.group, "group literal, e.g. Z8 or Z2xZ4"); };
    auto add_json = [&](CLI::App* c) { c->add_flag("--json", o.json, "emit JSON"); };
    auto add_set = [&](CLI::App* c) {
        c->add_option("--set", o.set, "set literal, e.g. {0,1,4,5}");
        c->add_option("--a", o.a, "alias for --set");
    };
    auto add_pair = [&](CLI::App* c) {
        c->add_option("--a", o.a, "first set");
        c->add_option("--b", o.b, "second set");
    };

    auto* kappa_cmd = app.add_subcommand("kappa", "k-th connectivity of S");
    add_group(kappa_cmd);
    add_set(kappa_cmd);
    kappa_cmd->add_option("--k", o.k, "connectivity level");
    kappa_cmd->add_option("--engine", o.engine, "brute or mincut");
    add_json(kappa_cmd);

    auto* atoms_cmd = app.add_subcommand("atoms", "all k-atoms of S");
    add_group(atoms_cmd);
    add_set(atoms_cmd);
    atoms_cmd->add_option("--k", o.k, "connectivity level");
    add_json(atoms_cmd);

    auto* hyper_cmd = app.add_subcommand("hyperatom", "hyper-atom of S");
    add_group(hyper_cmd);
    add_set(hyper_cmd);
    add_json(hyper_cmd);

    auto* vosper_cmd = app.add_subcommand("vosper", "Vosper test");
    add_group(vosper_cmd);
    add_set(vosper_cmd);
    vosper_cmd->add_option("--mode", o.vosper_mode, "fast or exhaustive");
    add_json(vosper_cmd);

    auto* sumset_cmd = app.add_subcommand("sumset", "A + B");
    add_group(sumset_cmd);
    add_pair(sumset_cmd);
    add_json(sumset_cmd);

    auto* period_cmd = app.add_subcommand("period", "stabilizer of S");
    add_group(period_cmd);
    add_set(period_cmd);
    add_json(period_cmd);

    auto* classify_cmd = app.add_subcommand("classify", "weak and elementary pair flags");
    add_group(classify_cmd);
    add_pair(classify_cmd);
    add_json(classify_cmd);

    auto* check_cmd = app.add_subcommand("check", "run one registered check on one instance");
    check_cmd->add_option("name", o.check, "check name")->required();
    add_group(check_cmd);
    add_pair(check_cmd);
    check_cmd->add_option("--set", o.set, "alias for --a");
    check_cmd->add_option("--x", o.x, "alias for --b");
    check_cmd->add_option("--subgroup", o.h, "subgroup literal");
    check_cmd->add_option("--k", o.k, "connectivity level");
    add_json(check_cmd);

    auto* verify_cmd = app.add_subcommand("verify", "run the verification suite");
    verify_cmd->add_option("--min-order", o.min_order, "smallest group order");
    verify_cmd->add_option("--max-order", o.max_order, "largest group order");
    verify_cmd->add_option("--checks", o.checks, "comma-separated check names or 'all'");
    verify_cmd->add_option("--mode", o.mode, "exhaustive or sample");
    verify_cmd->add_option("--sample-count", o.sample_count, "samples per group and check");
    verify_cmd->add_option("--seed", o.seed, "sampling seed");
    verify_cmd->add_option("--workers", o.workers, "worker threads (default: all cores)");
    verify_cmd->add_option("--budget", o.budgets, "per-check exhaustive order ceiling, name=order");
    verify_cmd->add_flag("--timing", o.timing, "include elapsed_ms in the report");
    verify_cmd->add_option("--out", o.out, "write the JSON report to a file");
    verify_cmd->add_option("--csv", o.csv, "write a CSV summary to a file");
    add_json(verify_cmd);

    auto* catalog_cmd = app.add_subcommand("catalog", "list abelian groups up to an order");
    catalog_cmd->add_option("--max-order", o.catalog_max, "largest order");
    add_json(catalog_cmd);

    auto* replay_cmd = app.add_subcommand("replay", "re-run counterexample records");
    replay_cmd->add_option("record", o.record, "record or report file, '-' for stdin")->required();
    add_json(replay_cmd);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << "parse error: " << e.what() << '\n';
        return 2;
    }

    Emit result;
    try {
        const std::string cmd = app.get_subcommands().front()->get_name();
        if (cmd == "kappa") result = cmd_kappa(o);
        else if (cmd == "atoms") result = cmd_atoms(o);
        else if (cmd == "hyperatom") result = cmd_hyperatom(o);
        else if (cmd == "vosper") result = cmd_vosper(o);
        else if (cmd == "sumset") result = cmd_sumset(o);
        else if (cmd == "period") result = cmd_period(o);
        else if (cmd == "classify") result = cmd_classify(o);
        else if (cmd == "check") result = cmd_check(o);
        else if (cmd == "verify") result = cmd_verify(o);
        else if (cmd == "catalog") result = cmd_catalog(o);
        else result = cmd_replay(o);
    } catch (const Error& e) {
        std::cerr << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << '\n';
        return 2;
    }
    if (o.json)
        std::cout << result.doc.dump(2) << '\n';
    else if (!result.text.empty())
        std::cout << result.text << '\n';
    return result.code;
}
