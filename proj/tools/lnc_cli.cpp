#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"

#include "lnc/dot.hpp"
#include "lnc/json_io.hpp"

using namespace lnc;

namespace {

struct CommonOpts {
    std::string input;
    std::string out;
    std::string field_override; // "p" or "p,m"
    std::optional<std::uint64_t> seed;
    std::string assignment_file;
    std::size_t trials = 32;
    int dest = 0; // 0 = all / default
    bool timed = false;
    bool convert_first = false;
    bool pretty = false;
};

void add_io(CLI::App* cmd, CommonOpts& o) {
    cmd->add_option("input", o.input, "network JSON file")->required();
    cmd->add_option("--out", o.out, "write the machine-readable result here (atomic)");
    cmd->add_option("--field", o.field_override, "override the file's field: p or p,m");
}

FieldRef parse_field_override(const std::string& s) {
    auto comma = s.find(',');
    std::uint32_t p = std::stoul(s.substr(0, comma));
    std::uint32_t m = comma == std::string::npos ? 1 : std::stoul(s.substr(comma + 1));
    return Field::make(p, m);
}

Network with_field(const Network& net, FieldRef field) {
    std::vector<std::string> dests;
    for (const auto& d : net.destinations()) dests.push_back(d.node);
    return Network(std::move(field), net.nodes(), net.edges(), net.source_id(), dests);
}

LoadedNetwork load(const CommonOpts& o) {
    LoadedNetwork loaded = load_network_json(parse_json(read_file(o.input)));
    if (!o.field_override.empty()) {
        FieldRef f = parse_field_override(o.field_override);
        loaded.net = with_field(loaded.net, f);
        if (loaded.layered) loaded.lnet.net = with_field(loaded.lnet.net, f);
    }
    return loaded;
}

void emit(const std::string& text, const CommonOpts& o) {
    if (o.out.empty()) {
        std::cout << text;
    } else {
        atomic_write(o.out, text);
    }
}

void emit_json(const json& j, const CommonOpts& o) { emit(j.dump(2) + "\n", o); }

/// Pipeline shared by matrix/mincut/reverse: optional conversion, then
/// layering. Carries a file-provided assignment across both rewrites.
struct Prepared {
    LayeredNetwork lnet;
    CodingAssignment asg;
};

Prepared prepare(const LoadedNetwork& loaded, const CommonOpts& o) {
    Network net = loaded.net;
    std::optional<CodingAssignment> asg;
    if (!o.assignment_file.empty())
        asg = assignment_from_json(parse_json(read_file(o.assignment_file)), net);

    if (o.convert_first) {
        ConversionResult conv = to_variant1(net);
        if (asg) asg = transport_assignment(net, *asg, conv);
        net = conv.network;
    }
    LayeredNetwork lnet = loaded.layered && !o.convert_first ? loaded.lnet : layer(net);
    if (asg && !(loaded.layered && !o.convert_first))
        asg = transport_assignment(net, *asg, lnet);

    if (!asg) {
        if (!o.seed) fail(ErrorCode::InvalidArgument, "--seed or --assignment is required");
        asg = assign_random(lnet.net, *o.seed);
    }
    return {std::move(lnet), std::move(*asg)};
}

json layer_report(const LayeredNetwork& lnet, const Network& original) {
    json sizes = json::array();
    for (int l = 1; l <= lnet.layers; ++l) sizes.push_back(lnet.layer_size(l));
    LayeringCost cost = layering_cost(original);
    return json{{"layers", lnet.layers},
                {"layer_sizes", sizes},
                {"inserted", lnet.inserted.size()},
                {"coding_points", cost.coding_points},
                {"avg_coding_in_degree", cost.avg_in_degree}};
}

int cmd_validate(const CommonOpts& o) {
    LoadedNetwork loaded = load(o);
    ValidationReport rep = validate(loaded.net);
    emit_json(validation_to_json(rep), o);
    return rep.ok() ? 0 : 1;
}

int cmd_layer(const CommonOpts& o) {
    LoadedNetwork loaded = load(o);
    Network net = o.convert_first ? to_variant1(loaded.net).network : loaded.net;
    LayeredNetwork lnet = layer(net);
    emit_json(json{{"network", layered_to_json(lnet)}, {"report", layer_report(lnet, net)}}, o);
    return 0;
}

int cmd_convert(const CommonOpts& o) {
    LoadedNetwork loaded = load(o);
    ConversionResult conv = to_variant1(loaded.net);
    emit_json(json{{"network", network_to_json(conv.network)},
                   {"map", conversion_map_to_json(conv.map)}},
              o);
    return 0;
}

int cmd_matrix(const CommonOpts& o) {
    LoadedNetwork loaded = load(o);
    Prepared prep = prepare(loaded, o);

    json interlayer = json::array();
    for (int l = 1; l < prep.lnet.layers; ++l)
        interlayer.push_back(matrix_to_json(interlayer_matrix(prep.lnet, prep.asg, l)));
    ChannelMatrix overall = overall_matrix(prep.lnet, prep.asg);
    json individual = json::array();
    for (int k = 1; k <= static_cast<int>(prep.lnet.net.destinations().size()); ++k) {
        if (o.dest != 0 && o.dest != k) continue;
        json entry = channel_to_json(individual_matrix(prep.lnet, prep.asg, k));
        entry["destination"] =
            prep.lnet.net.destinations()[static_cast<std::size_t>(k) - 1].node;
        individual.push_back(std::move(entry));
    }
    if (o.pretty) {
        for (int l = 1; l < prep.lnet.layers; ++l)
            std::cerr << "between layers " << l << " and " << l + 1 << ":\n"
                      << interlayer_matrix(prep.lnet, prep.asg, l).pretty();
        std::cerr << "overall:\n" << overall.mat.pretty();
    }
    emit_json(json{{"interlayer", interlayer},
                   {"overall", channel_to_json(overall)},
                   {"individual", individual}},
              o);
    return 0;
}

int cmd_mincut(const CommonOpts& o) {
    LoadedNetwork loaded = load(o);
    if (!o.seed) fail(ErrorCode::InvalidArgument, "--seed is required");
    json reports = json::array();
    SplitMix64 per_dest(*o.seed);
    for (int k = 1; k <= static_cast<int>(loaded.net.destinations().size()); ++k) {
        std::uint64_t seed_k = per_dest.next();
        if (o.dest != 0 && o.dest != k) continue;
        MincutReport rep = mincut_report(loaded.net, k, o.trials, seed_k);
        std::cerr << rep.destination << ": per-layer ranks [";
        for (std::size_t i = 0; i < rep.per_layer_ranks.size(); ++i)
            std::cerr << (i ? " " : "") << rep.per_layer_ranks[i];
        std::cerr << "], bound " << rep.upper_bound << ", estimate " << rep.max_rank
                  << ", max-flow " << rep.maxflow << "\n";
        reports.push_back(mincut_report_to_json(rep));
    }
    emit_json(json{{"reports", reports}}, o);
    return 0;
}

std::vector<std::uint16_t> parse_vector(const std::string& s) {
    std::vector<std::uint16_t> out;
    std::size_t start = 0;
    while (start <= s.size()) {
        std::size_t comma = s.find(',', start);
        std::string tok = s.substr(start, comma - start);
        if (!tok.empty()) out.push_back(static_cast<std::uint16_t>(std::stoul(tok)));
        if (comma == std::string::npos) break;
        start = comma + 1;
    }
    return out;
}

int cmd_simulate(const CommonOpts& o, const std::string& x_arg) {
    LoadedNetwork loaded = load(o);
    CodingAssignment asg = o.assignment_file.empty()
                               ? (o.seed ? assign_random(loaded.net, *o.seed)
                                         : (fail(ErrorCode::InvalidArgument,
                                                 "--seed or --assignment is required"),
                                            CodingAssignment(loaded.net.field())))
                               : assignment_from_json(parse_json(read_file(o.assignment_file)),
                                                      loaded.net);
    std::vector<std::uint16_t> x = parse_vector(x_arg);

    json out{{"x", x}};
    json received = json::array();
    if (o.timed) {
        TimedResult timed = simulate_timed(loaded.net, asg, x);
        for (std::size_t k = 0; k < timed.values.received.size(); ++k)
            received.push_back(json{{"destination", loaded.net.destinations()[k].node},
                                    {"y", timed.values.received[k]}});
        json trace = json::object();
        for (const auto& [node, ticks] : timed.arrival_ticks)
            trace[node] = json{{"ticks", ticks}, {"buffer", timed.buffer_depth.at(node)}};
        out["trace"] = trace;
    } else {
        SimulationResult sim = simulate(loaded.net, asg, x);
        for (std::size_t k = 0; k < sim.received.size(); ++k)
            received.push_back(
                json{{"destination", loaded.net.destinations()[k].node}, {"y", sim.received[k]}});
    }
    out["received"] = received;
    emit_json(out, o);
    return 0;
}

int cmd_reverse(const CommonOpts& o) {
    LoadedNetwork loaded = load(o);
    Prepared prep = prepare(loaded, o);
    int k = o.dest;
    if (k == 0) {
        if (prep.lnet.net.destinations().size() > 1)
            fail(ErrorCode::InvalidArgument, "--dest is required for multicast networks");
        k = 1;
    }

    ReversedNetwork rev = reverse(prep.lnet, prep.asg, k);
    ChannelMatrix fwd = overall_matrix(prep.lnet, prep.asg);
    ChannelMatrix bwd = backward_matrix(rev);
    bool transpose_ok = bwd.mat == mat_transpose(fwd.mat);
    bool valid_back = mat_rank(backward_end_to_end(rev).mat) == prep.lnet.net.source_degree();

    emit_json(json{{"network", network_to_json(rev.net)},
                   {"coefficients", assignment_to_json(rev.asg)},
                   {"forward", channel_to_json(fwd)},
                   {"backward", channel_to_json(bwd)},
                   {"transpose_ok", transpose_ok},
                   {"backward_valid", valid_back}},
              o);
    return 0;
}

int cmd_precode(const CommonOpts& o, const std::string& precoder_file, bool random_precoder) {
    LoadedNetwork loaded = load(o);
    Prepared prep = prepare(loaded, o);
    int k = o.dest;
    if (k == 0) {
        if (prep.lnet.net.destinations().size() > 1)
            fail(ErrorCode::InvalidArgument, "--dest is required for multicast networks");
        k = 1;
    }
    ReversedNetwork rev = reverse(prep.lnet, prep.asg, k);

    Matrix p = Matrix::identity(prep.lnet.net.field(), 0);
    ChannelMatrix map{p, {}, {}};
    if (random_precoder) {
        if (!o.seed) fail(ErrorCode::InvalidArgument, "--random needs --seed");
        PrecodeResult result = precode_random(rev, *o.seed ^ 0x9E3779B97F4A7C15ULL);
        p = result.p;
        map = result.map;
    } else {
        if (precoder_file.empty())
            fail(ErrorCode::InvalidArgument, "give --precoder FILE or --random");
        p = matrix_from_json(parse_json(read_file(precoder_file)), prep.lnet.net.field());
        map = precode(rev, p);
    }
    emit_json(json{{"precoder", matrix_to_json(p)}, {"map", channel_to_json(map)}}, o);
    return 0;
}

int cmd_export_dot(const CommonOpts& o) {
    LoadedNetwork loaded = load(o);
    emit(loaded.layered ? to_dot(loaded.lnet) : to_dot(loaded.net), o);
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"linear network coding over layered acyclic networks"};
    app.require_subcommand(1);

    CommonOpts o;
    std::string x_arg;

    CLI::App* validate_cmd = app.add_subcommand("validate", "check a network file's invariants");
    add_io(validate_cmd, o);

    CLI::App* layer_cmd = app.add_subcommand("layer", "rewrite into adjacent-layer form");
    add_io(layer_cmd, o);
    layer_cmd->add_flag("--convert-first", o.convert_first,
                        "split distinct-output nodes before layering");

    CLI::App* convert_cmd =
        app.add_subcommand("convert", "split distinct-output nodes into single-output form");
    add_io(convert_cmd, o);

    CLI::App* matrix_cmd =
        app.add_subcommand("matrix", "interlayer, overall and per-destination matrices");
    add_io(matrix_cmd, o);
    matrix_cmd->add_option("--seed", o.seed, "draw random coefficients from this seed");
    matrix_cmd->add_option("--assignment", o.assignment_file, "coefficient file");
    matrix_cmd->add_option("--dest", o.dest, "restrict to destination k (1-based)");
    matrix_cmd->add_flag("--convert-first", o.convert_first,
                         "convert distinct-output nodes before layering");
    matrix_cmd->add_flag("--pretty", o.pretty, "also print aligned matrices");

    CLI::App* mincut_cmd = app.add_subcommand("mincut", "rank-based min-cut analysis");
    add_io(mincut_cmd, o);
    mincut_cmd->add_option("--seed", o.seed, "trial seed (required)");
    mincut_cmd->add_option("--trials", o.trials, "random assignments per destination");
    mincut_cmd->add_option("--dest", o.dest, "restrict to destination k (1-based)");

    CLI::App* simulate_cmd = app.add_subcommand("simulate", "propagate a source vector");
    add_io(simulate_cmd, o);
    simulate_cmd->add_option("--seed", o.seed, "draw random coefficients from this seed");
    simulate_cmd->add_option("--assignment", o.assignment_file, "coefficient file");
    simulate_cmd->add_option("--x", x_arg, "comma-separated source symbols")->required();
    simulate_cmd->add_flag("--timed", o.timed, "also report per-node arrival ticks");

    CLI::App* reverse_cmd =
        app.add_subcommand("reverse", "swap communication direction for one destination");
    add_io(reverse_cmd, o);
    reverse_cmd->add_option("--seed", o.seed, "draw random coefficients from this seed");
    reverse_cmd->add_option("--assignment", o.assignment_file, "coefficient file");
    reverse_cmd->add_option("--dest", o.dest, "destination to reverse (1-based)");
    reverse_cmd->add_flag("--convert-first", o.convert_first,
                          "convert distinct-output nodes before layering");

    std::string precoder_file;
    bool random_precoder = false;
    CLI::App* precode_cmd = app.add_subcommand(
        "precode", "combine source symbols before a reversed transmission");
    add_io(precode_cmd, o);
    precode_cmd->add_option("--seed", o.seed, "draw random coefficients from this seed");
    precode_cmd->add_option("--assignment", o.assignment_file, "coefficient file");
    precode_cmd->add_option("--dest", o.dest, "destination whose direction reverses (1-based)");
    precode_cmd->add_option("--precoder", precoder_file, "matrix JSON file");
    precode_cmd->add_flag("--random", random_precoder, "search for an invertible precoder");
    precode_cmd->add_flag("--convert-first", o.convert_first,
                          "convert distinct-output nodes before layering");

    CLI::App* dot_cmd = app.add_subcommand("export-dot", "emit Graphviz text");
    add_io(dot_cmd, o);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (validate_cmd->parsed()) return cmd_validate(o);
        if (layer_cmd->parsed()) return cmd_layer(o);
        if (convert_cmd->parsed()) return cmd_convert(o);
        if (matrix_cmd->parsed()) return cmd_matrix(o);
        if (mincut_cmd->parsed()) return cmd_mincut(o);
        if (simulate_cmd->parsed()) return cmd_simulate(o, x_arg);
        if (reverse_cmd->parsed()) return cmd_reverse(o);
        if (precode_cmd->parsed()) return cmd_precode(o, precoder_file, random_precoder);
        if (dot_cmd->parsed()) return cmd_export_dot(o);
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        switch (e.code()) {
            case ErrorCode::SchemaViolation:
            case ErrorCode::Io:
            case ErrorCode::InvalidArgument:
            case ErrorCode::NonPrimeCharacteristic:
            case ErrorCode::UnsupportedExtension:
            case ErrorCode::FieldTooLarge:
            case ErrorCode::ReduciblePolynomial: return 2;
            default: return 1;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
