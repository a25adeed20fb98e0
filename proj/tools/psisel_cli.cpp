// psisel command-line front end.
//
// Exit codes: 0 success, 1 usage error, 2 data error, 3 desk-scale limit.

#include <psisel/psisel.hpp>

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace {

using namespace psisel;
using json = nlohmann::ordered_json;

enum ExitCode { kOk = 0, kUsage = 1, kData = 2, kDeskScale = 3 };

struct Globals {
    std::uint64_t seed = 0;
    std::string oracle = "graph";
};

json ratio_json(const Ratio& r) {
    if (r.is_infinite())
        return {{"infinite", true}, {"value", "inf"}};
    return {{"num", r.num()}, {"den", r.den()}, {"value", r.to_string()}};
}

json set_json(const NodeSet& s) { return s.members(); }

void emit(const std::string& path, const std::string& text) {
    if (path.empty() || path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream out(path);
    if (!out)
        throw InvalidInput("cannot open '" + path + "' for writing");
    out << text;
}

/// Oracle over integer weights plus the factor they were scaled by; strengths
/// reported to the user are divided by it.
struct LoadedOracle {
    CutOracle oracle;
    Ratio scale{1};

    Ratio to_user(const Ratio& r) const { return r.is_infinite() ? r : r / scale; }
    Ratio from_user(const Ratio& r) const { return r * scale; }
};

LoadedOracle load_oracle(const Globals& g, const std::string& path) {
    std::int64_t scale = 1;
    if (g.oracle == "hypergraph") {
        Hypergraph h = io::read_hyperedge_list(path, &scale);
        return {CutOracle::hypergraph(std::move(h)), Ratio(scale)};
    }
    WeightedGraph graph = io::read_edge_list(path).to_integer_graph(&scale);
    return {CutOracle::graph(std::move(graph)), Ratio(scale)};
}

/// Parses "0,3,5" into a node set.
NodeSet parse_nodes(const std::string& text, std::size_t n) {
    NodeSet s(n);
    if (text.empty())
        return s;
    std::stringstream in(text);
    std::string item;
    while (std::getline(in, item, ',')) {
        std::size_t v = 0;
        try {
            std::size_t used = 0;
            v = std::stoul(item, &used);
            if (used != item.size())
                throw std::invalid_argument(item);
        } catch (const std::exception&) {
            throw InvalidInput("invalid node '" + item + "' in --nodes");
        }
        if (v >= n)
            throw UniverseMismatch("node " + std::to_string(v) + " outside universe of size " + std::to_string(n));
        s.insert(v);
    }
    return s;
}

NodeSet load_set(const std::string& file, const std::string& inline_nodes, std::size_t n) {
    if (!file.empty()) {
        std::ifstream in(file);
        if (!in)
            throw InvalidInput("cannot open '" + file + "' for reading");
        return io::read_node_set(in, n);
    }
    return parse_nodes(inline_nodes, n);
}

std::vector<std::string> split_list(const std::string& text) {
    std::vector<std::string> out;
    std::stringstream in(text);
    std::string item;
    while (std::getline(in, item, ','))
        if (!item.empty())
            out.push_back(item);
    return out;
}

json labels_json(const Labeling& y) {
    json out = json::array();
    for (node_t v = 0; v < y.universe(); ++v)
        out.push_back(y[v]);
    return out;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Active label selection and transductive prediction on graphs and hypergraphs"};
    app.require_subcommand(1);
    app.fallthrough();
    Globals globals;
    app.add_option("--seed", globals.seed, "Seed for randomized steps");
    app.add_option("--oracle", globals.oracle, "Input structure for --graph files")
        ->check(CLI::IsMember({"graph", "hypergraph"}));

    // build-knn
    auto* knn = app.add_subcommand("build-knn", "Build a k-nearest-neighbor graph from points");
    std::string knn_points, knn_out;
    std::size_t knn_k = 10;
    bool knn_weighted = false;
    knn->add_option("--points", knn_points, "Points file (comma-separated reals)")->required();
    knn->add_option("--k", knn_k, "Neighbors per point")->check(CLI::PositiveNumber);
    knn->add_flag("--weighted", knn_weighted, "Gaussian weights with the k-th neighbor bandwidth");
    knn->add_option("--out", knn_out, "Edge list output (default stdout)");

    // build-ratings
    auto* ratings = app.add_subcommand("build-ratings", "Build the liked/disliked hypergraph from ratings");
    std::string ratings_in, ratings_out, ratings_items;
    std::size_t min_ratings = 10;
    ratings->add_option("--ratings", ratings_in, "Ratings file")->required();
    ratings->add_option("--min-ratings", min_ratings, "Keep items with more ratings than this");
    ratings->add_option("--out", ratings_out, "Hyperedge list output (default stdout)");
    ratings->add_option("--items-out", ratings_items, "Node index to item id map");

    // psi
    auto* psi_cmd = app.add_subcommand("psi", "Strength of a labeled set");
    std::string psi_graph, psi_set_file, psi_nodes, psi_out;
    psi_cmd->add_option("--graph", psi_graph, "Edge list (or hyperedge list with --oracle hypergraph)")->required();
    auto* psi_set_opt = psi_cmd->add_option("--set", psi_set_file, "File with one node per line");
    psi_cmd->add_option("--nodes", psi_nodes, "Comma-separated nodes")->excludes(psi_set_opt);
    psi_cmd->add_option("--out", psi_out, "JSON output (default stdout)");

    // select
    auto* select_cmd = app.add_subcommand("select", "Choose nodes to label");
    std::string sel_graph, sel_target, sel_out, sel_gap = "1/10000";
    std::size_t sel_budget = 0;
    bool sel_naive = false;
    select_cmd->add_option("--graph", sel_graph, "Edge list (or hyperedge list with --oracle hypergraph)")->required();
    auto* target_opt = select_cmd->add_option("--target-psi", sel_target, "Smallest set with strength >= P/Q");
    auto* budget_opt = select_cmd->add_option("--budget", sel_budget, "At most K nodes, strength maximized")
                           ->check(CLI::PositiveNumber);
    target_opt->excludes(budget_opt);
    select_cmd->add_option("--rel-gap", sel_gap, "Bisection stopping gap for --budget")->needs(budget_opt);
    select_cmd->add_flag("--naive", sel_naive, "Re-evaluate every gain each round");
    select_cmd->add_option("--out", sel_out, "JSON output (default stdout)");

    // predict
    auto* predict_cmd = app.add_subcommand("predict", "Complete a partial labeling");
    std::string pred_graph, pred_labels, pred_method = "mincut", pred_out;
    std::optional<std::int64_t> pred_positive;
    predict_cmd->add_option("--graph", pred_graph, "Edge list (or hyperedge list with --oracle hypergraph)")->required();
    predict_cmd->add_option("--labels", pred_labels, "Known labels")->required();
    predict_cmd->add_option("--method", pred_method, "mincut or labelprop")
        ->check(CLI::IsMember({"mincut", "labelprop"}));
    predict_cmd->add_option("--positive-class", pred_positive, "One-vs-rest: this class id is 1, others 0");
    predict_cmd->add_option("--out", pred_out, "Labels output (default stdout)");

    // certify
    auto* certify_cmd = app.add_subcommand("certify", "Error bound report for a prediction");
    std::string cert_graph, cert_truth, cert_labeled, cert_nodes, cert_prediction, cert_out;
    certify_cmd->add_option("--graph", cert_graph, "Edge list (or hyperedge list with --oracle hypergraph)")->required();
    certify_cmd->add_option("--truth", cert_truth, "True labels for every node")->required();
    auto* cert_labeled_opt = certify_cmd->add_option("--labeled", cert_labeled, "Labeled set file");
    certify_cmd->add_option("--nodes", cert_nodes, "Labeled set, comma-separated")->excludes(cert_labeled_opt);
    certify_cmd->add_option("--prediction", cert_prediction, "Predicted labels (default: mincut completion)");
    certify_cmd->add_option("--out", cert_out, "JSON output (default stdout)");

    // experiment
    auto* exp_cmd = app.add_subcommand("experiment", "Mean prediction error over repeated trials");
    std::string exp_graph, exp_truth, exp_methods = "psi-max,random", exp_predictors = "mincut", exp_ks, exp_out,
                exp_gap = "1/10000";
    std::size_t exp_trials = 100;
    std::optional<std::int64_t> exp_positive;
    exp_cmd->add_option("--graph", exp_graph, "Edge list (or hyperedge list with --oracle hypergraph)")->required();
    exp_cmd->add_option("--truth", exp_truth, "True labels for every node")->required();
    exp_cmd->add_option("--method", exp_methods, "Comma-separated: psi-max, random");
    exp_cmd->add_option("--predictor", exp_predictors, "Comma-separated: mincut, labelprop");
    exp_cmd->add_option("--k", exp_ks, "Comma-separated label counts")->required();
    exp_cmd->add_option("--trials", exp_trials, "Trials per configuration")->check(CLI::PositiveNumber);
    exp_cmd->add_option("--rel-gap", exp_gap, "Bisection stopping gap for psi-max");
    exp_cmd->add_option("--positive-class", exp_positive, "One-vs-rest: this class id is 1, others 0");
    exp_cmd->add_option("--out", exp_out, "CSV output (default stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::Success& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kUsage;
    }

    try {
        if (knn->parsed()) {
            auto points = io::read_points(knn_points);
            std::ostringstream out;
            if (knn_weighted)
                io::write_edge_list(out, io::gaussian_knn_graph(points, knn_k));
            else
                io::write_edge_list(out, io::knn_graph(points, knn_k));
            emit(knn_out, out.str());
        } else if (ratings->parsed()) {
            auto result = io::ratings_to_hypergraph(io::read_ratings(ratings_in), min_ratings);
            std::ostringstream out;
            io::write_hyperedge_list(out, result.hypergraph);
            if (ratings_out.empty()) {
                std::cout << out.str();
            } else {
                emit(ratings_out, out.str());
                std::cout << "nodes\t" << result.hypergraph.node_count() << "\nhyperedges\t"
                          << result.hypergraph.edges().size() << '\n';
            }
            if (!ratings_items.empty()) {
                std::ostringstream items;
                for (node_t v = 0; v < result.item_of_node.size(); ++v)
                    items << v << '\t' << result.item_of_node[v] << '\n';
                emit(ratings_items, items.str());
            }
        } else if (psi_cmd->parsed()) {
            LoadedOracle loaded = load_oracle(globals, psi_graph);
            NodeSet s = load_set(psi_set_file, psi_nodes, loaded.oracle.universe());
            PsiCertificate cert = compute_psi(loaded.oracle, s);
            json doc{{"set", set_json(s)},
                     {"psi", ratio_json(loaded.to_user(cert.psi))},
                     {"witness", set_json(cert.witness)},
                     {"iterations", cert.iterations}};
            emit(psi_out, doc.dump(2) + "\n");
        } else if (select_cmd->parsed()) {
            if (sel_target.empty() == (sel_budget == 0))
                throw CLI::ValidationError("select", "exactly one of --target-psi or --budget is required");
            LoadedOracle loaded = load_oracle(globals, sel_graph);
            const GreedyMode mode = sel_naive ? GreedyMode::naive : GreedyMode::lazy;
            SelectionResult r =
                sel_target.empty()
                    ? select_budget(loaded.oracle, sel_budget, Ratio::parse(sel_gap), mode)
                    : select_target(loaded.oracle, loaded.from_user(Ratio::parse(sel_target)), mode);
            json trace = json::array();
            for (const auto& step : r.trace)
                trace.push_back({{"node", step.node}, {"f_lambda", ratio_json(loaded.to_user(step.f_after))}});
            json doc{{"chosen", set_json(r.chosen)},
                     {"psi", ratio_json(loaded.to_user(r.achieved.psi))},
                     {"lambda", r.target_lambda ? ratio_json(loaded.to_user(*r.target_lambda)) : json(nullptr)},
                     {"trace", trace},
                     {"evaluations", r.oracle_evaluations}};
            emit(sel_out, doc.dump(2) + "\n");
        } else if (predict_cmd->parsed()) {
            Labeling predicted;
            if (pred_method == "mincut") {
                CutOracle oracle = load_oracle(globals, pred_graph).oracle;
                predicted = mincut_predict(oracle, io::read_labels(pred_labels, oracle.universe(), pred_positive));
            } else {
                if (globals.oracle == "hypergraph")
                    throw InvalidInput("label propagation needs a graph, not a hypergraph");
                RealGraph g = io::read_edge_list(pred_graph).to_real_graph();
                predicted = label_prop_predict(g, io::read_labels(pred_labels, g.node_count(), pred_positive));
            }
            std::ostringstream out;
            io::write_labels(out, predicted);
            emit(pred_out, out.str());
        } else if (certify_cmd->parsed()) {
            LoadedOracle loaded = load_oracle(globals, cert_graph);
            const CutOracle& oracle = loaded.oracle;
            const std::size_t n = oracle.universe();
            Labeling truth = io::read_labels(cert_truth, n);
            if (!truth.is_total())
                throw IncompleteLabeling("--truth must label every node");
            NodeSet labeled = load_set(cert_labeled, cert_nodes, n);
            Labeling prediction = cert_prediction.empty() ? mincut_predict(oracle, truth.restricted(labeled))
                                                          : io::read_labels(cert_prediction, n);
            if (!prediction.is_total())
                throw IncompleteLabeling("--prediction must label every node");
            PredictionReport r = error_certificate(oracle, labeled, truth, prediction);
            json doc{{"labeled", set_json(r.labeled)},
                     {"prediction", labels_json(prediction)},
                     {"disagreements", r.disagreements},
                     {"phi_truth", ratio_json(loaded.to_user(Ratio(r.phi_truth)))},
                     {"phi_predicted", ratio_json(loaded.to_user(Ratio(r.phi_predicted)))},
                     {"psi", ratio_json(loaded.to_user(r.psi.psi))},
                     {"witness", set_json(r.psi.witness)},
                     {"bound", ratio_json(r.bound)},
                     {"mincut_bound", ratio_json(r.mincut_bound)},
                     {"vacuous", r.vacuous},
                     {"bound_holds", r.bound_holds}};
            emit(cert_out, doc.dump(2) + "\n");
        } else if (exp_cmd->parsed()) {
            io::ExperimentData data;
            if (globals.oracle == "hypergraph") {
                data.hypergraph = io::read_hyperedge_list(exp_graph);
            } else {
                io::EdgeList list = io::read_edge_list(exp_graph);
                data.graph = list.to_integer_graph();
                data.real_graph = list.to_real_graph();
            }
            data.truth = io::read_labels(exp_truth, data.node_count(), exp_positive);
            io::ExperimentSpec spec;
            spec.methods.clear();
            for (const auto& m : split_list(exp_methods))
                spec.methods.push_back(io::parse_method(m));
            spec.predictors.clear();
            for (const auto& p : split_list(exp_predictors))
                spec.predictors.push_back(io::parse_predictor(p));
            for (const auto& k : split_list(exp_ks)) {
                try {
                    spec.label_counts.push_back(std::stoul(k));
                } catch (const std::exception&) {
                    throw CLI::ValidationError("--k", "invalid label count '" + k + "'");
                }
            }
            spec.trials = exp_trials;
            spec.seed = globals.seed;
            spec.rel_gap = Ratio::parse(exp_gap);
            std::ostringstream out;
            io::write_experiment_csv(out, io::run_experiment(data, spec));
            emit(exp_out, out.str());
        }
    } catch (const CLI::ValidationError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kUsage;
    } catch (const DeskScaleLimit& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kDeskScale;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kData;
    }
    return kOk;
}
