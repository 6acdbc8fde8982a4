#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"
#include "vernation/calculus.hpp"
#include "vernation/combinatorics.hpp"
#include "vernation/experiments.hpp"
#include "vernation/gh.hpp"
#include "vernation/metrics.hpp"
#include "vernation/randgen.hpp"
#include "vernation/render.hpp"
#include "vernation/space.hpp"

namespace {

using namespace vernation;

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void emit(const std::string& out_path, const std::string& text) {
  if (out_path.empty() || out_path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(out_path);
  if (!out) throw std::runtime_error("cannot write " + out_path);
  out << text;
}

std::vector<int> read_child_counts(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::vector<int> counts;
  std::string token;
  while (in >> token) {
    for (char& c : token)
      if (c == ',') c = ' ';
    std::istringstream ss(token);
    int v;
    while (ss >> v) counts.push_back(v);
  }
  return counts;
}

MetricKind metric_from(const std::string& name, double coef, const std::string& shuffle_spec) {
  std::optional<Shuffle> shuffle;
  if (!shuffle_spec.empty()) shuffle = Shuffle::parse(shuffle_spec);
  return MetricKind::parse(name, coef, shuffle);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"trees, looptrees, and vernation trees coded by excursions"};
  app.require_subcommand(1);

  std::uint64_t seed = 1;
  double tol = 1e-9;
  int samples = 256;
  std::string out_path;
  app.add_option("--seed", seed, "rng seed");
  app.add_option("--tol", tol, "comparison tolerance");
  app.add_option("--samples", samples, "sampling resolution");
  app.add_option("--out", out_path, "output file (default stdout)");

  // validate
  auto* validate = app.add_subcommand("validate", "validate an excursion JSON file");
  std::string validate_input;
  validate->add_option("input", validate_input)->required();

  // eval
  auto* eval = app.add_subcommand("eval", "evaluate f(t), f(t-), and the jump");
  std::string eval_input;
  double eval_at = 0.0;
  eval->add_option("input", eval_input)->required();
  eval->add_option("--at", eval_at, "time in [0,1]")->required();

  // matrix
  auto* matrix_cmd = app.add_subcommand("matrix", "pseudo-distance matrix as CSV");
  std::string matrix_input, matrix_metric = "vern", matrix_shuffle;
  double matrix_coef = 2.0;
  matrix_cmd->add_option("input", matrix_input)->required();
  matrix_cmd->add_option("--metric", matrix_metric,
                         "classic|tree|loop|vern|loop-shuffled|vern-shuffled");
  matrix_cmd->add_option("--coef", matrix_coef, "loop coefficient in vern distances");
  matrix_cmd->add_option("--shuffle", matrix_shuffle,
                         "default | identity-eps:<e> | sibling:<k>,<a>");

  // decompose
  auto* decompose_cmd = app.add_subcommand("decompose", "continuous + PJG parts and class");
  std::string decompose_input;
  decompose_cmd->add_option("input", decompose_input)->required();

  // space
  auto* space_cmd = app.add_subcommand("space", "quotient finite metric space JSON");
  std::string space_input, space_metric = "vern", space_shuffle;
  double space_coef = 2.0;
  space_cmd->add_option("input", space_input)->required();
  space_cmd->add_option("--metric", space_metric);
  space_cmd->add_option("--coef", space_coef);
  space_cmd->add_option("--shuffle", space_shuffle);

  // gh
  auto* gh_cmd = app.add_subcommand("gh", "GH bounds between two finite spaces");
  std::string gh_x, gh_y;
  int gh_exact_max = 6;
  gh_cmd->add_option("x", gh_x)->required();
  gh_cmd->add_option("y", gh_y)->required();
  gh_cmd->add_option("--exact-max", gh_exact_max, "exact search cap");

  // tree
  auto* tree_cmd = app.add_subcommand("tree", "w(tau), Loop(tau), distance checks");
  std::string tree_input;
  tree_cmd->add_option("input", tree_input, "child-count file (depth-first)")->required();

  // experiment
  auto* exp_cmd = app.add_subcommand("experiment", "run a named experiment");
  std::string exp_name;
  double exp_alpha = 1.5;
  std::vector<int> exp_sizes;
  exp_cmd->add_option("name", exp_name,
                      "chain-bouquet|finite-jumps|pjg-limit|invariance|mapping")
      ->required();
  exp_cmd->add_option("--alpha", exp_alpha, "stable tail exponent");
  exp_cmd->add_option("--n", exp_sizes, "size grid override");

  // render
  auto* render_cmd = app.add_subcommand("render", "emit an SVG plot");
  std::string render_input, render_what = "excursion";
  double render_coef = 2.0;
  render_cmd->add_option("input", render_input)->required();
  render_cmd->add_option("--what", render_what, "excursion|looptree|vernation");
  render_cmd->add_option("--coef", render_coef);

  CLI11_PARSE(app, argc, argv);

  try {
    if (*validate) {
      const Excursion f = excursion_from_json(slurp(validate_input));
      nlohmann::ordered_json j;
      j["valid"] = true;
      j["breakpoints"] = f.size();
      j["jumps"] = f.jumps().size();
      j["sup"] = f.sup();
      j["class"] = to_string(classify(f, tol));
      emit(out_path, j.dump(2) + "\n");
    } else if (*eval) {
      const Excursion f = excursion_from_json(slurp(eval_input));
      const Evaluation e = f.evaluate(eval_at);
      nlohmann::ordered_json j;
      j["t"] = eval_at;
      j["value"] = e.value;
      j["left_limit"] = e.left_limit;
      j["jump"] = e.jump;
      emit(out_path, j.dump(2) + "\n");
    } else if (*matrix_cmd) {
      const Excursion f = excursion_from_json(slurp(matrix_input));
      const MetricKind kind = metric_from(matrix_metric, matrix_coef, matrix_shuffle);
      emit(out_path, to_csv(matrix(f, kind, build_sample_times(f, samples, 8))));
    } else if (*decompose_cmd) {
      const Excursion f = excursion_from_json(slurp(decompose_input));
      const Decomposition d = decompose(f);
      nlohmann::ordered_json j;
      j["class"] = to_string(classify(f, tol));
      j["continuous_part"] = nlohmann::json::parse(to_json(d.continuous_part));
      j["pjg_part"] = nlohmann::json::parse(to_json(d.pjg_part));
      emit(out_path, j.dump(2) + "\n");
    } else if (*space_cmd) {
      const Excursion f = excursion_from_json(slurp(space_input));
      const MetricKind kind = metric_from(space_metric, space_coef, space_shuffle);
      const FiniteSpace x =
          quotient_space(f, kind, build_sample_times(f, samples, 8), tol);
      emit(out_path, to_json(x) + "\n");
    } else if (*gh_cmd) {
      const FiniteSpace x = finite_space_from_json(slurp(gh_x));
      const FiniteSpace y = finite_space_from_json(slurp(gh_y));
      nlohmann::ordered_json j;
      j["lower"] = gh_lower(x, y);
      j["upper"] = parametrized_upper(x, y);
      if (int(x.size()) <= gh_exact_max && int(y.size()) <= gh_exact_max)
        j["exact"] = gh_exact_small(x, y, gh_exact_max);
      emit(out_path, j.dump(2) + "\n");
    } else if (*tree_cmd) {
      const PlaneTree tree = parse_tree(read_child_counts(tree_input));
      const WalkCoding w = w_process(tree);
      const LoopGraph g = loop_graph(tree);
      nlohmann::ordered_json j;
      j["size"] = tree.size();
      j["time_scale"] = w.time_scale;
      j["w_excursion"] = nlohmann::json::parse(to_json(w.excursion));
      j["loop_edges"] = nlohmann::json::array();
      for (const auto& [a, b] : g.edges) j["loop_edges"].push_back({a, b});
      j["cactus"] = is_cactus(g);
      // spot check: graph metric against d_loop at first-visit times
      bool match = true;
      for (int u = 0; u < tree.size() && match; ++u)
        for (int v = u + 1; v < tree.size() && match; ++v)
          match = double(bfs_distance(g, u, v)) ==
                  d_loop(w.excursion, w.first_visit[u], w.first_visit[v]);
      j["loop_metric_matches_graph"] = match;
      emit(out_path, j.dump(2) + "\n");
    } else if (*exp_cmd) {
      ExperimentParams params;
      params.seed = {seed, 0};
      params.samples = samples;
      params.tol = tol;
      params.alpha = exp_alpha;
      params.sizes = exp_sizes;
      const ExperimentReport report = run_experiment(exp_name, params);
      emit(out_path, report.to_json() + "\n");
      if (!out_path.empty() && out_path != "-") {
        std::ofstream csv(out_path + ".csv");
        csv << report.to_csv();
      }
    } else if (*render_cmd) {
      std::string svg;
      if (render_what == "excursion")
        svg = render_excursion(excursion_from_json(slurp(render_input)));
      else if (render_what == "looptree")
        svg = render_looptree(parse_tree(read_child_counts(render_input)));
      else if (render_what == "vernation")
        svg = render_vernation(excursion_from_json(slurp(render_input)), render_coef);
      else
        throw std::invalid_argument("render: unknown --what " + render_what);
      emit(out_path, svg);
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
