#include "cli.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <numeric>
#include <optional>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "hypermetric/comparison.hpp"
#include "hypermetric/complexes.hpp"
#include "hypermetric/error.hpp"
#include "hypermetric/io.hpp"
#include "hypermetric/metric_space.hpp"
#include "hypermetric/persistence.hpp"
#include "hypermetric/random.hpp"
#include "hypermetric/reports.hpp"
#include "hypermetric/scaling.hpp"
#include "hypermetric/tight_span.hpp"

namespace hypermetric::cli {

namespace {

using nlohmann::json;

struct Selection {
  std::string spec = "all";
  std::size_t count = 0;
};

struct RunConfig {
  std::string command;
  std::string input;
  std::string output;
  Selection landmarks;
  Selection witnesses;
  std::string radii = "gromov";
  std::uint64_t seed = 0;
  std::optional<double> tau;

  // generate
  std::string kind;
  std::size_t m = 0;
  double length = 0.0;
  std::size_t n = 0;
  std::string edges_file;
  std::string points_file;
  std::size_t rows = 0;
  std::size_t cols = 0;
  double step = 1.0;
  double radius = 1.0;
  std::string norm = "euclidean";
  int max_weight = 3;

  // analyze
  std::string triples;
  bool curvature = false;
  std::string helly;
  std::size_t cap = 2'000'000;
  double tau_curv = 1e-9;

  // tightspan
  std::string off;
  std::size_t n_cap = 7;
  double tau_face = 1e-9;

  // persist / gap
  std::string complex = "vr";
  std::size_t max_dim = 3;
  std::size_t gap_max_dim = 2;
  std::string scales;
  std::string summary;
  bool keep_zero_length = false;
};

int exit_code(Errc code) {
  switch (code) {
    case Errc::IoError:
    case Errc::ParseError:
      return kIo;
    case Errc::SizeCapExceeded:
      return kResourceCap;
    default:
      return kDomain;
  }
}

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> parts;
  std::string part;
  std::istringstream in(text);
  while (std::getline(in, part, sep)) parts.push_back(part);
  return parts;
}

template <class T>
T parse_number(const std::string& text, const char* what) {
  T value{};
  const auto* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc() || ptr != end || text.empty()) {
    throw Error(Errc::ParseError, std::string("bad ") + what + ": '" + text + "'");
  }
  return value;
}

std::vector<PointId> parse_indices(const std::string& text, std::size_t n) {
  std::vector<PointId> out;
  for (const auto& part : split(text, ',')) {
    const auto id = parse_number<std::size_t>(part, "index");
    if (id >= n) throw Error(Errc::InvalidArgument, {id}, "index out of range");
    out.push_back(id);
  }
  return out;
}

// "all", an explicit index list, or `count` indices drawn by a seeded
// Fisher-Yates shuffle (returned sorted).
std::vector<PointId> resolve(const Selection& sel, std::size_t n, std::uint64_t seed,
                             const std::vector<PointId>* landmarks = nullptr) {
  if (sel.count > 0) {
    if (sel.count > n) throw Error(Errc::InvalidArgument, {sel.count}, "selection count exceeds the space size");
    std::vector<PointId> order(n);
    std::iota(order.begin(), order.end(), PointId{0});
    Rng rng(seed);
    for (std::size_t i = 0; i < sel.count; ++i) std::swap(order[i], order[i + rng.index(n - i)]);
    order.resize(sel.count);
    std::sort(order.begin(), order.end());
    return order;
  }
  if (sel.spec == "all") {
    std::vector<PointId> all(n);
    std::iota(all.begin(), all.end(), PointId{0});
    return all;
  }
  if (sel.spec == "landmarks" && landmarks != nullptr) return *landmarks;
  if (sel.spec.empty()) return {};
  return parse_indices(sel.spec, n);
}

// Per-landmark radii from "uniform:R" or a JSON file holding an array (or
// {"radii": [...]}) aligned with the landmarks.
std::vector<double> explicit_radii(const std::string& rule, std::size_t count) {
  std::vector<double> radii;
  if (rule.rfind("uniform:", 0) == 0) {
    radii.assign(count, parse_number<double>(rule.substr(8), "radius"));
  } else {
    const json doc = io::read_json(rule);
    try {
      radii = (doc.is_object() ? doc.at("radii") : doc).get<std::vector<double>>();
    } catch (const json::exception& e) {
      throw Error(Errc::ParseError, std::string("radii file: ") + e.what());
    }
  }
  if (radii.size() != count) throw Error(Errc::LengthMismatch, "radii do not match the landmark count");
  for (std::size_t i = 0; i < radii.size(); ++i) {
    if (!(radii[i] > 0.0) || !std::isfinite(radii[i])) throw Error(Errc::NonpositiveRadius, {i}, "radii must be positive");
  }
  return radii;
}

std::vector<double> parse_reals(const std::string& text) {
  std::vector<double> out;
  for (const auto& part : split(text, ',')) out.push_back(parse_number<double>(part, "real"));
  return out;
}

void emit(const std::string& path, const std::string& text, std::ostream& out) {
  if (path.empty()) {
    out << text;
  } else {
    io::write_text(path, text);
  }
}

json base_config(const RunConfig& c) {
  json cfg = {{"command", c.command}, {"input", c.input}, {"seed", c.seed}};
  cfg["tau"] = c.tau ? json(*c.tau) : json(nullptr);
  return cfg;
}

json selection_config(const Selection& sel, const std::vector<PointId>& resolved) {
  return {{"spec", sel.spec}, {"count", sel.count}, {"resolved", resolved}};
}

int cmd_validate(const RunConfig& c, std::ostream& out) {
  const auto space = io::load_space(c.input, c.tau);
  out << "valid metric: " << space.size() << " points, diameter " << io::format_real(space.diameter()) << "\n";
  return kOk;
}

int cmd_generate(const RunConfig& c, std::ostream& out) {
  std::optional<FiniteMetricSpace> space;
  if (c.kind == "circle") {
    space = sample_circle(c.m, c.length);
  } else if (c.kind == "random") {
    space = random_metric(c.n, c.seed);
  } else if (c.kind == "sphere") {
    space = sample_sphere(c.n, c.radius);
  } else if (c.kind == "tree") {
    if (!c.edges_file.empty()) {
      const auto graph = io::graph_from_json(io::read_json(c.edges_file));
      space = graph_metric(graph.vertices, graph.edges);
    } else {
      const auto edges = random_tree_edges(c.n, c.seed, c.max_weight);
      space = graph_metric(c.n, edges);
    }
  } else if (c.kind == "cloud") {
    const Norm norm = c.norm == "max" ? Norm::Max : c.norm == "sum" ? Norm::Sum : Norm::Euclidean;
    if (c.norm != "euclidean" && c.norm != "max" && c.norm != "sum") {
      throw Error(Errc::InvalidArgument, "norm must be euclidean, max or sum");
    }
    std::vector<std::vector<double>> points;
    if (!c.points_file.empty()) {
      const json doc = io::read_json(c.points_file);
      try {
        points = (doc.is_object() ? doc.at("points") : doc).get<std::vector<std::vector<double>>>();
      } catch (const json::exception& e) {
        throw Error(Errc::ParseError, std::string("points file: ") + e.what());
      }
    } else {
      points = grid_points(c.rows, c.cols, c.step);
    }
    space = point_cloud_metric(points, norm);
  } else {
    throw Error(Errc::InvalidArgument, "unknown kind '" + c.kind + "'");
  }
  const bool as_json = c.output.size() >= 5 && c.output.ends_with(".json");
  emit(c.output, as_json ? io::dump_json(io::space_to_json(*space)) : io::space_to_csv(*space), out);
  return kOk;
}

json triple_entry(const FiniteMetricSpace& space, const std::array<PointId, 3>& t, std::span<const PointId> witnesses,
                  const RunConfig& c) {
  const auto [i, j, k] = t;
  json entry = {{"triple", t}};
  const auto rho = rho_triple(space, i, j, k, witnesses, DegeneratePolicy::ExactHit);
  const auto g = gromov_radii(space(i, j), space(i, k), space(j, k));
  entry["radii"] = {g[0], g[1], g[2]};
  entry["rho"] = report::real(rho.value);
  entry["witness"] = rho.witness;
  entry["degenerate"] = rho.degenerate;
  if (rho.degenerate) {
    entry["error"] = Error(Errc::DegenerateTriple, {i, j, k}).tag();
    entry["delta"] = nullptr;
  } else {
    const BallFamily family(space, {i, j, k}, {g[0], g[1], g[2]});
    entry["delta"] = report::real(delta_scaling(family, witnesses).value);
  }
  if (c.curvature) {
    entry["verdict"] =
        report::to_json(curvature_verdict(space, t, witnesses, c.tau_curv, ComparisonModel::Euclidean,
                                          DegeneratePolicy::ExactHit));
  }
  return entry;
}

int cmd_analyze(const RunConfig& c, std::ostream& out) {
  const auto space = io::load_space(c.input, c.tau);
  const auto landmarks = resolve(c.landmarks, space.size(), c.seed);
  const auto witnesses = resolve(c.witnesses, space.size(), c.seed + 1, &landmarks);

  json cfg = base_config(c);
  cfg["landmarks"] = selection_config(c.landmarks, landmarks);
  cfg["witnesses"] = selection_config(c.witnesses, witnesses);
  cfg["triples"] = c.triples;
  cfg["curvature"] = c.curvature;
  cfg["helly"] = c.helly;
  cfg["radii"] = c.radii;
  cfg["cap"] = c.cap;
  cfg["tau_curv"] = c.tau_curv;
  json doc = {{"config", cfg}};

  if (!c.triples.empty()) {
    std::vector<std::array<PointId, 3>> triples;
    if (c.triples == "all") {
      for (std::size_t a = 0; a < landmarks.size(); ++a) {
        for (std::size_t b = a + 1; b < landmarks.size(); ++b) {
          for (std::size_t d = b + 1; d < landmarks.size(); ++d) triples.push_back({landmarks[a], landmarks[b], landmarks[d]});
        }
      }
    } else {
      for (const auto& group : split(c.triples, ';')) {
        const auto ids = parse_indices(group, space.size());
        if (ids.size() != 3) throw Error(Errc::InvalidArgument, ids, "a triple needs three indices");
        triples.push_back({ids[0], ids[1], ids[2]});
      }
    }
    json entries = json::array();
    std::optional<double> max_rho;
    bool all_nonpositive = true;
    for (const auto& t : triples) {
      auto entry = triple_entry(space, t, witnesses, c);
      const double rho = entry["rho"].is_number() ? entry["rho"].get<double>() : std::numeric_limits<double>::infinity();
      max_rho = std::max(max_rho.value_or(rho), rho);
      if (c.curvature) all_nonpositive = all_nonpositive && entry["verdict"]["nonpositive"].get<bool>();
      entries.push_back(std::move(entry));
    }
    doc["triples"] = entries;
    doc["summary"] = {{"triples", triples.size()}, {"max_rho", max_rho ? report::real(*max_rho) : json(nullptr)}};
    if (c.curvature) doc["summary"]["all_nonpositive"] = all_nonpositive;
  }

  if (!c.helly.empty()) {
    const auto nk = parse_indices(c.helly, std::numeric_limits<std::size_t>::max());
    if (nk.size() != 2) throw Error(Errc::InvalidArgument, "--helly expects n,k");
    HellyReport helly;
    if (c.radii == "gromov") {
      helly = helly_defect(space, nk[0], nk[1], witnesses, HellyRadiiRule::GromovPairwise, {}, {c.cap, c.seed});
    } else {
      const auto radii = explicit_radii(c.radii, space.size());
      helly = helly_defect(space, nk[0], nk[1], witnesses, HellyRadiiRule::Explicit, radii, {c.cap, c.seed});
    }
    doc["helly"] = report::to_json(helly);
  }

  if (c.triples.empty() && c.helly.empty()) {
    doc["summary"] = report::to_json(max_triple_deviation(space, witnesses, {c.cap, c.seed}));
  }
  emit(c.output, io::dump_json(doc), out);
  return kOk;
}

int cmd_tightspan(const RunConfig& c, std::ostream& out) {
  const auto space = io::load_space(c.input, c.tau);
  const auto complex = enumerate_faces(space, {c.n_cap, c.tau_face});
  json cfg = base_config(c);
  cfg["cap"] = c.n_cap;
  cfg["tau_face"] = c.tau_face;
  cfg["off"] = c.off;
  json doc = report::to_json(complex);
  doc["config"] = cfg;
  emit(c.output, io::dump_json(doc), out);
  if (!c.off.empty()) io::write_text(c.off, to_off(complex));
  return kOk;
}

int cmd_persist(const RunConfig& c, std::ostream& out) {
  const auto space = io::load_space(c.input, c.tau);
  const auto landmarks = resolve(c.landmarks, space.size(), c.seed);
  FilteredComplex filtered;
  std::vector<PointId> witnesses;
  if (c.complex == "vr") {
    filtered = vr_filtration(space, landmarks, c.max_dim);
  } else if (c.complex == "cech") {
    witnesses = resolve(c.witnesses, space.size(), c.seed + 1, &landmarks);
    filtered = cech_filtration(space, landmarks, witnesses, c.max_dim);
  } else if (c.complex == "cech-hull") {
    filtered = cech_hull_filtration(space, landmarks, c.max_dim);
  } else {
    throw Error(Errc::InvalidArgument, "complex must be vr, cech or cech-hull");
  }
  const auto result = persistence(filtered, c.keep_zero_length);
  emit(c.output, barcode_csv(result.pairs), out);

  if (!c.scales.empty() || !c.summary.empty()) {
    json cfg = base_config(c);
    cfg["complex"] = c.complex;
    cfg["max_dim"] = c.max_dim;
    cfg["landmarks"] = selection_config(c.landmarks, landmarks);
    cfg["witnesses"] = selection_config(c.witnesses, witnesses);
    cfg["scales"] = c.scales;
    cfg["keep_zero_length"] = c.keep_zero_length;
    cfg["output"] = c.output;
    json curves = json::array();
    for (double scale : c.scales.empty() ? std::vector<double>{} : parse_reals(c.scales)) {
      curves.push_back({{"scale", scale}, {"betti", betti_from_pairs(result.pairs, scale, c.max_dim)}});
    }
    json doc = {{"config", cfg},
                {"betti", curves},
                {"pairs", result.pairs.size()},
                {"simplices", filtered.simplices.size()},
                {"column_additions", result.column_additions}};
    emit(c.summary, io::dump_json(doc), out);
  }
  return kOk;
}

int cmd_gap(const RunConfig& c, std::ostream& out) {
  const auto space = io::load_space(c.input, c.tau);
  const auto landmarks = resolve(c.landmarks, space.size(), c.seed);
  const auto witnesses = resolve(c.witnesses, space.size(), c.seed + 1, &landmarks);
  const GapRadii radii =
      c.radii == "gromov" ? GapRadii::gromov() : GapRadii::explicit_radii(explicit_radii(c.radii, landmarks.size()));
  const auto gap = vr_cech_gap(space, landmarks, witnesses, radii, c.gap_max_dim);

  json cfg = base_config(c);
  cfg["landmarks"] = selection_config(c.landmarks, landmarks);
  cfg["witnesses"] = selection_config(c.witnesses, witnesses);
  cfg["radii"] = c.radii;
  cfg["max_dim"] = c.gap_max_dim;
  json doc = report::to_json(gap);
  doc["config"] = cfg;
  emit(c.output, io::dump_json(doc), out);
  return kOk;
}

void add_common(CLI::App* sub, RunConfig& c, bool output = true) {
  sub->add_option("input", c.input, "Space file (.csv or .json)")->required();
  sub->add_option("--tau", c.tau, "Absolute slack for the metric checks");
  if (output) sub->add_option("-o,--output", c.output, "Output path (stdout if omitted)");
}

void add_selection(CLI::App* sub, RunConfig& c, bool with_witnesses) {
  sub->add_option("--landmarks", c.landmarks.spec, "all or i,j,k,...");
  sub->add_option("--landmark-count", c.landmarks.count, "Draw this many landmarks with --seed");
  if (with_witnesses) {
    sub->add_option("--witnesses", c.witnesses.spec, "all, landmarks, or i,j,k,...");
    sub->add_option("--witness-count", c.witnesses.count, "Draw this many witnesses with --seed");
  }
  sub->add_option("--seed", c.seed, "Seed for sampled selections and scans");
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Hyperconvexity and intersection-scaling analysis of finite metric spaces", "hypermetric"};
  app.require_subcommand(1);
  RunConfig c;

  auto* validate = app.add_subcommand("validate", "Check the metric axioms");
  add_common(validate, c, false);

  auto* generate = app.add_subcommand("generate", "Write a generated space");
  generate->add_option("--kind", c.kind, "circle, tree, cloud, random or sphere")->required();
  generate->add_option("--m", c.m, "Circle sample count");
  generate->add_option("--L", c.length, "Circle circumference");
  generate->add_option("--n", c.n, "Point count (random, tree, sphere)");
  generate->add_option("--seed", c.seed, "Seed for random kinds");
  generate->add_option("--edges", c.edges_file, "Tree edges JSON {\"n\", \"edges\": [[i,j,w],...]}");
  generate->add_option("--max-weight", c.max_weight, "Largest random tree edge weight");
  generate->add_option("--points", c.points_file, "Cloud coordinates JSON");
  generate->add_option("--rows", c.rows, "Grid cloud rows");
  generate->add_option("--cols", c.cols, "Grid cloud columns");
  generate->add_option("--step", c.step, "Grid cloud spacing");
  generate->add_option("--radius", c.radius, "Sphere radius");
  generate->add_option("--norm", c.norm, "euclidean, max or sum");
  generate->add_option("-o,--output", c.output, "CSV, or JSON when the name ends in .json (stdout if omitted)");

  auto* analyze = app.add_subcommand("analyze", "Intersection scaling and curvature report");
  add_common(analyze, c);
  add_selection(analyze, c, true);
  analyze->add_option("--triples", c.triples, "all (over landmarks) or i,j,k[;i,j,k...]");
  analyze->add_flag("--curvature", c.curvature, "Add comparison-triangle verdicts");
  analyze->add_option("--helly", c.helly, "n,k Helly defect scan");
  analyze->add_option("--radii", c.radii, "gromov, uniform:R or a JSON file with one radius per point");
  analyze->add_option("--cap", c.cap, "Subset cap before sampling");
  analyze->add_option("--tau-curv", c.tau_curv, "Margin allowed for a non-positive verdict");

  auto* tightspan = app.add_subcommand("tightspan", "Enumerate the faces of the tight span");
  add_common(tightspan, c);
  tightspan->add_option("--off", c.off, "Also write an OFF polygon file");
  tightspan->add_option("--cap", c.n_cap, "Largest accepted point count");
  tightspan->add_option("--tau-face", c.tau_face, "Relative slack for vertex feasibility and tightness");

  auto* persist = app.add_subcommand("persist", "Barcode of a uniform-radius filtration");
  add_common(persist, c);
  add_selection(persist, c, true);
  persist->add_option("--complex", c.complex, "vr, cech or cech-hull");
  persist->add_option("--max-dim", c.max_dim, "Largest simplex dimension");
  persist->add_option("--scales", c.scales, "Comma-separated scales for Betti curves");
  persist->add_option("--summary", c.summary, "Betti summary JSON path (stdout if omitted)");
  persist->add_flag("--keep-zero-length", c.keep_zero_length, "Report pairs with birth equal to death");

  auto* gap = app.add_subcommand("gap", "VR simplices missing from the Čech complex");
  add_common(gap, c);
  add_selection(gap, c, true);
  gap->add_option("--radii", c.radii, "gromov, uniform:R or a JSON file aligned with the landmarks");
  gap->add_option("--max-dim", c.gap_max_dim, "Largest simplex dimension");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kIo;
  }

  try {
    if (validate->parsed()) c.command = "validate";
    if (generate->parsed()) c.command = "generate";
    if (analyze->parsed()) c.command = "analyze";
    if (tightspan->parsed()) c.command = "tightspan";
    if (persist->parsed()) c.command = "persist";
    if (gap->parsed()) c.command = "gap";

    if (c.command == "validate") return cmd_validate(c, out);
    if (c.command == "generate") return cmd_generate(c, out);
    if (c.command == "analyze") return cmd_analyze(c, out);
    if (c.command == "tightspan") return cmd_tightspan(c, out);
    if (c.command == "persist") return cmd_persist(c, out);
    return cmd_gap(c, out);
  } catch (const Error& e) {
    err << e.what() << "\n";
    return exit_code(e.code());
  } catch (const std::bad_alloc&) {
    err << "out of memory\n";
    return kResourceCap;
  }
}

}  // namespace hypermetric::cli
