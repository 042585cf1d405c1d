#include "cli.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "coarse_menger/acceptance.hpp"
#include "coarse_menger/covering.hpp"
#include "coarse_menger/generators.hpp"
#include "coarse_menger/io.hpp"
#include "coarse_menger/serialize.hpp"
#include "coarse_menger/tangle.hpp"
#include "coarse_menger/transfer.hpp"

namespace coarse_menger::cli {

namespace {

// Options every instance-driven command understands.
struct Source {
  std::string grid;  // "RxC"
  std::string file;
  std::vector<Label> x;
  std::vector<Label> y;
};

void add_source(CLI::App* app, Source& s) {
  app->add_option("--grid", s.grid, "rows x columns grid, e.g. 3x9");
  app->add_option("--file", s.file, "edge list, or .json graph");
  app->add_option("--x", s.x, "X as comma-separated vertex ids")->delimiter(',');
  app->add_option("--y", s.y, "Y as comma-separated vertex ids")->delimiter(',');
}

std::pair<int, int> parse_grid(const std::string& text) {
  auto cut = text.find('x');
  try {
    if (cut == std::string::npos) throw std::invalid_argument(text);
    std::size_t used_r = 0, used_c = 0;
    int rows = std::stoi(text.substr(0, cut), &used_r);
    int cols = std::stoi(text.substr(cut + 1), &used_c);
    if (used_r != cut || used_c != text.size() - cut - 1) throw std::invalid_argument(text);
    return {rows, cols};
  } catch (const std::logic_error&) {
    throw InputError("--grid expects ROWSxCOLS, got '" + text + "'");
  }
}

struct Loaded {
  std::string name;
  Graph graph;
  VertexSet x;
  VertexSet y;
};

// Grid default terminals are the first and last columns.
std::optional<Loaded> load_source(const Source& s) {
  if (!s.grid.empty() && !s.file.empty()) throw InputError("--grid and --file are mutually exclusive");
  Loaded l;
  if (!s.grid.empty()) {
    auto [rows, cols] = parse_grid(s.grid);
    Grid g = grid(rows, cols);
    l = {"grid " + s.grid, g.graph, g.column(0), g.column(cols - 1)};
  } else if (!s.file.empty()) {
    l = {s.file, load_graph(s.file), {}, {}};
  } else {
    return std::nullopt;
  }
  if (!s.x.empty()) l.x = vertices_from_labels(l.graph, s.x);
  if (!s.y.empty()) l.y = vertices_from_labels(l.graph, s.y);
  return l;
}

json caps_json(const Caps& c) {
  return {{"centered", c.centered_exact_vertices}, {"paths", c.path_enumeration_vertices},
          {"gallai", c.gallai_vertices},           {"models", c.model_vertices},
          {"connected", c.connected_set_vertices}, {"separations", c.separation_vertices},
          {"order", c.separation_order},           {"max_paths", c.max_paths},
          {"nodes", c.search_nodes}};
}

json envelope(const std::string& command, json config) {
  return {{"schema", kReportSchema}, {"version", kLibraryVersion}, {"command", command}, {"config", std::move(config)}};
}

void emit(const json& doc, const std::string& path, std::ostream& out) {
  if (path.empty() || path == "-") {
    out << doc.dump(2) << "\n";
    return;
  }
  std::ofstream file(path);
  if (!file) throw InputError("cannot write '" + path + "'");
  file << doc.dump(2) << "\n";
}

void write_text(const std::string& text, const std::string& path) {
  std::ofstream file(path);
  if (!file) throw InputError("cannot write '" + path + "'");
  file << text;
}

// "1 2 3;4 5" -> two members.
std::vector<VertexSet> parse_members(const Graph& g, const std::string& text) {
  std::vector<VertexSet> out;
  std::stringstream groups(text);
  std::string group;
  while (std::getline(groups, group, ';')) {
    std::stringstream ids(group);
    std::vector<Label> labels;
    std::string token;
    while (ids >> token) {
      try {
        std::size_t used = 0;
        labels.push_back(std::stoll(token, &used));
        if (used != token.size()) throw std::invalid_argument(token);
      } catch (const std::logic_error&) {
        throw InputError("--members: '" + token + "' is not a vertex id");
      }
    }
    if (labels.empty()) throw InputError("--members: empty member");
    out.push_back(vertices_from_labels(g, labels));
  }
  return out;
}

// ---- run-duality ----------------------------------------------------------------------

struct DualityArgs {
  Source source;
  int random = 0;
  std::uint64_t seed = 1;
  int min_vertices = 2;
  int max_vertices = 10;
  double ell = 0;
  std::vector<double> r{1};
  std::vector<double> beta{0};
  bool strict = false;
  int jobs = 1;
  std::string out;
  std::string csv;
};

int run_duality(const DualityArgs& a, const Caps& caps, std::ostream& out, std::ostream& err) {
  std::vector<Loaded> instances;
  if (auto one = load_source(a.source)) {
    if (one->x.empty() || one->y.empty()) throw InputError("--x and --y are required with --file");
    instances.push_back(std::move(*one));
  }
  if (a.random < 0) throw InputError("--random must be nonnegative");
  if (a.random > 0) {
    RandomOptions o;
    o.min_vertices = a.min_vertices;
    o.max_vertices = a.max_vertices;
    o.connected = true;
    int index = 0;
    for (auto& spec : random_instances(a.seed, a.random, o))
      instances.push_back({"random " + std::to_string(index++), spec.graph, spec.x, spec.y});
  }
  for (double t : a.r)
    if (!(t > 0)) throw InputError("--r values must be positive");
  for (double t : a.beta)
    if (t < 0) throw InputError("--beta values must be nonnegative");

  std::vector<DualityReport> reports(instances.size());
  parallel_for(static_cast<int>(instances.size()), a.jobs, [&](int i) {
    const auto& inst = instances[i];
    reports[i] = duality_sweep(inst.graph, inst.x, inst.y, a.ell, a.r, a.beta, caps);
  });
  std::vector<std::size_t> order(instances.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t p, std::size_t q) { return reports[p].fingerprint < reports[q].fingerprint; });

  json list = json::array();
  std::string csv = "fingerprint,kind,threshold,value,exact,flag\n";
  std::size_t violations = 0;
  bool capped = false;
  for (std::size_t i : order) {
    json entry = as_json(reports[i]);
    entry["name"] = instances[i].name;
    list.push_back(entry);
    violations += weak_duality_violations(reports[i]).size();
    capped = capped || reports[i].capacity_hit();
    std::stringstream rows(to_csv(reports[i]));
    std::string line;
    std::getline(rows, line);  // header
    while (std::getline(rows, line))
      if (!line.empty()) csv += reports[i].fingerprint + "," + line + "\n";
  }
  json config = {{"grid", a.source.grid}, {"file", a.source.file}, {"x", a.source.x},     {"y", a.source.y},
                 {"random", a.random},    {"seed", a.seed},        {"ell", a.ell},         {"r", a.r},
                 {"beta", a.beta},        {"strict", a.strict},    {"jobs", a.jobs},       {"caps", caps_json(caps)}};
  json doc = envelope("run-duality", config);
  doc["instances"] = list;
  doc["weak_duality_violations"] = violations;
  doc["capacity_hit"] = capped;
  emit(doc, a.out, out);
  if (!a.csv.empty()) write_text(csv, a.csv);
  if (violations > 0) {
    err << "weak duality violated in " << violations << " cell(s)\n";
    return kViolation;
  }
  if (capped && a.strict) {
    err << "an exact cell hit a capacity limit\n";
    return kCapacity;
  }
  return kOk;
}

// ---- run-acceptance -------------------------------------------------------------------

struct AcceptanceArgs {
  std::uint64_t seed = AcceptanceOptions{}.seed;
  std::vector<std::string> only;
  std::string fault;
  int jobs = 1;
  std::string out;
};

int run_acceptance_command(const AcceptanceArgs& a, const Caps& caps, std::ostream& out) {
  AcceptanceOptions o;
  o.seed = a.seed;
  o.only = a.only;
  o.fault = a.fault;
  o.jobs = a.jobs;
  o.caps = caps;
  auto report = run_acceptance(o);
  out << summary_lines(report);
  if (!a.out.empty()) {
    json doc = envelope("run-acceptance", {{"seed", a.seed},
                                           {"only", a.only},
                                           {"inject_fault", a.fault},
                                           {"jobs", a.jobs},
                                           {"caps", caps_json(caps)}});
    doc["report"] = report.to_json();
    emit(doc, a.out, out);
  }
  return report.passed() ? kOk : kViolation;
}

// ---- run-tangle-lab -------------------------------------------------------------------

struct TangleArgs {
  Source source;
  std::vector<Label> l;
  std::string members;
  std::vector<Label> z;
  bool z_given = false;
  int k = 2;
  int theta = 2;
  std::vector<int> thetas;
  double r = 1;
  double r_prime = -1;
  int xi = -1;
  double eta = 0;
  std::string out;
};

int run_tangle_lab(const TangleArgs& a, const Caps& caps, std::ostream& out) {
  auto loaded = load_source(a.source);
  if (!loaded) throw InputError("run-tangle-lab needs --grid or --file");
  const Graph& g = loaded->graph;
  VertexSet l = a.l.empty() ? g.vertices() : vertices_from_labels(g, a.l);
  std::vector<VertexSet> family;
  if (a.members.empty())
    for (Vertex v : l) family.push_back(VertexSet{v});
  else
    family = parse_members(g, a.members);
  VertexSet z = a.z_given ? vertices_from_labels(g, a.z) : open_neighborhood(g, l);
  const double r_prime = a.r_prime < 0 ? std::ceil(a.r / 2) : a.r_prime;
  const int xi = a.xi < 0 ? static_cast<int>(z.size()) : a.xi;

  json config = {{"grid", a.source.grid}, {"file", a.source.file}, {"l", labels_of(g, l)}, {"z", labels_of(g, z)},
                 {"k", a.k},              {"r", a.r},              {"r_prime", r_prime},    {"xi", xi},
                 {"eta", a.eta},          {"caps", caps_json(caps)}};
  json members = json::array();
  for (const auto& f : family) members.push_back(labels_of(g, f));
  config["members"] = members;

  json doc;
  if (!a.thetas.empty()) {
    config["thetas"] = a.thetas;
    doc = envelope("run-tangle-lab", config);
    // Without --xi, Z serves as its own centers at radius 0.
    CenteredSet zc{z, {}, 0};
    if (a.xi >= 0) {
      auto cert = certify_centered(g, z, xi, a.eta, SearchMode::exact, caps);
      if (!cert) throw PreconditionError("centered", "Z is not (xi, eta)-centered");
      zc = *cert.certificate;
    }
    auto result = tangle_decompose(g, l, family, a.k, a.thetas, a.r, r_prime, zc, caps);
    doc["result"] = as_json(g, result);
    doc["budget"] = multifold_budget(a.thetas, a.k);
  } else {
    config["theta"] = a.theta;
    doc = envelope("run-tangle-lab", config);
    auto result = easy_tangle_trichotomy(g, l, family, a.k, a.theta, a.r, r_prime, CenteredSet{z, {}, 0}, xi, a.eta, caps);
    doc["result"] = as_json(g, result);
    if (result.tangle) {
      auto verdict = verify_tangle(g, *result.tangle, caps);
      doc["tangle_valid"] = verdict.valid;
      if (!verdict) doc["tangle_failure"] = verdict.axiom + ": " + verdict.detail;
    }
  }
  emit(doc, a.out, out);
  if (doc.contains("tangle_valid") && !doc["tangle_valid"].get<bool>()) return kViolation;
  return kOk;
}

// ---- run-transfer ---------------------------------------------------------------------

struct TransferArgs {
  double m = 1;
  double a = 0;
  int k = 2;
  double r = 1;
  double ell = 0;
  double f = 1;
  double g = 1;
  std::string variant = "remote";
  Source source;
  std::string minor;
  std::optional<int> genus;
  bool locally_finite = false;
  std::string out;
};

TransferVariant parse_variant(const std::string& s) {
  if (s == "remote") return TransferVariant::remote;
  if (s == "menger") return TransferVariant::menger;
  if (s == "gallai") return TransferVariant::gallai;
  throw InputError("--variant must be remote, menger or gallai");
}

int run_transfer(const TransferArgs& t, const Caps& caps, std::ostream& out) {
  const auto variant = parse_variant(t.variant);
  auto base = constant_witness(t.f, t.g);
  json config = {{"m", t.m}, {"a", t.a}, {"k", t.k}, {"r", t.r}, {"ell", t.ell}, {"f", t.f}, {"g", t.g},
                 {"variant", t.variant}, {"caps", caps_json(caps)}};
  json doc;
  auto transferred = transfer_witness(t.m, t.a, base, variant);
  auto scaled = scale_witness(base, variant);
  json result = {{"constants", as_json(transfer_constants(t.m, t.a))},
                 {"remote_chain", as_json(remote_chain(t.m, t.a, base, t.k, t.r, t.ell))},
                 {"transferred", {{"f", transferred.f(t.k, t.r, t.ell)}, {"g", transferred.g(t.k, t.r, t.ell)},
                                  {"formula", transferred.provenance}}},
                 {"scaled", {{"f", scaled.f(t.k, t.r, t.ell)}, {"g", scaled.g(t.k, t.r, t.ell)}, {"formula", scaled.provenance}}}};
  if (!t.minor.empty()) {
    ExcludedMinorDescriptor d;
    d.finite_host = !t.locally_finite;
    d.genus = t.genus;
    if (t.minor == "planar") d.planar = d.apex = true;
    else if (t.minor == "apex") d.apex = true;
    else if (t.minor == "linkless" || t.minor == "knotless") d.special = t.minor;
    else if (t.minor != "general") throw InputError("--minor must be planar, apex, general, linkless or knotless");
    config["minor"] = t.minor;
    config["genus"] = t.genus ? json(*t.genus) : json(nullptr);
    config["locally_finite"] = t.locally_finite;
    result["radius_coefficient"] = as_json(c_h_ledger(d));
  }
  bool broken = false;
  if (auto loaded = load_source(t.source)) {
    if (loaded->x.empty() || loaded->y.empty()) throw InputError("--x and --y are required with --file");
    const Graph& g = loaded->graph;
    auto sub = one_subdivision(g);
    const double target_ell = sub.inclusion.m * t.ell + 3 * sub.inclusion.a;
    auto cover = min_ball_hitting(sub.graph, LxyFamily{target_ell, loaded->x, loaded->y}, 0, SearchMode::exact, caps);
    auto pulled = pullback_hitting_set(g, sub.graph, sub.inclusion, cover.certificate.z, t.r, t.ell, loaded->x,
                                       loaded->y, caps);
    json pb = as_json(g, pulled);
    pb["target_hitting_set"] = labels_of(sub.graph, cover.certificate.z);
    pb["hits_every_source_path"] = hits_family(g, LxyFamily{t.ell, loaded->x, loaded->y}, pulled.z);
    broken = !pb["hits_every_source_path"].get<bool>();
    result["pullback"] = pb;
    config["grid"] = t.source.grid;
    config["file"] = t.source.file;
  }
  doc = envelope("run-transfer", config);
  doc["result"] = result;
  emit(doc, t.out, out);
  return broken ? kViolation : kOk;
}

// ---- gen --------------------------------------------------------------------------------

struct GenArgs {
  std::string family = "random";
  std::string grid;
  int r = 3;
  int n = 9;
  int w = 3;
  int count = 1;
  std::uint64_t seed = 1;
  int min_vertices = 2;
  int max_vertices = 10;
  double p = 0.35;
  int max_weight = 1;
  bool connected = false;
  int tree_width = 2;
  bool verify = false;
  std::string out;
};

int run_gen(const GenArgs& a, const Caps& caps, std::ostream& out) {
  std::vector<InstanceSpec> specs;
  if (a.family == "grid") {
    auto [rows, cols] = parse_grid(a.grid.empty() ? "3x3" : a.grid);
    Grid g = grid(rows, cols);
    InstanceSpec s;
    s.family = "grid";
    s.parameters = {{"rows", rows}, {"cols", cols}};
    s.graph = g.graph;
    s.x = g.column(0);
    s.y = g.column(cols - 1);
    specs.push_back(std::move(s));
  } else if (a.family == "menger-lower-bound") {
    specs.push_back(menger_lower_bound_instance(a.r, a.n));
  } else if (a.family == "rooted-p3") {
    specs.push_back(rooted_p3_grid(a.w));
  } else if (a.family == "random" || a.family == "partial-k-tree") {
    if (a.count < 0) throw InputError("--count must be nonnegative");
    RandomOptions o;
    o.family = a.family == "random" ? RandomFamily::general : RandomFamily::partial_k_tree;
    o.min_vertices = a.min_vertices;
    o.max_vertices = a.max_vertices;
    o.edge_probability = a.p;
    o.max_weight = a.max_weight;
    o.connected = a.connected;
    o.tree_width = a.tree_width;
    specs = random_instances(a.seed, a.count, o);
  } else {
    throw InputError("unknown family '" + a.family + "'");
  }
  if (a.verify)
    for (auto& s : specs) verify_annotations(s, caps);
  json list = json::array();
  bool refuted = false;
  for (const auto& s : specs) {
    list.push_back(as_json(s));
    for (const auto& note : s.annotations) refuted = refuted || (note.verified && !*note.verified);
  }
  json doc = envelope("gen", {{"family", a.family}, {"grid", a.grid}, {"r", a.r}, {"n", a.n}, {"w", a.w},
                              {"count", a.count}, {"seed", a.seed}, {"min_vertices", a.min_vertices},
                              {"max_vertices", a.max_vertices}, {"p", a.p}, {"max_weight", a.max_weight},
                              {"connected", a.connected}, {"tree_width", a.tree_width}, {"verify", a.verify},
                              {"caps", caps_json(caps)}});
  doc["instances"] = list;
  emit(doc, a.out, out);
  return refuted ? kViolation : kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Coarse Menger and Erdos-Posa experiments"};
  app.require_subcommand(1);
  std::string caps_text;
  app.add_option("--caps", caps_text, "cap overrides such as paths=18,centered=30 (also COARSE_MENGER_CAP)");

  DualityArgs duality;
  auto* d = app.add_subcommand("run-duality", "packing and cover sizes per threshold");
  add_source(d, duality.source);
  d->add_option("--random", duality.random, "number of seeded random connected instances");
  d->add_option("--seed", duality.seed);
  d->add_option("--min-vertices", duality.min_vertices);
  d->add_option("--max-vertices", duality.max_vertices);
  d->add_option("--ell", duality.ell);
  d->add_option("--r", duality.r, "packing thresholds")->delimiter(',');
  d->add_option("--beta", duality.beta, "ball radii")->delimiter(',');
  d->add_flag("--strict", duality.strict, "exit 3 when an exact cell hits a cap");
  d->add_option("--jobs", duality.jobs)->check(CLI::PositiveNumber);
  d->add_option("--out", duality.out, "JSON report path (stdout by default)");
  d->add_option("--csv", duality.csv, "CSV report path");

  AcceptanceArgs acceptance;
  auto* acc = app.add_subcommand("run-acceptance", "the acceptance suite");
  acc->add_option("--seed", acceptance.seed);
  acc->add_option("--only", acceptance.only, "criterion keys")->delimiter(',');
  acc->add_option("--inject-fault", acceptance.fault, "criterion key whose solver output gets perturbed");
  acc->add_option("--jobs", acceptance.jobs)->check(CLI::PositiveNumber);
  acc->add_option("--out", acceptance.out, "JSON report path");

  TangleArgs tangle;
  auto* tl = app.add_subcommand("run-tangle-lab", "trichotomy or multifold decomposition");
  add_source(tl, tangle.source);
  tl->add_option("--l", tangle.l, "vertices of L (all by default)")->delimiter(',');
  tl->add_option("--members", tangle.members, "family as ';'-separated groups of ids (singletons of L by default)");
  auto* zopt = tl->add_option("--z", tangle.z, "Z (N(L) by default)")->delimiter(',');
  tl->add_option("--k", tangle.k);
  tl->add_option("--theta", tangle.theta);
  tl->add_option("--thetas", tangle.thetas, "run the decomposition with these orders")->delimiter(',');
  tl->add_option("--r", tangle.r);
  tl->add_option("--r-prime", tangle.r_prime, "defaults to ceil(r / 2)");
  tl->add_option("--xi", tangle.xi, "defaults to |Z|");
  tl->add_option("--eta", tangle.eta);
  tl->add_option("--out", tangle.out);

  TransferArgs transfer;
  auto* tr = app.add_subcommand("run-transfer", "quasi-isometry transfer of witnesses and hitting sets");
  tr->add_option("--m", transfer.m);
  tr->add_option("--a", transfer.a);
  tr->add_option("--k", transfer.k);
  tr->add_option("--r", transfer.r);
  tr->add_option("--ell", transfer.ell);
  tr->add_option("--f", transfer.f, "constant count witness");
  tr->add_option("--g", transfer.g, "constant radius witness");
  tr->add_option("--variant", transfer.variant, "remote, menger or gallai");
  add_source(tr, transfer.source);
  tr->add_option("--minor", transfer.minor, "planar, apex, general, linkless or knotless");
  tr->add_option("--genus", transfer.genus);
  tr->add_flag("--locally-finite", transfer.locally_finite);
  tr->add_option("--out", transfer.out);

  GenArgs gen;
  auto* gn = app.add_subcommand("gen", "instance generators");
  gn->add_option("--family", gen.family, "grid, menger-lower-bound, rooted-p3, random or partial-k-tree");
  gn->add_option("--grid", gen.grid);
  gn->add_option("--r", gen.r);
  gn->add_option("--n", gen.n);
  gn->add_option("--w", gen.w);
  gn->add_option("--count", gen.count);
  gn->add_option("--seed", gen.seed);
  gn->add_option("--min-vertices", gen.min_vertices);
  gn->add_option("--max-vertices", gen.max_vertices);
  gn->add_option("--p", gen.p);
  gn->add_option("--max-weight", gen.max_weight);
  gn->add_flag("--connected", gen.connected);
  gn->add_option("--tree-width", gen.tree_width);
  gn->add_flag("--verify", gen.verify, "check claimed annotations");
  gn->add_option("--out", gen.out);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? kOk : kMalformed;
  }

  try {
    Caps caps = parse_caps(caps_text, default_caps());
    tangle.z_given = zopt->count() > 0;
    if (d->parsed()) return run_duality(duality, caps, out, err);
    if (acc->parsed()) return run_acceptance_command(acceptance, caps, out);
    if (tl->parsed()) return run_tangle_lab(tangle, caps, out);
    if (tr->parsed()) return run_transfer(transfer, caps, out);
    return run_gen(gen, caps, out);
  } catch (const CapacityError& e) {
    err << "capacity: " << e.what() << "\n";
    return kCapacity;
  } catch (const InternalInconsistency& e) {
    err << "internal inconsistency: " << e.what() << "\n";
    return kViolation;
  } catch (const PreconditionError& e) {
    err << "precondition " << e.what() << "\n";
    return kMalformed;
  } catch (const InputError& e) {
    err << "input: " << e.what() << "\n";
    return kMalformed;
  } catch (const nlohmann::json::exception& e) {
    err << "input: " << e.what() << "\n";
    return kMalformed;
  }
}

}  // namespace coarse_menger::cli
