#include "sa/cli.hpp"

#include <cstdint>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include <CLI11.hpp>

#include "sa/constructions.hpp"
#include "sa/error.hpp"
#include "sa/fn_algebra.hpp"
#include "sa/io.hpp"
#include "sa/predicates.hpp"
#include "sa/search.hpp"
#include "sa/subst.hpp"
#include "sa/suite.hpp"
#include "sa/types.hpp"

namespace sa {

namespace {

struct GlobalOpts {
  std::string format = "text";
  unsigned jobs = 0;
  // Interpreted per command: materialization budget for full-algebra
  // targets, case cap for law checks. 0 keeps each default.
  std::uint64_t budget = 0;

  bool json() const { return format == "json"; }
  Budget capacity() const {
    Budget b;
    if (budget != 0) b.max_elements = budget;
    return b;
  }
};

std::vector<Id> parse_ids(const std::string& text) {
  std::vector<Id> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) throw usage_error("empty entry in id list \"" + text + "\"");
    std::size_t used = 0;
    unsigned long value = 0;
    try {
      value = std::stoul(item, &used);
    } catch (const std::exception&) {
      throw usage_error("\"" + item + "\" is not an id");
    }
    if (used != item.size() || value > kMaxCarrier)
      throw usage_error("\"" + item + "\" is not an id");
    out.push_back(static_cast<Id>(value));
  }
  return out;
}

DimSet parse_dims(const std::string& text, std::uint32_t alpha) {
  if (text == "all") return DimSet::full(alpha);
  if (text.empty() || text == "none") return DimSet{};
  std::vector<std::uint32_t> members;
  for (const Id k : parse_ids(text)) members.push_back(k);
  return DimSet(members);
}

// Accepts either file format; tabulates function algebras.
FiniteSA load_tables(const std::string& path, const Budget& budget) {
  AnyAlgebra loaded = load_algebra(path);
  if (auto* finite = std::get_if<FiniteSA>(&loaded)) return std::move(*finite);
  return as_finite_sa(std::get<FnAlgebra>(loaded), budget);
}

void emit(const json& j) { std::cout << dump_canonical(j); }

void write_finite(const FiniteSA& algebra, const std::string& out) {
  if (out.empty())
    emit(finite_sa_to_json(algebra));
  else
    save_finite_sa(algebra, out);
}

void write_fn(const FnAlgebra& algebra, const std::string& out) {
  if (out.empty())
    emit(fn_algebra_to_json(algebra));
  else
    save_fn_algebra(algebra, out);
}

void write_sidecar(const std::string& path, const json& j) {
  if (!path.empty()) write_file(path, dump_canonical(j));
}

template <class Int>
json id_map_json(const std::vector<Int>& map) {
  std::vector<std::uint64_t> wide(map.begin(), map.end());
  return sidecar_to_json(wide);
}

std::string dims_text(const DimSet& d) {
  std::string out = "{";
  for (std::size_t i = 0; i < d.members().size(); ++i) {
    if (i) out += ",";
    out += std::to_string(d.members()[i]);
  }
  return out + "}";
}

// ---- command bodies ----

int cmd_check(const GlobalOpts& g, const std::string& file, std::uint64_t max_violations) {
  const FiniteSA algebra = load_tables(file, g.capacity());
  CheckOptions opts;
  opts.max_violations = max_violations;
  opts.jobs = g.jobs;
  const auto violations = check_axioms(algebra, opts);
  if (g.json()) {
    json j;
    j["holds"] = violations.empty();
    json list = json::array();
    for (const auto& v : violations) list.push_back(axiom_violation_to_json(v));
    j["violations"] = std::move(list);
    emit(j);
  } else if (violations.empty()) {
    std::cout << "no axiom violations\n";
  } else {
    for (const auto& v : violations) std::cout << axiom_violation_to_json(v).dump() << "\n";
  }
  return violations.empty() ? 0 : 1;
}

int cmd_delta(const GlobalOpts& g, const std::string& file, const std::string& elements) {
  const FiniteSA algebra = load_tables(file, g.capacity());
  std::vector<Id> ids;
  if (elements.empty())
    for (Id x = 0; x < algebra.size(); ++x) ids.push_back(x);
  else
    ids = parse_ids(elements);
  json list = json::array();
  for (const Id x : ids) {
    if (x >= algebra.size())
      throw usage_error("element " + std::to_string(x) + " is out of range");
    const DimSet d = dimension_set(algebra, x);
    if (g.json()) {
      json item;
      item["x"] = x;
      item["delta"] = json(d.members());
      list.push_back(std::move(item));
    } else {
      std::cout << x << ": " << dims_text(d) << "\n";
    }
  }
  if (g.json()) emit(list);
  return 0;
}

int cmd_zero_set(const GlobalOpts& g, const std::string& file, const std::string& gamma) {
  const FiniteSA algebra = load_tables(file, g.capacity());
  const auto z = zero_set(algebra, parse_dims(gamma, algebra.dimension()));
  if (g.json()) {
    json j;
    j["zero_set"] = z;
    emit(j);
  } else {
    for (std::size_t i = 0; i < z.size(); ++i) std::cout << (i ? " " : "") << z[i];
    std::cout << "\n";
  }
  return 0;
}

int cmd_subst(const GlobalOpts& g, const std::string& file, const std::string& s,
              const std::string& gamma, Id a) {
  const FiniteSA algebra = load_tables(file, g.capacity());
  const SubstContext ctx(algebra, parse_ids(s), parse_dims(gamma, algebra.dimension()));
  if (a >= algebra.size()) throw usage_error("element " + std::to_string(a) + " is out of range");
  const Id result = generalized_subst(ctx, a);
  if (g.json()) {
    json j;
    j["result"] = result;
    emit(j);
  } else {
    std::cout << result << "\n";
  }
  return 0;
}

int cmd_laws(const GlobalOpts& g, const std::string& file, std::uint64_t seed, bool force) {
  const FiniteSA algebra = load_tables(file, g.capacity());
  LawCheckOptions opts;
  opts.max_cases_per_law = g.budget;
  opts.seed = seed;
  opts.require_valid = !force;
  std::vector<LawReport> reports;
  reports.push_back(check_subst_order_independence(algebra, opts));
  for (auto& r : check_subst_laws(algebra, opts)) reports.push_back(std::move(r));
  bool all_pass = true;
  json list = json::array();
  for (const LawReport& r : reports) {
    all_pass = all_pass && r.pass;
    if (g.json())
      list.push_back(law_report_to_json(r));
    else
      std::cout << law_report_to_json(r).dump() << "\n";
  }
  if (g.json()) emit(list);
  return all_pass ? 0 : 1;
}

int cmd_gamma_hom(const GlobalOpts& g, const std::string& file, const std::string& gamma) {
  const FiniteSA algebra = load_tables(file, g.capacity());
  const DimSet dims = parse_dims(gamma, algebra.dimension());
  std::vector<FnElement> images;
  std::vector<Id> base;
  for (Id x = 0; x < algebra.size(); ++x) {
    GammaHomImage img = gamma_hom_image(algebra, dims, x);
    base = std::move(img.base);
    images.push_back(std::move(img.fn));
  }
  const HomReport rep =
      check_hom_into_function_space(algebra, dims, images, static_cast<Id>(base.size()));
  if (g.json()) {
    json j;
    j["base"] = base;
    json tables = json::array();
    for (const FnElement& f : images) tables.push_back(json(f.table));
    j["images"] = std::move(tables);
    j["hom"] = hom_report_to_json(rep);
    emit(j);
  } else {
    std::cout << (rep.pass ? "homomorphism" : "not a homomorphism") << " over base of "
              << base.size() << " elements, " << rep.cases_checked << " cases\n";
  }
  return rep.pass ? 0 : 1;
}

int cmd_distinguished(const GlobalOpts& g, const std::string& file, bool strong) {
  const FiniteSA algebra = load_tables(file, g.capacity());
  json j;
  bool holds = false;
  if (strong) {
    const StrongReport rep = is_strongly_distinguished(algebra);
    holds = rep.holds;
    j["holds"] = rep.holds;
    json list = json::array();
    for (const StrongWitness& w : rep.witnesses) {
      json item;
      item["a"] = w.a;
      item["b"] = w.b;
      item["t"] = w.t;
      list.push_back(std::move(item));
    }
    j["witnesses"] = std::move(list);
    if (rep.failure) {
      json f;
      f["a"] = rep.failure->a;
      f["b"] = rep.failure->b;
      j["failure"] = std::move(f);
    } else {
      j["failure"] = nullptr;
    }
  } else {
    const DistinguishedReport rep = is_distinguished(algebra);
    holds = rep.holds;
    j["holds"] = rep.holds;
    json list = json::array();
    for (const DistinguishedWitness& w : rep.witnesses) {
      json item;
      item["kappa"] = w.kappa;
      item["x"] = w.x;
      item["y"] = w.y;
      item["c"] = w.c;
      list.push_back(std::move(item));
    }
    j["witnesses"] = std::move(list);
    if (rep.failure) {
      json f;
      f["kappa"] = rep.failure->kappa;
      f["x"] = rep.failure->x;
      f["y"] = rep.failure->y;
      j["failure"] = std::move(f);
    } else {
      j["failure"] = nullptr;
    }
  }
  if (g.json())
    emit(j);
  else
    std::cout << (holds ? "holds" : "does not hold") << "\n";
  return holds ? 0 : 1;
}

int cmd_sub(const GlobalOpts& g, const std::string& file, const std::string& generators,
            const std::string& out, const std::string& map) {
  const FiniteSA algebra = load_tables(file, g.capacity());
  const Subalgebra sub = generate_subalgebra(algebra, parse_ids(generators));
  write_finite(sub.algebra, out);
  write_sidecar(map, id_map_json(sub.inclusion));
  return 0;
}

FilterSpec parse_filter(const std::string& spec, std::uint32_t index_size) {
  if (spec == "trivial") return trivial_filter(index_size);
  if (spec.rfind("principal:", 0) == 0) {
    const auto ids = parse_ids(spec.substr(10));
    std::uint64_t core = 0;
    for (const Id i : ids) {
      if (i >= index_size)
        throw usage_error("principal filter index " + std::to_string(i) + " is out of range");
      core |= std::uint64_t{1} << i;
    }
    return principal_filter(index_size, core);
  }
  if (spec.rfind("file:", 0) == 0) {
    const std::string path = spec.substr(5);
    json j;
    try {
      j = json::parse(read_file(path));
    } catch (const nlohmann::json::parse_error& e) {
      throw parse_error(path + ": " + e.what());
    }
    if (!j.is_object() || !j.contains("index_size") || !j.contains("sets"))
      throw parse_error(path + ": expected keys \"index_size\" and \"sets\"");
    FilterSpec filter;
    filter.index_size = j["index_size"].get<std::uint32_t>();
    for (const json& set : j["sets"]) {
      std::uint64_t mask = 0;
      for (const json& i : set) mask |= std::uint64_t{1} << i.get<std::uint32_t>();
      filter.sets.push_back(mask);
    }
    return filter;
  }
  throw usage_error("unknown filter \"" + spec +
                    "\" (expected trivial, principal:<i,...> or file:<path>)");
}

int cmd_product(const GlobalOpts& g, const std::vector<std::string>& files,
                const std::string& filter_spec, const std::string& out, const std::string& map,
                bool allow_improper, bool verify_classes) {
  if (files.size() < 2) throw usage_error("product needs at least two factor files");
  std::vector<FiniteSA> factors;
  factors.reserve(files.size());
  for (const auto& f : files) factors.push_back(load_tables(f, g.capacity()));
  std::vector<const FiniteSA*> ptrs;
  for (const auto& f : factors) ptrs.push_back(&f);
  const FilterSpec filter = parse_filter(filter_spec, static_cast<std::uint32_t>(files.size()));
  ProductOptions opts;
  opts.allow_improper = allow_improper;
  opts.verify_well_defined = verify_classes;
  if (g.budget != 0) opts.max_tuples = g.budget;
  const ReducedProduct product = reduced_product(ptrs, filter, opts);
  write_finite(product.algebra, out);
  write_sidecar(map, id_map_json(product.quotient.class_of));
  return 0;
}

int cmd_represent_z(const GlobalOpts& g, const std::string& file, const std::string& out,
                    const std::string& map) {
  const FiniteSA algebra = load_tables(file, g.capacity());
  const ZRepresentation rep = representation_via_Z(algebra);
  const char* status = rep.status == RepresentationStatus::embedding ? "embedding"
                       : rep.status == RepresentationStatus::not_injective ? "not_injective"
                                                                           : "empty_base";
  if (g.json()) {
    json j;
    j["status"] = status;
    j["base"] = rep.base;
    j["homomorphism"] = rep.homomorphism;
    if (rep.collision) {
      j["collision"] = json::array({rep.collision->first, rep.collision->second});
    } else {
      j["collision"] = nullptr;
    }
    emit(j);
  } else {
    std::cout << status << " over zero set of " << rep.base.size() << " elements\n";
  }
  if (rep.status == RepresentationStatus::embedding) {
    if (!out.empty()) {
      FnAlgebra image;
      image.dimension = algebra.dimension();
      image.base_size = static_cast<Id>(rep.base.size());
      image.elements = rep.images;
      const auto count = image.space().element_count();
      image.full = count && *count == image.elements.size();
      save_fn_algebra(image, out);
    }
    if (!map.empty()) {
      const FnSpace space(algebra.dimension(), static_cast<Id>(rep.base.size()));
      json ids = json::array();
      for (const FnElement& f : rep.images) {
        try {
          ids.push_back(space.canonical_id(f));
        } catch (const capacity_error&) {
          ids.push_back(nullptr);
        }
      }
      json j;
      j["map"] = std::move(ids);
      write_sidecar(map, j);
    }
    return 0;
  }
  return 1;
}

int cmd_represent(const GlobalOpts& g, const std::string& file, Id max_base) {
  const FiniteSA algebra = load_tables(file, g.capacity());
  const RepresentabilityResult result = is_representable_up_to(algebra, max_base, g.capacity());
  if (g.json()) {
    json j;
    j["found"] = result.found;
    j["base_size"] = result.base_size;
    j["witness"] = result.witness ? witness_to_json(*result.witness) : json(nullptr);
    emit(j);
  } else if (result.found) {
    std::cout << "witness at base " << result.base_size << "\n";
  } else {
    std::cout << "no witness within base " << max_base << "\n";
  }
  return result.found ? 0 : 1;
}

int report_witness(const GlobalOpts& g, const std::optional<EmbeddingWitness>& witness) {
  if (g.json()) {
    if (witness)
      emit(witness_to_json(*witness));
    else
      emit(json{{"found", false}});
  } else if (witness) {
    std::cout << "embedding";
    for (const auto t : witness->map) std::cout << " " << t;
    std::cout << (witness->verified ? " (verified)" : " (unverified)") << "\n";
  } else {
    std::cout << "no embedding\n";
  }
  return witness ? 0 : 1;
}

int cmd_embed(const GlobalOpts& g, const std::string& file_a, const std::string& file_b) {
  const FiniteSA a = load_tables(file_a, g.capacity());
  const FiniteSA b = load_tables(file_b, g.capacity());
  return report_witness(g, find_embedding(a, b));
}

int cmd_neat_embed(const GlobalOpts& g, const std::string& file_b, const std::string& file_a,
                   std::uint32_t beta) {
  const FiniteSA b = load_tables(file_b, g.capacity());
  const FiniteSA a = load_tables(file_a, g.capacity());
  return report_witness(g, find_neat_embedding(b, a, beta));
}

int cmd_reduct(const GlobalOpts& g, const std::string& file, std::uint32_t beta,
               const std::string& out, const std::string& map) {
  const FiniteSA algebra = load_tables(file, g.capacity());
  const FiniteSA r = reduct(algebra, beta);
  write_finite(r, out);
  std::vector<Id> identity(r.size());
  for (Id x = 0; x < r.size(); ++x) identity[x] = x;
  write_sidecar(map, id_map_json(identity));
  return 0;
}

int cmd_neat(const GlobalOpts& g, const std::string& file, std::uint32_t beta,
             const std::string& out, const std::string& map) {
  const FiniteSA algebra = load_tables(file, g.capacity());
  const NeatReduct neat = neat_reduct(algebra, beta);
  write_finite(neat.algebra, out);
  write_sidecar(map, id_map_json(neat.carrier));
  return 0;
}

int cmd_dilate(const GlobalOpts& g, const std::string& file, std::uint32_t extra,
               const std::string& out, const std::string& map) {
  const FnAlgebra algebra = load_fn_algebra(file);
  const Dilation d = dilate(algebra, extra, g.capacity());
  FnAlgebra image;
  image.dimension = d.target_dimension;
  image.base_size = d.base_size;
  image.elements = d.images;
  image.full = false;
  write_fn(image, out);
  if (!map.empty()) {
    json ids = json::array();
    for (const auto& id : d.canonical_ids)
      ids.push_back(id ? json(*id) : json(nullptr));
    json j;
    j["map"] = std::move(ids);
    write_sidecar(map, j);
  }
  return d.verified ? 0 : 1;
}

int cmd_pad(const GlobalOpts& g, const std::string& file, std::uint32_t gamma,
            const std::string& v_choice, const std::string& out) {
  const FiniteSA algebra = load_tables(file, g.capacity());
  const FiniteSA padded = pad_algebra(algebra, gamma, parse_ids(v_choice));
  write_finite(padded, out);
  return 0;
}

int cmd_full(const GlobalOpts& g, std::uint32_t dim, Id base, bool tables,
             const std::string& out) {
  const FnAlgebra fn = full_fsa(dim, base);
  if (tables)
    write_finite(as_finite_sa(fn, g.capacity()), out);
  else
    write_fn(fn, out);
  return 0;
}

int cmd_verify(const GlobalOpts& g, SuiteConfig cfg) {
  cfg.budget = g.budget;
  cfg.jobs = g.jobs;
  const SuiteReport report = run_suite(cfg);
  if (g.json()) {
    json list = json::array();
    for (const CriterionResult& r : report.results) {
      json item;
      item["number"] = r.number;
      item["name"] = r.name;
      item["pass"] = r.pass;
      item["skipped"] = r.skipped;
      item["detail"] = r.detail;
      item["seconds"] = r.seconds;
      list.push_back(std::move(item));
    }
    json j;
    j["criteria"] = std::move(list);
    j["all_pass"] = report.all_pass();
    emit(j);
  } else {
    for (const CriterionResult& r : report.results) {
      std::ostringstream line;
      line << "[" << (r.number < 10 ? " " : "") << r.number << "] " << r.name;
      std::string text = line.str();
      text.resize(std::max<std::size_t>(text.size(), 38), ' ');
      std::cout << text << (r.pass ? "PASS" : r.skipped ? "SKIP" : "FAIL");
      std::cout << "  (" << r.seconds << "s)";
      if (!r.detail.empty()) std::cout << "  " << r.detail;
      std::cout << "\n";
    }
    std::cout << (report.all_pass() ? "all criteria pass" : "suite failed") << "\n";
  }
  return report.all_pass() ? 0 : 1;
}

std::vector<std::pair<std::uint32_t, Id>> parse_extra_pairs(const std::string& text) {
  std::vector<std::pair<std::uint32_t, Id>> out;
  if (text.empty()) return out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const auto colon = item.find(':');
    if (colon == std::string::npos)
      throw usage_error("expected dim:base in extra pair \"" + item + "\"");
    const auto dims = parse_ids(item.substr(0, colon));
    const auto bases = parse_ids(item.substr(colon + 1));
    if (dims.size() != 1 || bases.size() != 1)
      throw usage_error("expected dim:base in extra pair \"" + item + "\"");
    out.emplace_back(dims[0], bases[0]);
  }
  return out;
}

}  // namespace

int run_cli(int argc, const char* const* argv) {
  GlobalOpts global;
  CLI::App app{"finite substitution-algebra workbench"};
  app.require_subcommand(1);
  app.fallthrough();
  app.add_option("--format", global.format, "output format")
      ->check(CLI::IsMember({"json", "text"}));
  app.add_option("--jobs", global.jobs, "worker threads (0 = all cores)");
  app.add_option("--budget", global.budget,
                 "materialization budget / law case cap (0 = defaults)");

  int code = 0;

  struct {
    std::string file;
    std::uint64_t max_violations = 100;
  } check;
  auto* c_check = app.add_subcommand("check", "decide the axiom schema");
  c_check->add_option("file", check.file)->required();
  c_check->add_option("--max-violations", check.max_violations);
  c_check->callback([&] { code = cmd_check(global, check.file, check.max_violations); });

  struct {
    std::string file, elements;
  } delta;
  auto* c_delta = app.add_subcommand("delta", "dimension sets of elements");
  c_delta->add_option("file", delta.file)->required();
  c_delta->add_option("--elements", delta.elements, "comma-separated ids (default: all)");
  c_delta->callback([&] { code = cmd_delta(global, delta.file, delta.elements); });

  struct {
    std::string file, gamma = "all";
  } zero;
  auto* c_zero = app.add_subcommand("zero-set", "elements whose dimension set avoids gamma");
  c_zero->add_option("file", zero.file)->required();
  c_zero->add_option("--gamma", zero.gamma, "indices to avoid (default: all)");
  c_zero->callback([&] { code = cmd_zero_set(global, zero.file, zero.gamma); });

  struct {
    std::string file, s, gamma;
    Id a = 0;
  } subst;
  auto* c_subst = app.add_subcommand("subst", "generalized substitution s *_(gamma) a");
  c_subst->add_option("file", subst.file)->required();
  c_subst->add_option("--s", subst.s, "substituted element per index")->required();
  c_subst->add_option("--gamma", subst.gamma, "substituted indices")->required();
  c_subst->add_option("--a", subst.a, "target element")->required();
  c_subst->callback([&] { code = cmd_subst(global, subst.file, subst.s, subst.gamma, subst.a); });

  struct {
    std::string file;
    std::uint64_t seed = 0x5eed5a11;
    bool force = false;
  } laws;
  auto* c_laws = app.add_subcommand("laws", "generalized substitution laws");
  c_laws->add_option("file", laws.file)->required();
  c_laws->add_option("--seed", laws.seed, "sampling seed when a case cap is set");
  c_laws->add_flag("--force", laws.force, "run even when the axioms fail");
  c_laws->callback([&] { code = cmd_laws(global, laws.file, laws.seed, laws.force); });

  struct {
    std::string file, gamma;
  } ghom;
  auto* c_ghom = app.add_subcommand("gamma-hom", "canonical map into the zero-set function space");
  c_ghom->add_option("file", ghom.file)->required();
  c_ghom->add_option("--gamma", ghom.gamma, "substituted indices")->required();
  c_ghom->callback([&] { code = cmd_gamma_hom(global, ghom.file, ghom.gamma); });

  struct {
    std::string file;
    bool strong = false;
  } dist;
  auto* c_dist = app.add_subcommand("distinguished", "separation of elements by substitutions");
  c_dist->add_option("file", dist.file)->required();
  c_dist->add_flag("--strong", dist.strong, "one tuple must work for every index subset");
  c_dist->callback([&] { code = cmd_distinguished(global, dist.file, dist.strong); });

  struct {
    std::string file, generators, out, map;
  } sub;
  auto* c_sub = app.add_subcommand("sub", "generated subalgebra");
  c_sub->add_option("file", sub.file)->required();
  c_sub->add_option("--generators", sub.generators)->required();
  c_sub->add_option("-o,--out", sub.out, "output file (default: stdout)");
  c_sub->add_option("--map", sub.map, "sidecar file for the inclusion map");
  c_sub->callback([&] { code = cmd_sub(global, sub.file, sub.generators, sub.out, sub.map); });

  struct {
    std::vector<std::string> files;
    std::string filter, out, map;
    bool allow_improper = false, verify_classes = false;
  } product;
  auto* c_product = app.add_subcommand("product", "reduced product modulo a filter");
  c_product->add_option("files", product.files, "factor files")->required()->expected(-2);
  c_product->add_option("--filter", product.filter, "trivial | principal:<i,...> | file:<path>")
      ->required();
  c_product->add_option("-o,--out", product.out);
  c_product->add_option("--map", product.map, "sidecar file for tuple classes");
  c_product->add_flag("--allow-improper", product.allow_improper);
  c_product->add_flag("--verify-classes", product.verify_classes,
                      "recompute cells from second representatives");
  c_product->callback([&] {
    code = cmd_product(global, product.files, product.filter, product.out, product.map,
                       product.allow_improper, product.verify_classes);
  });

  struct {
    std::string file, out, map;
  } repz;
  auto* c_repz = app.add_subcommand("represent-z", "canonical map over the zero set");
  c_repz->add_option("file", repz.file)->required();
  c_repz->add_option("-o,--out", repz.out, "image algebra file");
  c_repz->add_option("--map", repz.map, "sidecar file of image canonical ids");
  c_repz->callback([&] { code = cmd_represent_z(global, repz.file, repz.out, repz.map); });

  struct {
    std::string file;
    Id max_base = 2;
  } rep;
  auto* c_rep = app.add_subcommand("represent", "bounded search for a function representation");
  c_rep->add_option("file", rep.file)->required();
  c_rep->add_option("--max-base", rep.max_base)->required();
  c_rep->callback([&] { code = cmd_represent(global, rep.file, rep.max_base); });

  struct {
    std::string a, b;
  } embed;
  auto* c_embed = app.add_subcommand("embed", "injective homomorphism search");
  c_embed->add_option("source", embed.a)->required();
  c_embed->add_option("target", embed.b)->required();
  c_embed->callback([&] { code = cmd_embed(global, embed.a, embed.b); });

  struct {
    std::string b, a;
    std::uint32_t beta = 0;
  } nembed;
  auto* c_nembed = app.add_subcommand("neat-embed", "embedding into a neat reduct");
  c_nembed->add_option("source", nembed.b)->required();
  c_nembed->add_option("ambient", nembed.a)->required();
  c_nembed->add_option("--beta", nembed.beta)->required();
  c_nembed->callback([&] { code = cmd_neat_embed(global, nembed.b, nembed.a, nembed.beta); });

  struct {
    std::string file, out, map;
    std::uint32_t beta = 0;
  } red;
  auto* c_red = app.add_subcommand("reduct", "first beta indices, same carrier");
  c_red->add_option("file", red.file)->required();
  c_red->add_option("--beta", red.beta)->required();
  c_red->add_option("-o,--out", red.out);
  c_red->add_option("--map", red.map);
  c_red->callback([&] { code = cmd_reduct(global, red.file, red.beta, red.out, red.map); });

  struct {
    std::string file, out, map;
    std::uint32_t beta = 0;
  } neat;
  auto* c_neat = app.add_subcommand("neat", "neat reduct: elements depending only below beta");
  c_neat->add_option("file", neat.file)->required();
  c_neat->add_option("--beta", neat.beta)->required();
  c_neat->add_option("-o,--out", neat.out);
  c_neat->add_option("--map", neat.map);
  c_neat->callback([&] { code = cmd_neat(global, neat.file, neat.beta, neat.out, neat.map); });

  struct {
    std::string file, out, map;
    std::uint32_t extra = 1;
  } dil;
  auto* c_dil = app.add_subcommand("dilate", "cylinder a function algebra into extra indices");
  c_dil->add_option("file", dil.file, "function-algebra file")->required();
  c_dil->add_option("--extra", dil.extra)->required();
  c_dil->add_option("-o,--out", dil.out);
  c_dil->add_option("--map", dil.map, "sidecar file of image canonical ids");
  c_dil->callback([&] { code = cmd_dilate(global, dil.file, dil.extra, dil.out, dil.map); });

  struct {
    std::string file, v, out;
    std::uint32_t gamma = 0;
  } pad;
  auto* c_pad = app.add_subcommand("pad", "extend with right-projection indices");
  c_pad->add_option("file", pad.file)->required();
  c_pad->add_option("--gamma", pad.gamma, "new dimension")->required();
  c_pad->add_option("--v", pad.v, "distinguished element per added index")->required();
  c_pad->add_option("-o,--out", pad.out);
  c_pad->callback([&] { code = cmd_pad(global, pad.file, pad.gamma, pad.v, pad.out); });

  struct {
    std::uint32_t dim = 1;
    Id base = 2;
    bool tables = false;
    std::string out;
  } full;
  auto* c_full = app.add_subcommand("full", "the full function algebra");
  c_full->add_option("--dim", full.dim)->required();
  c_full->add_option("--base", full.base)->required();
  c_full->add_flag("--tables", full.tables, "emit operation tables instead of elements");
  c_full->add_option("-o,--out", full.out);
  c_full->callback([&] { code = cmd_full(global, full.dim, full.base, full.tables, full.out); });

  struct {
    SuiteConfig cfg;
    std::string extra = "1:3,3:2";
  } verify;
  auto* c_verify = app.add_subcommand("verify", "run the verification suite");
  c_verify->add_option("--fixtures", verify.cfg.fixtures_dir, "fixtures directory")->required();
  c_verify->add_option("--max-dim", verify.cfg.max_dim);
  c_verify->add_option("--max-base", verify.cfg.max_base);
  c_verify->add_option("--extra", verify.extra, "extra dim:base pairs for the axiom sweep");
  c_verify->add_option("--seed", verify.cfg.seed);
  c_verify->add_flag("--allow-skip", verify.cfg.allow_skip,
                     "capacity skips do not fail the suite");
  c_verify->callback([&] {
    verify.cfg.extra = parse_extra_pairs(verify.extra);
    code = cmd_verify(global, verify.cfg);
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);
    app.exit(e);
    return 2;
  } catch (const error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return code;
}

}  // namespace sa
