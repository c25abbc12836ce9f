#include "sa/io.hpp"

#include <fstream>
#include <utility>

#include "sa/error.hpp"

namespace sa {

namespace {

const json& require_key(const json& j, const char* key, const std::string& what) {
  if (!j.is_object()) throw parse_error(what + " is not a JSON object");
  const auto it = j.find(key);
  if (it == j.end()) throw parse_error(what + " lacks key \"" + key + "\"");
  return *it;
}

std::uint64_t require_unsigned(const json& j, const std::string& where, std::uint64_t bound) {
  if (!j.is_number_unsigned())
    throw parse_error(where + ": expected an unsigned integer");
  const auto value = j.get<std::uint64_t>();
  if (value > bound)
    throw parse_error(where + ": value " + std::to_string(value) + " exceeds " +
                      std::to_string(bound));
  return value;
}

const json& require_array(const json& j, const std::string& where, std::size_t length) {
  if (!j.is_array())
    throw parse_error(where + ": expected an array");
  if (j.size() != length)
    throw parse_error(where + ": expected " + std::to_string(length) + " entries, found " +
                      std::to_string(j.size()));
  return j;
}

json dims_json(const DimSet& d) {
  json out = json::array();
  for (const auto k : d.members()) out.push_back(k);
  return out;
}

}  // namespace

json finite_sa_to_json(const FiniteSA& algebra) {
  json j;
  j["dimension"] = algebra.dimension();
  j["size"] = algebra.size();
  j["v"] = algebra.v_all();
  json star = json::array();
  for (std::uint32_t k = 0; k < algebra.dimension(); ++k) {
    json table = json::array();
    for (Id x = 0; x < algebra.size(); ++x) {
      const Cell* row = algebra.row(k, x);
      table.push_back(json(std::vector<Cell>(row, row + algebra.size())));
    }
    star.push_back(std::move(table));
  }
  j["star"] = std::move(star);
  return j;
}

FiniteSA finite_sa_from_json(const json& j) {
  const auto dimension = static_cast<std::uint32_t>(
      require_unsigned(require_key(j, "dimension", "algebra"), "\"dimension\"", kMaxDimension));
  const auto size = static_cast<Id>(
      require_unsigned(require_key(j, "size", "algebra"), "\"size\"", kMaxCarrier));
  const json& jv = require_array(require_key(j, "v", "algebra"), "\"v\"", dimension);
  std::vector<Id> v;
  v.reserve(dimension);
  for (std::size_t k = 0; k < jv.size(); ++k)
    v.push_back(static_cast<Id>(
        require_unsigned(jv[k], "\"v\" entry " + std::to_string(k), kMaxCarrier)));
  const json& jstar = require_array(require_key(j, "star", "algebra"), "\"star\"", dimension);
  std::vector<std::vector<Cell>> star(dimension);
  for (std::uint32_t k = 0; k < dimension; ++k) {
    const std::string table_name = "\"star\" entry " + std::to_string(k);
    const json& jtable = require_array(jstar[k], table_name, size);
    star[k].reserve(std::size_t{size} * size);
    for (Id x = 0; x < size; ++x) {
      const std::string row_name = table_name + ", row " + std::to_string(x);
      const json& jrow = require_array(jtable[x], row_name, size);
      for (Id y = 0; y < size; ++y)
        star[k].push_back(static_cast<Cell>(require_unsigned(
            jrow[y], row_name + ", column " + std::to_string(y), kMaxCarrier - 1)));
    }
  }
  return FiniteSA(dimension, size, std::move(v), std::move(star));
}

json fn_algebra_to_json(const FnAlgebra& algebra) {
  json j;
  j["dimension"] = algebra.dimension;
  j["base_size"] = algebra.base_size;
  json elements = json::array();
  for (const FnElement& f : algebra.elements) elements.push_back(json(f.table));
  j["elements"] = std::move(elements);
  j["full"] = algebra.full;
  return j;
}

FnAlgebra fn_algebra_from_json(const json& j) {
  FnAlgebra out;
  out.dimension = static_cast<std::uint32_t>(
      require_unsigned(require_key(j, "dimension", "algebra"), "\"dimension\"", kMaxDimension));
  out.base_size = static_cast<Id>(require_unsigned(require_key(j, "base_size", "algebra"),
                                                   "\"base_size\"", kMaxCarrier));
  const FnSpace space(out.dimension, out.base_size);
  const json& jelements = require_key(j, "elements", "algebra");
  if (!jelements.is_array()) throw parse_error("\"elements\": expected an array");
  out.elements.reserve(jelements.size());
  for (std::size_t i = 0; i < jelements.size(); ++i) {
    const std::string name = "\"elements\" entry " + std::to_string(i);
    const json& jtable = require_array(jelements[i], name, space.point_count());
    FnElement f;
    f.table.reserve(space.point_count());
    for (std::size_t r = 0; r < jtable.size(); ++r)
      f.table.push_back(static_cast<Id>(require_unsigned(
          jtable[r], name + ", rank " + std::to_string(r), out.base_size - std::uint64_t{1})));
    out.elements.push_back(std::move(f));
  }
  const json& jfull = require_key(j, "full", "algebra");
  if (!jfull.is_boolean()) throw parse_error("\"full\": expected a boolean");
  out.full = jfull.get<bool>();
  return out;
}

json axiom_violation_to_json(const AxiomViolation& violation) {
  json j;
  j["axiom"] = violation.axiom;
  j["kappa"] = violation.kappa;
  if (violation.lambda) j["lambda"] = *violation.lambda;
  j["x"] = violation.x;
  if (violation.y) j["y"] = *violation.y;
  if (violation.z) j["z"] = *violation.z;
  return j;
}

json law_report_to_json(const LawReport& report) {
  json j;
  j["law"] = report.law;
  j["status"] = report.pass ? "pass" : "fail";
  if (report.counterexample) {
    const LawBindings& c = *report.counterexample;
    json b;
    b["gamma"] = dims_json(c.gamma);
    if (c.sigma) b["sigma"] = dims_json(*c.sigma);
    if (c.kappa) b["kappa"] = *c.kappa;
    b["s"] = c.s;
    if (c.a) b["a"] = *c.a;
    if (c.b) b["b"] = *c.b;
    if (c.x) b["x"] = *c.x;
    b["lhs"] = c.lhs;
    b["rhs"] = c.rhs;
    j["counterexample"] = std::move(b);
  } else {
    j["counterexample"] = nullptr;
  }
  j["cases_checked"] = report.cases_checked;
  return j;
}

json hom_report_to_json(const HomReport& report) {
  json j;
  j["pass"] = report.pass;
  j["cases_checked"] = report.cases_checked;
  json violations = json::array();
  for (const HomViolation& v : report.violations) {
    json item;
    item["kind"] = v.kind == HomViolation::Kind::op ? "op" : "distinguished";
    item["kappa"] = v.kappa;
    item["a"] = v.a;
    item["b"] = v.b;
    violations.push_back(std::move(item));
  }
  j["violations"] = std::move(violations);
  return j;
}

json witness_to_json(const EmbeddingWitness& witness) {
  json j;
  j["map"] = witness.map;
  json target;
  if (witness.target.kind == TargetDescriptor::Kind::finite) {
    target["kind"] = "finite";
    target["dimension"] = witness.target.dimension;
    target["size"] = witness.target.size;
  } else {
    target["kind"] = "full_fn";
    target["dimension"] = witness.target.dimension;
    target["base_size"] = witness.target.base_size;
  }
  j["target"] = std::move(target);
  j["verified"] = witness.verified;
  return j;
}

json sidecar_to_json(const std::vector<std::uint64_t>& map) {
  json j;
  j["map"] = map;
  return j;
}

std::string dump_canonical(const json& j) { return j.dump(2) + "\n"; }

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw parse_error("cannot open " + path.string());
  std::string bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  if (in.bad()) throw parse_error("cannot read " + path.string());
  return bytes;
}

void write_file(const std::filesystem::path& path, const std::string& bytes) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw error("cannot open " + path.string() + " for writing");
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  out.flush();
  if (!out) throw error("cannot write " + path.string());
}

namespace {

json parse_file(const std::filesystem::path& path) {
  const std::string bytes = read_file(path);
  try {
    return json::parse(bytes);
  } catch (const nlohmann::json::parse_error& e) {
    throw parse_error(path.string() + ": " + e.what());
  }
}

// Construction-level validation (for example a star id at or above the
// carrier size) is a parse failure when it comes from a file; every failure
// names the file.
template <typename Load>
auto with_path_context(const std::filesystem::path& path, Load load) {
  try {
    return load();
  } catch (const error& e) {
    throw parse_error(path.string() + ": " + e.what());
  }
}

}  // namespace

AnyAlgebra load_algebra(const std::filesystem::path& path) {
  const json j = parse_file(path);
  if (j.is_object() && j.contains("size"))
    return with_path_context(path, [&] { return AnyAlgebra(finite_sa_from_json(j)); });
  if (j.is_object() && j.contains("base_size"))
    return with_path_context(path, [&] { return AnyAlgebra(fn_algebra_from_json(j)); });
  throw parse_error(path.string() +
                    ": neither an operation-table file (key \"size\") nor a function-algebra "
                    "file (key \"base_size\")");
}

FiniteSA load_finite_sa(const std::filesystem::path& path) {
  const json j = parse_file(path);
  return with_path_context(path, [&] { return finite_sa_from_json(j); });
}

FnAlgebra load_fn_algebra(const std::filesystem::path& path) {
  const json j = parse_file(path);
  return with_path_context(path, [&] { return fn_algebra_from_json(j); });
}

void save_finite_sa(const FiniteSA& algebra, const std::filesystem::path& path) {
  write_file(path, dump_canonical(finite_sa_to_json(algebra)));
}

void save_fn_algebra(const FnAlgebra& algebra, const std::filesystem::path& path) {
  write_file(path, dump_canonical(fn_algebra_to_json(algebra)));
}

void io_roundtrip(const std::filesystem::path& in, const std::filesystem::path& out) {
  const AnyAlgebra loaded = load_algebra(in);
  if (const auto* finite = std::get_if<FiniteSA>(&loaded))
    save_finite_sa(*finite, out);
  else
    save_fn_algebra(std::get<FnAlgebra>(loaded), out);
}

}  // namespace sa
